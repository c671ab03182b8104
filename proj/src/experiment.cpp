#include "tda/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

#include "tda/clustering.hpp"
#include "tda/datasets.hpp"
#include "tda/matching.hpp"
#include "tda/persistence.hpp"
#include "tda/spectral.hpp"

namespace tda {

namespace {

std::string normalized_token(const std::string& text) {
    std::string out;
    for (const char c : text) {
        if (c == '_' || c == '-') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

template <typename Fn>
auto run_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(stage + ": " + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(stage + ": " + e.what());
    }
}

// Runs fn(k) for k in [0, count) over `threads` workers on disjoint strided
// index sets; rethrows the first worker exception.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads <= 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&, w]() {
            try {
                for (std::size_t k = w; k < count; k += threads) fn(k);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& worker : workers) worker.join();
    if (first_error) std::rethrow_exception(first_error);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["dataset"] = config.dataset;
    nlohmann::json metrics = nlohmann::json::array();
    for (const Metric m : config.metrics) metrics.push_back(metric_name(m));
    j["metrics"] = metrics;
    nlohmann::json methods = nlohmann::json::array();
    for (const ClusterMethod m : config.methods) methods.push_back(method_name(m));
    j["methods"] = methods;
    j["trials"] = config.trials;
    j["per_class"] = config.per_class;
    j["affinity_damping"] = config.affinity_damping;
    j["seed"] = config.seed;
    if (config.dataset == "ellipses") {
        j["transformed"] = config.transformed;
        j["subsample"] = config.subsample;
        j["spectral_floor"] = config.spectral_floor;
    } else {
        j["wav_files"] = config.wav_paths;
    }
    return j;
}

}  // namespace

std::string metric_name(Metric metric) {
    switch (metric) {
        case Metric::bottleneck: return "bottleneck";
        case Metric::wasserstein1: return "w1";
        case Metric::wasserstein2: return "w2";
        case Metric::spectral1: return "ds1";
        case Metric::spectral2: return "ds2";
    }
    throw std::logic_error("metric_name: unreachable");
}

Metric parse_metric(const std::string& text) {
    const std::string token = normalized_token(text);
    if (token == "bottleneck" || token == "db" || token == "b") return Metric::bottleneck;
    if (token == "w1" || token == "dw1" || token == "wasserstein1") return Metric::wasserstein1;
    if (token == "w2" || token == "dw2" || token == "wasserstein2") return Metric::wasserstein2;
    if (token == "ds1") return Metric::spectral1;
    if (token == "ds2") return Metric::spectral2;
    throw std::invalid_argument("unknown metric '" + text +
                                "' (valid: bottleneck, w1, w2, ds1, ds2)");
}

std::vector<Metric> all_metrics() {
    return {Metric::bottleneck, Metric::wasserstein1, Metric::wasserstein2, Metric::spectral1,
            Metric::spectral2};
}

std::string method_name(ClusterMethod method) {
    switch (method) {
        case ClusterMethod::kmedoids: return "kmedoids";
        case ClusterMethod::agglomerative: return "agglomerative";
        case ClusterMethod::affinity: return "affinity";
    }
    throw std::logic_error("method_name: unreachable");
}

ClusterMethod parse_method(const std::string& text) {
    const std::string token = normalized_token(text);
    if (token == "kmedoids" || token == "kmedoid") return ClusterMethod::kmedoids;
    if (token == "agglomerative" || token == "average") return ClusterMethod::agglomerative;
    if (token == "affinity" || token == "affinitypropagation") return ClusterMethod::affinity;
    throw std::invalid_argument("unknown clustering method '" + text +
                                "' (valid: kmedoids, agglomerative, affinity)");
}

std::vector<ClusterMethod> all_methods() {
    return {ClusterMethod::kmedoids, ClusterMethod::agglomerative, ClusterMethod::affinity};
}

double barcode_distance(const Barcode& a, const Barcode& b, Metric metric) {
    switch (metric) {
        case Metric::bottleneck: return bottleneck_distance(a, b);
        case Metric::wasserstein1: return wasserstein_distance(a, b, 1.0);
        case Metric::wasserstein2: return wasserstein_distance(a, b, 2.0);
        case Metric::spectral1: return spectral_distance(a, b, 1);
        case Metric::spectral2: return spectral_distance(a, b, 2);
    }
    throw std::logic_error("barcode_distance: unreachable");
}

DistanceMatrix barcode_distance_matrix(const std::vector<Barcode>& barcodes, Metric metric,
                                       std::size_t threads) {
    const std::size_t n = barcodes.size();
    DistanceMatrix matrix(n);
    if (n < 2) return matrix;

    const bool spectral = metric == Metric::spectral1 || metric == Metric::spectral2;
    std::vector<Spectrum> spectra;
    if (spectral) {
        spectra.resize(n);
        parallel_for(n, threads, [&](std::size_t i) { spectra[i] = normalized_spectrum(barcodes[i]); });
    }
    const int p = metric == Metric::spectral1 ? 1 : 2;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const double value = spectral ? spectral_distance(spectra[i], spectra[j], p)
                                      : barcode_distance(barcodes[i], barcodes[j], metric);
        matrix.set_pair(i, j, value);
    });
    return matrix;
}

ExperimentOutcome run_experiment(const ExperimentConfig& raw_config) {
    ExperimentConfig config = raw_config;
    if (config.metrics.empty()) config.metrics = all_metrics();
    if (config.methods.empty()) config.methods = all_methods();
    if (config.trials < 1) {
        throw std::invalid_argument("experiment: trials must be at least 1");
    }
    if (config.per_class < 1) {
        throw std::invalid_argument("experiment: per_class must be at least 1");
    }
    if (config.dataset != "ellipses" && config.dataset != "waves") {
        throw std::invalid_argument("experiment: unknown dataset '" + config.dataset +
                                    "' (valid: ellipses, waves)");
    }
    if (config.dataset == "waves" && !config.wav_paths.empty() && config.wav_paths.size() != 2) {
        throw std::invalid_argument("experiment: waves dataset needs exactly two WAV files, got " +
                                    std::to_string(config.wav_paths.size()));
    }
    if (!(config.spectral_floor >= 0.0)) {
        throw std::invalid_argument("experiment: spectral_floor must be non-negative");
    }
    if (!(config.affinity_damping >= 0.5) || !(config.affinity_damping < 1.0)) {
        throw std::invalid_argument("experiment: affinity_damping must lie in [0.5, 1)");
    }

    // User-supplied recordings load once; slicing stays per-trial.
    std::vector<Signal> recordings;
    if (config.dataset == "waves" && !config.wav_paths.empty()) {
        for (const std::string& path : config.wav_paths) {
            recordings.push_back(run_stage("loading " + path, [&] { return load_wav(path); }));
        }
    }

    const auto t_start = std::chrono::steady_clock::now();
    std::map<std::string, std::map<std::string, double>> fmi_sum;
    std::map<std::string, double> cluster_sum;
    std::map<std::string, double> time_sum;
    bool ran_affinity = false;

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        const std::string trial_tag = "trial " + std::to_string(trial);
        const std::uint64_t trial_seed =
            SplitRng::substream(config.seed, {kStreamTrial, trial}).next_u64();

        std::vector<Barcode> barcodes;
        std::vector<Barcode> spectral_barcodes;  // floored variant; ellipses only
        std::vector<int> truth;
        if (config.dataset == "ellipses") {
            LabeledClouds data = run_stage(trial_tag + ", dataset synthesis", [&] {
                return synth_dataset(config.per_class, config.transformed, trial_seed);
            });
            truth = data.labels;
            barcodes.resize(data.clouds.size());
            if (config.spectral_floor > 0.0) spectral_barcodes.resize(data.clouds.size());
            run_stage(trial_tag + ", barcode computation", [&] {
                parallel_for(data.clouds.size(), config.threads, [&](std::size_t i) {
                    PointCloud cloud = data.clouds[i];
                    if (config.subsample > 0 && config.subsample < cloud.size()) {
                        SplitRng rng = SplitRng::substream(trial_seed, {kStreamSubsample, i});
                        cloud = subsample(cloud, config.subsample, rng);
                    }
                    barcodes[i] = rips_persistence(cloud, 1);
                    if (config.spectral_floor > 0.0) {
                        spectral_barcodes[i] = persistence_floor(barcodes[i], config.spectral_floor);
                    }
                });
                return 0;
            });
        } else {
            LabeledSignals data = run_stage(trial_tag + ", dataset synthesis", [&] {
                if (recordings.empty()) {
                    return synth_wave_dataset(config.per_class, trial_seed);
                }
                // User recordings are sliced over their full extent.
                const auto full_window = [](const Signal& s) {
                    return std::pair{0.0, static_cast<double>(s.samples.size()) / s.sample_rate};
                };
                return slice_wave_dataset(recordings[0], full_window(recordings[0]), recordings[1],
                                          full_window(recordings[1]), config.per_class, trial_seed);
            });
            truth = data.labels;
            barcodes.resize(data.slices.size());
            run_stage(trial_tag + ", barcode computation", [&] {
                parallel_for(data.slices.size(), config.threads,
                             [&](std::size_t i) { barcodes[i] = sublevel_h0(data.slices[i]); });
                return 0;
            });
        }

        for (const Metric metric : config.metrics) {
            const std::string mname = metric_name(metric);
            const bool spectral = metric == Metric::spectral1 || metric == Metric::spectral2;
            const std::vector<Barcode>& metric_input =
                spectral && !spectral_barcodes.empty() ? spectral_barcodes : barcodes;
            const auto t0 = std::chrono::steady_clock::now();
            const DistanceMatrix matrix =
                run_stage(trial_tag + ", " + mname + " distance matrix", [&] {
                    return barcode_distance_matrix(metric_input, metric, config.threads);
                });
            time_sum[mname] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                   .count();

            for (const ClusterMethod method : config.methods) {
                const std::string stage = trial_tag + ", " + mname + " " + method_name(method);
                const ClusteringResult clusters = run_stage(stage, [&] {
                    switch (method) {
                        case ClusterMethod::kmedoids: return k_medoids(matrix, 2, trial_seed);
                        case ClusterMethod::agglomerative:
                            return agglomerative_average(matrix, 2);
                        case ClusterMethod::affinity:
                            return affinity_propagation(matrix, config.affinity_damping);
                    }
                    throw std::logic_error("unreachable");
                });
                fmi_sum[mname][method_name(method)] +=
                    run_stage(stage + " scoring", [&] { return fowlkes_mallows(truth, clusters.labels); });
                if (method == ClusterMethod::affinity) {
                    ran_affinity = true;
                    cluster_sum[mname] += static_cast<double>(clusters.n_clusters);
                }
            }
        }
    }

    ExperimentOutcome outcome;
    outcome.report.config = config;
    const double inv_trials = 1.0 / static_cast<double>(config.trials);
    for (const Metric metric : config.metrics) {
        const std::string mname = metric_name(metric);
        for (const ClusterMethod method : config.methods) {
            outcome.report.mean_fmi[mname][method_name(method)] =
                fmi_sum[mname][method_name(method)] * inv_trials;
        }
        if (ran_affinity) {
            outcome.report.mean_affinity_clusters[mname] = cluster_sum[mname] * inv_trials;
        }
        outcome.timings.distance_matrix_seconds[mname] = time_sum[mname];
    }
    outcome.timings.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return outcome;
}

std::string report_to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config"] = config_to_json(report.config);
    nlohmann::json results;
    for (const auto& [metric, by_method] : report.mean_fmi) {
        nlohmann::json entry;
        nlohmann::json fmi;
        for (const auto& [method, value] : by_method) fmi[method] = value;
        entry["fmi"] = fmi;
        const auto it = report.mean_affinity_clusters.find(metric);
        if (it != report.mean_affinity_clusters.end()) {
            entry["affinity_cluster_count"] = it->second;
        }
        results[metric] = entry;
    }
    j["results"] = results;
    return j.dump(2) + "\n";
}

std::string timings_to_json(const StageTimings& timings) {
    nlohmann::json j;
    j["schema_version"] = 1;
    nlohmann::json per_metric;
    for (const auto& [metric, seconds] : timings.distance_matrix_seconds) {
        per_metric[metric] = seconds;
    }
    j["distance_matrix_seconds"] = per_metric;
    j["total_seconds"] = timings.total_seconds;
    return j.dump(2) + "\n";
}

std::string report_table(const ExperimentReport& report, const StageTimings& timings) {
    std::string out;
    char line[256];
    const ExperimentConfig& config = report.config;
    std::snprintf(line, sizeof(line), "dataset=%s trials=%zu per_class=%zu seed=%llu\n",
                  config.dataset.c_str(), config.trials, config.per_class,
                  static_cast<unsigned long long>(config.seed));
    out += line;
    if (config.dataset == "ellipses") {
        std::snprintf(line, sizeof(line), "transformed=%s subsample=%zu\n",
                      config.transformed ? "true" : "false", config.subsample);
        out += line;
    }

    out += "\nmean FMI over trials\n";
    std::snprintf(line, sizeof(line), "%-12s", "metric");
    out += line;
    for (const ClusterMethod method : config.methods) {
        std::snprintf(line, sizeof(line), " %14s", method_name(method).c_str());
        out += line;
    }
    out += '\n';
    for (const Metric metric : config.metrics) {
        const std::string mname = metric_name(metric);
        std::snprintf(line, sizeof(line), "%-12s", mname.c_str());
        out += line;
        for (const ClusterMethod method : config.methods) {
            std::snprintf(line, sizeof(line), " %14.4f",
                          report.mean_fmi.at(mname).at(method_name(method)));
            out += line;
        }
        out += '\n';
    }

    if (!report.mean_affinity_clusters.empty()) {
        out += "\nmean affinity cluster count\n";
        for (const Metric metric : config.metrics) {
            const std::string mname = metric_name(metric);
            std::snprintf(line, sizeof(line), "%-12s %14.2f\n", mname.c_str(),
                          report.mean_affinity_clusters.at(mname));
            out += line;
        }
    }

    out += "\ndistance-matrix stage seconds (summed over trials)\n";
    for (const Metric metric : config.metrics) {
        const std::string mname = metric_name(metric);
        std::snprintf(line, sizeof(line), "%-12s %14.3f\n", mname.c_str(),
                      timings.distance_matrix_seconds.at(mname));
        out += line;
    }
    return out;
}

}  // namespace tda
