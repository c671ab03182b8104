// Command-line front end: dataset synthesis, barcode computation, distance
// matrices, clustering, and the full clustering-comparison experiment.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tda/barcode.hpp"
#include "tda/clustering.hpp"
#include "tda/datasets.hpp"
#include "tda/experiment.hpp"
#include "tda/io.hpp"
#include "tda/persistence.hpp"
#include "tda/rng.hpp"
#include "tda/spectral.hpp"

namespace fs = std::filesystem;

namespace {

// Expands files/directories into a sorted list of files with one of the
// accepted extensions. Explicit file arguments are taken as-is.
std::vector<fs::path> collect_inputs(const std::vector<std::string>& inputs,
                                     const std::vector<std::string>& extensions) {
    std::vector<fs::path> files;
    for (const std::string& input : inputs) {
        const fs::path path(input);
        if (fs::is_directory(path)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(path)) {
                if (!entry.is_regular_file()) continue;
                const std::string ext = entry.path().extension().string();
                if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end()) {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::exists(path)) {
            files.push_back(path);
        } else {
            throw std::invalid_argument("input does not exist: " + input);
        }
    }
    return files;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed while writing file: " + path.string());
}

struct SynthArgs {
    std::string out_dir;
    std::uint64_t seed = 0;
    std::size_t per_class = 20;
    bool transformed = true;
    double noise = tda::kEllipseNoiseSigma;
};

int cmd_synth(const SynthArgs& args) {
    const tda::LabeledClouds data =
        tda::synth_dataset(args.per_class, args.transformed, args.seed, args.noise);
    fs::create_directories(args.out_dir);

    nlohmann::json manifest;
    manifest["schema_version"] = 1;
    manifest["dataset"] = "ellipses";
    manifest["seed"] = args.seed;
    manifest["per_class"] = args.per_class;
    manifest["transformed"] = args.transformed;
    manifest["noise_sigma"] = args.noise;
    nlohmann::json samples = nlohmann::json::array();
    for (std::size_t i = 0; i < data.clouds.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "cloud_%03zu.csv", i);
        tda::write_point_cloud(fs::path(args.out_dir) / name, data.clouds[i]);
        const tda::ConformalTransform& t = data.transforms[i];
        nlohmann::json sample;
        sample["file"] = name;
        sample["label"] = data.labels[i];
        sample["transform"] = {{"rotation", t.rotation},
                               {"scale", t.scale},
                               {"translation", {t.translate_x, t.translate_y}}};
        samples.push_back(sample);
    }
    manifest["samples"] = samples;
    tda::write_labels(fs::path(args.out_dir) / "labels.txt", data.labels);
    write_text_file(fs::path(args.out_dir) / "manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << data.clouds.size() << " point clouds to " << args.out_dir << "\n";
    return 0;
}

struct BarcodeArgs {
    std::vector<std::string> inputs;
    std::string kind = "rips1";
    std::string out_dir;
    std::size_t subsample = 0;
    std::uint64_t seed = 0;
};

int cmd_barcode(const BarcodeArgs& args) {
    if (args.kind != "rips0" && args.kind != "rips1" && args.kind != "sublevel0") {
        throw std::invalid_argument("unknown barcode kind '" + args.kind +
                                    "' (valid: rips0, rips1, sublevel0)");
    }
    const bool sublevel = args.kind == "sublevel0";
    const std::vector<std::string> extensions =
        sublevel ? std::vector<std::string>{".csv", ".wav"} : std::vector<std::string>{".csv"};
    const std::vector<fs::path> files = collect_inputs(args.inputs, extensions);
    if (files.empty()) {
        std::cout << "no input files\n";
        return 0;
    }
    fs::create_directories(args.out_dir);

    std::size_t failures = 0;
    for (std::size_t index = 0; index < files.size(); ++index) {
        const fs::path& file = files[index];
        try {
            tda::Barcode barcode;
            if (sublevel) {
                const tda::Signal signal = file.extension() == ".wav" ? tda::load_wav(file)
                                                                      : tda::read_signal(file);
                barcode = tda::sublevel_h0(signal);
            } else {
                tda::PointCloud points = tda::read_point_cloud(file);
                if (args.subsample > 0 && args.subsample < points.size()) {
                    tda::SplitRng rng =
                        tda::SplitRng::substream(args.seed, {tda::kStreamSubsample, index});
                    points = tda::subsample(points, args.subsample, rng);
                }
                barcode = tda::rips_persistence(points, args.kind == "rips0" ? 0 : 1);
            }
            const fs::path out = fs::path(args.out_dir) / (file.stem().string() + ".barcode");
            tda::write_barcode(out, barcode);
        } catch (const std::exception& e) {
            std::cerr << file.string() << ": " << e.what() << "\n";
            ++failures;
        }
    }
    std::cout << "wrote " << (files.size() - failures) << " barcode files to " << args.out_dir
              << "\n";
    if (failures > 0) {
        std::cerr << failures << " of " << files.size() << " inputs failed\n";
        return 2;
    }
    return 0;
}

struct DistmatArgs {
    std::vector<std::string> inputs;
    std::string metric = "ds2";
    std::string out_file;
    std::size_t threads = 1;
};

int cmd_distmat(const DistmatArgs& args) {
    const tda::Metric metric = tda::parse_metric(args.metric);
    const std::vector<fs::path> files = collect_inputs(args.inputs, {".barcode"});
    if (files.size() < 2) {
        throw std::invalid_argument("need at least 2 barcode files, got " +
                                    std::to_string(files.size()));
    }
    std::vector<tda::Barcode> barcodes;
    barcodes.reserve(files.size());
    for (const fs::path& file : files) barcodes.push_back(tda::read_barcode(file));

    const auto t0 = std::chrono::steady_clock::now();
    const tda::DistanceMatrix matrix =
        tda::barcode_distance_matrix(barcodes, metric, args.threads);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    tda::write_distance_matrix(args.out_file, matrix);
    char line[160];
    std::snprintf(line, sizeof(line), "metric=%s n=%zu seconds=%.6f\n",
                  tda::metric_name(metric).c_str(), barcodes.size(), seconds);
    std::cout << line;
    return 0;
}

struct ClusterArgs {
    std::string matrix_file;
    std::string method = "kmedoids";
    std::size_t k = 2;
    std::uint64_t seed = 0;
    double damping = 0.5;
    std::string truth_file;
    std::string out_file;
};

int cmd_cluster(const ClusterArgs& args) {
    const tda::ClusterMethod method = tda::parse_method(args.method);
    const tda::DistanceMatrix matrix = tda::read_distance_matrix(args.matrix_file);
    tda::ClusteringResult result;
    switch (method) {
        case tda::ClusterMethod::kmedoids:
            result = tda::k_medoids(matrix, args.k, args.seed);
            break;
        case tda::ClusterMethod::agglomerative:
            result = tda::agglomerative_average(matrix, args.k);
            break;
        case tda::ClusterMethod::affinity:
            result = tda::affinity_propagation(matrix, args.damping);
            break;
    }
    std::cout << "n_clusters=" << result.n_clusters
              << " converged=" << (result.converged ? "true" : "false") << "\n";
    if (!args.truth_file.empty()) {
        const std::vector<int> truth = tda::read_labels(args.truth_file);
        char line[64];
        std::snprintf(line, sizeof(line), "fmi=%.6f\n",
                      tda::fowlkes_mallows(truth, result.labels));
        std::cout << line;
    }
    if (!args.out_file.empty()) {
        tda::write_labels(args.out_file, result.labels);
    }
    return 0;
}

struct ExperimentArgs {
    tda::ExperimentConfig defaults;  // source of default values
    std::string dataset = "ellipses";
    std::vector<std::string> metrics;
    std::vector<std::string> methods;
    std::size_t trials = 0;
    std::size_t per_class = 0;
    std::size_t subsample = 0;
    double spectral_floor = 0.0;
    double damping = 0.0;
    bool transformed = true;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::vector<std::string> wavs;
    std::string out_dir;

    ExperimentArgs()
        : trials(defaults.trials),
          per_class(defaults.per_class),
          subsample(defaults.subsample),
          spectral_floor(defaults.spectral_floor),
          damping(defaults.affinity_damping) {}
};

int cmd_experiment(const ExperimentArgs& args) {
    tda::ExperimentConfig config;
    config.dataset = args.dataset;
    for (const std::string& name : args.metrics) config.metrics.push_back(tda::parse_metric(name));
    for (const std::string& name : args.methods) config.methods.push_back(tda::parse_method(name));
    config.trials = args.trials;
    config.per_class = args.per_class;
    config.subsample = args.subsample;
    config.spectral_floor = args.spectral_floor;
    config.affinity_damping = args.damping;
    config.transformed = args.transformed;
    config.seed = args.seed;
    config.threads = args.threads;
    config.wav_paths = args.wavs;

    const tda::ExperimentOutcome outcome = tda::run_experiment(config);
    fs::create_directories(args.out_dir);
    write_text_file(fs::path(args.out_dir) / "report.json", tda::report_to_json(outcome.report));
    write_text_file(fs::path(args.out_dir) / "timings.json",
                    tda::timings_to_json(outcome.timings));
    std::cout << tda::report_table(outcome.report, outcome.timings);
    std::cout << "\nreport written to " << (fs::path(args.out_dir) / "report.json").string()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistence-barcode toolkit: synthetic datasets, barcodes, spectral and "
                 "matching pseudometrics, clustering experiments"};
    app.require_subcommand(1);

    SynthArgs synth;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate the synthetic ellipse dataset");
    synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
    synth_cmd->add_option("--seed", synth.seed, "Random seed");
    synth_cmd->add_option("--per-class", synth.per_class, "Samples per class")
        ->check(CLI::PositiveNumber);
    synth_cmd->add_flag("--transformed,!--untransformed", synth.transformed,
                        "Apply random conformal transforms (default on)");
    synth_cmd->add_option("--noise", synth.noise, "Gaussian noise sigma per coordinate");

    BarcodeArgs barcode;
    CLI::App* barcode_cmd =
        app.add_subcommand("barcode", "Compute persistence barcodes from point clouds or signals");
    barcode_cmd->add_option("inputs", barcode.inputs, "Input files or directories")->required();
    barcode_cmd->add_option("--kind", barcode.kind, "Barcode kind: rips0, rips1, sublevel0");
    barcode_cmd->add_option("--out", barcode.out_dir, "Output directory")->required();
    barcode_cmd->add_option("--subsample", barcode.subsample,
                            "Subsample point clouds to this many points (0 = keep all)");
    barcode_cmd->add_option("--seed", barcode.seed, "Seed for subsampling");

    DistmatArgs distmat;
    CLI::App* distmat_cmd =
        app.add_subcommand("distmat", "Compute a pairwise distance matrix of barcodes");
    distmat_cmd->add_option("inputs", distmat.inputs, "Barcode files or directories")->required();
    distmat_cmd->add_option("--metric", distmat.metric,
                            "Pseudometric: bottleneck, w1, w2, ds1, ds2");
    distmat_cmd->add_option("--out", distmat.out_file, "Output matrix file")->required();
    distmat_cmd->add_option("--threads", distmat.threads, "Worker threads")
        ->check(CLI::PositiveNumber);

    ClusterArgs cluster;
    CLI::App* cluster_cmd = app.add_subcommand("cluster", "Cluster a distance matrix");
    cluster_cmd->add_option("matrix", cluster.matrix_file, "Distance matrix file")->required();
    cluster_cmd->add_option("--method", cluster.method,
                            "Method: kmedoids, agglomerative, affinity");
    cluster_cmd->add_option("--k", cluster.k, "Cluster count (ignored by affinity)");
    cluster_cmd->add_option("--seed", cluster.seed, "Seed for kmedoids");
    cluster_cmd->add_option("--damping", cluster.damping, "Affinity-propagation damping");
    cluster_cmd->add_option("--truth", cluster.truth_file,
                            "True labels file; prints the Fowlkes-Mallows index");
    cluster_cmd->add_option("--out", cluster.out_file, "Write predicted labels here");

    ExperimentArgs experiment;
    CLI::App* experiment_cmd =
        app.add_subcommand("experiment", "Run the clustering-comparison experiment");
    experiment_cmd->add_option("--dataset", experiment.dataset, "Dataset: ellipses or waves");
    experiment_cmd->add_option("--metric", experiment.metrics,
                               "Pseudometric (repeatable; default all)");
    experiment_cmd->add_option("--method", experiment.methods,
                               "Clustering method (repeatable; default all)");
    experiment_cmd->add_option("--trials", experiment.trials, "Trial count")
        ->check(CLI::PositiveNumber);
    experiment_cmd->add_option("--per-class", experiment.per_class,
                               "Samples per class / slices per family")
        ->check(CLI::PositiveNumber);
    experiment_cmd->add_option("--subsample", experiment.subsample,
                               "Points kept per cloud (0 = keep all; ellipses only)");
    experiment_cmd->add_option(
        "--spectral-floor", experiment.spectral_floor,
        "Relative persistence floor on the barcodes feeding the spectral metrics "
        "(ellipses only; 0 = off)");
    experiment_cmd->add_option("--damping", experiment.damping,
                               "Affinity-propagation damping in [0.5, 1)");
    experiment_cmd->add_flag("--transformed,!--untransformed", experiment.transformed,
                             "Apply random conformal transforms (ellipses only, default on)");
    experiment_cmd->add_option("--seed", experiment.seed, "Random seed");
    experiment_cmd->add_option("--threads", experiment.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    experiment_cmd->add_option("--wav", experiment.wavs,
                               "WAV recording per class (give twice; default synthetic)");
    experiment_cmd->add_option("--out", experiment.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth_cmd->parsed()) return cmd_synth(synth);
        if (barcode_cmd->parsed()) return cmd_barcode(barcode);
        if (distmat_cmd->parsed()) return cmd_distmat(distmat);
        if (cluster_cmd->parsed()) return cmd_cluster(cluster);
        if (experiment_cmd->parsed()) return cmd_experiment(experiment);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
