#include "tda/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "tda/rng.hpp"

namespace tda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_k(std::size_t k, std::size_t n, const char* who) {
    if (k < 1 || k > n) {
        throw std::invalid_argument(std::string(who) + ": need 1 <= k <= " + std::to_string(n) +
                                    ", got k = " + std::to_string(k));
    }
}

// Labels points by their nearest medoid (ties to the smaller medoid
// index); cluster ids follow ascending medoid order.
std::vector<int> label_by_medoids(const DistanceMatrix& d, const std::vector<std::size_t>& medoids) {
    std::vector<int> labels(d.size(), 0);
    for (std::size_t j = 0; j < d.size(); ++j) {
        std::size_t best = 0;
        double best_dist = kInf;
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            const double dist = d.at(j, medoids[m]);
            if (dist < best_dist) {
                best_dist = dist;
                best = m;
            }
        }
        labels[j] = static_cast<int>(best);
    }
    return labels;
}

double medoid_cost(const DistanceMatrix& d, const std::vector<std::size_t>& medoids) {
    double cost = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        double nearest = kInf;
        for (const std::size_t m : medoids) nearest = std::min(nearest, d.at(j, m));
        cost += nearest;
    }
    return cost;
}

}  // namespace

ClusteringResult k_medoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed) {
    (void)seed;  // the build+swap procedure is deterministic on its own
    const std::size_t n = matrix.size();
    require_k(k, n, "k_medoids");

    // Greedy build: start from the 1-medoid optimum, then repeatedly add
    // the point that lowers the total nearest-medoid distance the most.
    std::vector<std::size_t> medoids;
    std::vector<char> is_medoid(n, 0);
    std::vector<double> nearest(n, kInf);
    while (medoids.size() < k) {
        std::size_t best_candidate = n;
        double best_cost = kInf;
        for (std::size_t c = 0; c < n; ++c) {
            if (is_medoid[c]) continue;
            double cost = 0.0;
            for (std::size_t j = 0; j < n; ++j) cost += std::min(nearest[j], matrix.at(c, j));
            if (cost < best_cost) {
                best_cost = cost;
                best_candidate = c;
            }
        }
        medoids.push_back(best_candidate);
        is_medoid[best_candidate] = 1;
        for (std::size_t j = 0; j < n; ++j) {
            nearest[j] = std::min(nearest[j], matrix.at(best_candidate, j));
        }
    }

    // Best-improvement swaps until a local optimum.
    double current_cost = medoid_cost(matrix, medoids);
    while (true) {
        double best_cost = current_cost;
        std::size_t best_m = n, best_h = n;
        for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
            for (std::size_t h = 0; h < n; ++h) {
                if (is_medoid[h]) continue;
                std::vector<std::size_t> trial = medoids;
                trial[mi] = h;
                const double cost = medoid_cost(matrix, trial);
                if (cost < best_cost - 1e-12) {
                    best_cost = cost;
                    best_m = mi;
                    best_h = h;
                }
            }
        }
        if (best_m == n) break;
        is_medoid[medoids[best_m]] = 0;
        is_medoid[best_h] = 1;
        medoids[best_m] = best_h;
        current_cost = best_cost;
    }

    std::sort(medoids.begin(), medoids.end());
    ClusteringResult result;
    result.labels = label_by_medoids(matrix, medoids);
    result.n_clusters = k;
    result.converged = true;
    return result;
}

ClusteringResult agglomerative_average(const DistanceMatrix& matrix, std::size_t k,
                                       std::vector<double>* merge_heights) {
    const std::size_t n = matrix.size();
    require_k(k, n, "agglomerative_average");
    if (merge_heights) merge_heights->clear();

    // Average linkage via running sums of pairwise distances: when A and B
    // merge, sum(A+B, C) = sum(A, C) + sum(B, C).
    std::vector<std::vector<double>> sum(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) sum[i][j] = matrix.at(i, j);
    }
    std::vector<std::size_t> size(n, 1);
    std::vector<char> active(n, 1);
    std::vector<std::size_t> merged_into(n);
    for (std::size_t i = 0; i < n; ++i) merged_into[i] = i;

    for (std::size_t remaining = n; remaining > k; --remaining) {
        std::size_t best_i = n, best_j = n;
        double best_avg = kInf;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                const double avg = sum[i][j] / static_cast<double>(size[i] * size[j]);
                if (avg < best_avg) {
                    best_avg = avg;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (merge_heights) merge_heights->push_back(best_avg);
        for (std::size_t l = 0; l < n; ++l) {
            if (!active[l] || l == best_i || l == best_j) continue;
            sum[best_i][l] += sum[best_j][l];
            sum[l][best_i] = sum[best_i][l];
        }
        size[best_i] += size[best_j];
        active[best_j] = 0;
        merged_into[best_j] = best_i;
    }

    auto root_of = [&](std::size_t p) {
        while (merged_into[p] != p) p = merged_into[p];
        return p;
    };
    std::vector<int> root_label(n, -1);
    int next_label = 0;
    ClusteringResult result;
    result.labels.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        const std::size_t root = root_of(p);
        if (root_label[root] < 0) root_label[root] = next_label++;
        result.labels[p] = root_label[root];
    }
    result.n_clusters = k;
    result.converged = true;
    return result;
}

ClusteringResult affinity_propagation(const DistanceMatrix& matrix, double damping,
                                      std::size_t max_iter, std::size_t convergence_iter) {
    if (!(damping >= 0.5) || !(damping < 1.0)) {
        throw std::invalid_argument("affinity_propagation: damping must be in [0.5, 1), got " +
                                    std::to_string(damping));
    }
    const std::size_t n = matrix.size();
    ClusteringResult result;
    if (n == 0) return result;
    if (n == 1) {
        result.labels = {0};
        result.n_clusters = 1;
        return result;
    }

    double max_off_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            max_off_diag = std::max(max_off_diag, matrix.at(i, j));
        }
    }
    if (max_off_diag == 0.0) {
        // All points mutually identical: one cluster.
        result.labels.assign(n, 0);
        result.n_clusters = 1;
        return result;
    }

    std::vector<double> s(n * n, 0.0);
    std::vector<double> off_diag;
    off_diag.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            s[i * n + j] = -matrix.at(i, j);
            off_diag.push_back(s[i * n + j]);
        }
    }
    std::sort(off_diag.begin(), off_diag.end());
    const std::size_t m = off_diag.size();
    const double preference = 0.5 * (off_diag[(m - 1) / 2] + off_diag[m / 2]);
    for (std::size_t i = 0; i < n; ++i) s[i * n + i] = preference;

    // Deterministic tie-breaking jitter: exactly symmetric similarities
    // (e.g. duplicated rows) make the message passing oscillate, so nudge
    // every cell by a tiny amount that is a pure function of its position.
    const double jitter_scale = 1e-9 * max_off_diag;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double u =
                static_cast<double>(mix64(i * n + j + 1) >> 11) * 0x1.0p-53;  // in [0,1)
            s[i * n + j] += jitter_scale * u;
        }
    }

    std::vector<double> r(n * n, 0.0), a(n * n, 0.0);
    std::vector<char> exemplar(n, 0), prev_exemplar(n, 0);
    std::size_t stable = 0;
    bool converged = false;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // Responsibilities.
        for (std::size_t i = 0; i < n; ++i) {
            double max1 = -kInf, max2 = -kInf;
            std::size_t arg1 = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const double v = a[i * n + k] + s[i * n + k];
                if (v > max1) {
                    max2 = max1;
                    max1 = v;
                    arg1 = k;
                } else if (v > max2) {
                    max2 = v;
                }
            }
            for (std::size_t k = 0; k < n; ++k) {
                const double bound = (k == arg1) ? max2 : max1;
                r[i * n + k] = damping * r[i * n + k] + (1.0 - damping) * (s[i * n + k] - bound);
            }
        }
        // Availabilities.
        for (std::size_t k = 0; k < n; ++k) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i != k) total += std::max(0.0, r[i * n + k]);
            }
            for (std::size_t i = 0; i < n; ++i) {
                double fresh;
                if (i == k) {
                    fresh = total;
                } else {
                    const double without_i = total - std::max(0.0, r[i * n + k]);
                    fresh = std::min(0.0, r[k * n + k] + without_i);
                }
                a[i * n + k] = damping * a[i * n + k] + (1.0 - damping) * fresh;
            }
        }
        // Exemplar stability.
        std::size_t count = 0;
        for (std::size_t k = 0; k < n; ++k) {
            exemplar[k] = (a[k * n + k] + r[k * n + k] > 0.0) ? 1 : 0;
            count += exemplar[k];
        }
        if (iter > 0 && exemplar == prev_exemplar) {
            ++stable;
        } else {
            stable = 1;
        }
        prev_exemplar = exemplar;
        if (count > 0 && stable >= convergence_iter) {
            converged = true;
            break;
        }
    }

    std::vector<std::size_t> exemplars;
    for (std::size_t k = 0; k < n; ++k) {
        if (exemplar[k]) exemplars.push_back(k);
    }
    if (exemplars.empty()) {
        result.labels.assign(n, 0);
        result.n_clusters = 1;
        result.converged = false;
        return result;
    }
    result.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        double best_sim = -kInf;
        for (std::size_t e = 0; e < exemplars.size(); ++e) {
            const double sim = s[i * n + exemplars[e]];
            if (sim > best_sim) {
                best_sim = sim;
                best = e;
            }
        }
        result.labels[i] = static_cast<int>(best);
    }
    for (std::size_t e = 0; e < exemplars.size(); ++e) {
        result.labels[exemplars[e]] = static_cast<int>(e);
    }
    result.n_clusters = exemplars.size();
    result.converged = converged;
    return result;
}

double fowlkes_mallows(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("fowlkes_mallows: labelings differ in length (" +
                                    std::to_string(truth.size()) + " vs " +
                                    std::to_string(predicted.size()) + ")");
    }
    if (truth.size() < 2) {
        throw std::invalid_argument("fowlkes_mallows: need at least 2 samples");
    }
    std::map<std::pair<int, int>, std::size_t> contingency;
    std::map<int, std::size_t> truth_sizes, pred_sizes;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++contingency[{truth[i], predicted[i]}];
        ++truth_sizes[truth[i]];
        ++pred_sizes[predicted[i]];
    }
    auto pairs = [](std::size_t c) {
        return static_cast<double>(c) * static_cast<double>(c - 1) / 2.0;
    };
    double tp = 0.0, truth_pairs = 0.0, pred_pairs = 0.0;
    for (const auto& entry : contingency) tp += pairs(entry.second);
    for (const auto& entry : truth_sizes) truth_pairs += pairs(entry.second);
    for (const auto& entry : pred_sizes) pred_pairs += pairs(entry.second);
    if (truth_pairs == 0.0 || pred_pairs == 0.0) return 0.0;
    return tp / std::sqrt(truth_pairs * pred_pairs);
}

}  // namespace tda
