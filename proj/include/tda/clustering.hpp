#pragma once

#include <cstdint>
#include <vector>

#include "tda/distance_matrix.hpp"

namespace tda {

struct ClusteringResult {
    std::vector<int> labels;     // cluster ids in [0, n_clusters), each id non-empty
    std::size_t n_clusters = 0;
    bool converged = true;
};

// PAM-style k-medoids: greedy build followed by best-improvement swaps
// until no swap lowers the total distance to medoids. Fully deterministic;
// the seed parameter is accepted for interface stability but the
// build+swap procedure never consults it (ties break on smallest index).
ClusteringResult k_medoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed = 0);

// Bottom-up merging of the closest pair under unweighted average linkage
// until k clusters remain. Ties break on the smallest (i, j) pair of
// cluster slots (slots start as point indices; a merge keeps the smaller
// slot). Merge heights, if requested, are the successive linkage values.
ClusteringResult agglomerative_average(const DistanceMatrix& matrix, std::size_t k,
                                       std::vector<double>* merge_heights = nullptr);

// Responsibility/availability message passing on similarity = -distance
// with the self-preference set to the median off-diagonal similarity. The
// number of clusters is emergent. converged reports whether the exemplar
// set was stable for convergence_iter consecutive sweeps before max_iter.
ClusteringResult affinity_propagation(const DistanceMatrix& matrix, double damping = 0.5,
                                      std::size_t max_iter = 200,
                                      std::size_t convergence_iter = 15);

// Fowlkes-Mallows index between two labelings: TP / sqrt((TP+FP)(TP+FN))
// over co-clustered pairs, 0 when a denominator factor vanishes. Requires
// two labelings of equal length >= 2.
double fowlkes_mallows(const std::vector<int>& truth, const std::vector<int>& predicted);

}  // namespace tda
