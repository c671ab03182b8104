#include <cmath>
#include <vector>

#include <stdexcept>

#include "doctest.h"
#include "tda/clustering.hpp"
#include "tda/distance_matrix.hpp"

using tda::ClusteringResult;
using tda::DistanceMatrix;

namespace {

// Two tight pairs far apart: the canonical two-cluster toy problem.
DistanceMatrix two_pairs() {
    DistanceMatrix d(4);
    d.set_pair(0, 1, 0.1);
    d.set_pair(2, 3, 0.1);
    d.set_pair(0, 2, 10.0);
    d.set_pair(0, 3, 10.0);
    d.set_pair(1, 2, 10.0);
    d.set_pair(1, 3, 10.0);
    return d;
}

// Distance matrix of points on a line.
DistanceMatrix from_line(const std::vector<double>& xs) {
    DistanceMatrix d(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            d.set_pair(i, j, std::fabs(xs[i] - xs[j]));
        }
    }
    return d;
}

}  // namespace

TEST_CASE("k_medoids separates two obvious clusters") {
    const ClusteringResult r = tda::k_medoids(two_pairs(), 2);
    CHECK(r.n_clusters == 2);
    CHECK(r.converged);
    REQUIRE(r.labels.size() == 4);
    CHECK(r.labels[0] == r.labels[1]);
    CHECK(r.labels[2] == r.labels[3]);
    CHECK(r.labels[0] != r.labels[2]);
    CHECK(r.labels == std::vector<int>{0, 0, 1, 1});  // ids follow ascending medoid order
}

TEST_CASE("k_medoids trivial k values") {
    const DistanceMatrix d = two_pairs();
    const ClusteringResult one = tda::k_medoids(d, 1);
    CHECK(one.labels == std::vector<int>{0, 0, 0, 0});
    const ClusteringResult all = tda::k_medoids(d, 4);
    CHECK(all.labels == std::vector<int>{0, 1, 2, 3});
    CHECK_THROWS_AS(tda::k_medoids(d, 0), std::invalid_argument);
    CHECK_THROWS_AS(tda::k_medoids(d, 5), std::invalid_argument);
}

TEST_CASE("k_medoids ignores its seed parameter") {
    const DistanceMatrix d = from_line({0.0, 0.3, 1.1, 4.0, 4.2, 5.0});
    const ClusteringResult a = tda::k_medoids(d, 2, 1);
    const ClusteringResult b = tda::k_medoids(d, 2, 999);
    CHECK(a.labels == b.labels);
}

TEST_CASE("agglomerative_average merges closest pairs and reports heights") {
    const DistanceMatrix d = from_line({0.0, 1.0, 5.0, 6.0});

    std::vector<double> heights;
    const ClusteringResult two = tda::agglomerative_average(d, 2, &heights);
    CHECK(two.n_clusters == 2);
    CHECK(two.labels == std::vector<int>{0, 0, 1, 1});
    REQUIRE(heights.size() == 2);
    CHECK(heights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(heights[1] == doctest::Approx(1.0).epsilon(1e-15));

    const ClusteringResult one = tda::agglomerative_average(d, 1, &heights);
    CHECK(one.labels == std::vector<int>{0, 0, 0, 0});
    REQUIRE(heights.size() == 3);
    // Average linkage between {0,1} and {5,6}: mean of 5, 6, 4, 5.
    CHECK(heights[2] == doctest::Approx(5.0).epsilon(1e-15));

    const ClusteringResult all = tda::agglomerative_average(d, 4, &heights);
    CHECK(all.labels == std::vector<int>{0, 1, 2, 3});
    CHECK(heights.empty());

    CHECK_THROWS_AS(tda::agglomerative_average(d, 0), std::invalid_argument);
}

TEST_CASE("agglomerative_average chains sums correctly on an asymmetric layout") {
    // 0 and 1 merge first (gap 1); the pair then sits at average distance
    // 2.5 from point 2, closer than point 3 is to anything.
    const DistanceMatrix d = from_line({0.0, 1.0, 3.0, 9.0});
    std::vector<double> heights;
    const ClusteringResult r = tda::agglomerative_average(d, 2, &heights);
    CHECK(r.labels == std::vector<int>{0, 0, 0, 1});
    REQUIRE(heights.size() == 2);
    CHECK(heights[1] == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("affinity_propagation finds the two pairs on its own") {
    for (const double damping : {0.5, 0.8}) {
        const ClusteringResult r = tda::affinity_propagation(two_pairs(), damping);
        CHECK(r.n_clusters == 2);
        CHECK(r.converged);
        CHECK(r.labels == std::vector<int>{0, 0, 1, 1});
    }
}

TEST_CASE("affinity_propagation validates damping") {
    CHECK_THROWS_AS(tda::affinity_propagation(two_pairs(), 0.4), std::invalid_argument);
    CHECK_THROWS_AS(tda::affinity_propagation(two_pairs(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tda::affinity_propagation(two_pairs(), std::nan("")), std::invalid_argument);
}

TEST_CASE("affinity_propagation degenerate inputs") {
    const ClusteringResult empty = tda::affinity_propagation(DistanceMatrix{});
    CHECK(empty.labels.empty());
    CHECK(empty.n_clusters == 0);

    const ClusteringResult single = tda::affinity_propagation(DistanceMatrix(1));
    CHECK(single.labels == std::vector<int>{0});
    CHECK(single.n_clusters == 1);

    // All-zero distances: every point is identical, one cluster.
    const ClusteringResult flat = tda::affinity_propagation(DistanceMatrix(5));
    CHECK(flat.labels == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(flat.n_clusters == 1);
}

TEST_CASE("fowlkes_mallows pinned values") {
    CHECK(tda::fowlkes_mallows({0, 1, 0, 1}, {0, 1, 0, 1}) == 1.0);
    CHECK(tda::fowlkes_mallows({0, 1, 0, 1}, {1, 0, 1, 0}) == 1.0);  // names are irrelevant
    CHECK(std::fabs(tda::fowlkes_mallows({0, 0, 0, 1}, {0, 0, 1, 1}) - 1.0 / std::sqrt(6.0)) <=
          1e-12);
    CHECK(tda::fowlkes_mallows({0, 0, 1, 1}, {0, 0, 0, 1}) ==
          tda::fowlkes_mallows({0, 0, 0, 1}, {0, 0, 1, 1}));
}

TEST_CASE("fowlkes_mallows vanishing denominators give zero") {
    CHECK(tda::fowlkes_mallows({0, 1, 2, 3}, {0, 0, 0, 0}) == 0.0);
    CHECK(tda::fowlkes_mallows({0, 0, 0, 0}, {0, 1, 2, 3}) == 0.0);
    CHECK(tda::fowlkes_mallows({0, 1}, {0, 0}) == 0.0);
}

TEST_CASE("fowlkes_mallows validates its inputs") {
    CHECK_THROWS_WITH_AS(tda::fowlkes_mallows({0, 1, 0}, {0, 1}), doctest::Contains("length"),
                         std::invalid_argument);
    CHECK_THROWS_AS(tda::fowlkes_mallows({0}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(tda::fowlkes_mallows({}, {}), std::invalid_argument);
}
