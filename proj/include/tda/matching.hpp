#pragma once

#include "tda/barcode.hpp"

namespace tda {

// A bar read as a planar point (birth, death) above the diagonal.
struct DiagramPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// Nearest diagonal point, the sink that absorbs unmatched bars.
inline DiagramPoint diagonal_projection(const DiagramPoint& a) {
    const double mid = 0.5 * (a.x + a.y);
    return {mid, mid};
}

// p-Wasserstein distance between barcodes viewed as planar diagrams with a
// diagonal sink: unmatched bars pay the l^p distance to their diagonal
// projection, and the same exponent p is used inside and outside the sum.
// Exact via a square assignment problem on the diagonal-augmented cost
// matrix. Requires finite p >= 1.
double wasserstein_distance(const Barcode& a, const Barcode& b, double p);

// Bottleneck (l^infinity) matching distance with the diagonal sink. Exact:
// binary search over the finite set of realizable candidate values with a
// bipartite-matching feasibility test.
double bottleneck_distance(const Barcode& a, const Barcode& b);

// Reference implementation enumerating every partial pairing between the
// two bar sets. Accepts finite p >= 1 or p = infinity (bottleneck).
// Requires a.size() + b.size() <= 6.
double matching_cost_bruteforce(const Barcode& a, const Barcode& b, double p);

}  // namespace tda
