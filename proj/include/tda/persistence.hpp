#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tda/barcode.hpp"
#include "tda/signal.hpp"

namespace tda {

using PointCloud = std::vector<std::array<double, 2>>;

// Connected-component barcode of the sublevel-set filtration of a sampled
// function on a path graph. Local minima give births; merges follow the
// elder rule (the younger component dies). The surviving component is
// reported as (global minimum, global maximum], which vanishes for a
// constant signal.
Barcode sublevel_h0(const std::vector<double>& samples);

inline Barcode sublevel_h0(const Signal& signal) { return sublevel_h0(signal.samples); }

// One simplex of a filtered complex: its vertex list (ascending) and the
// scale at which it enters.
struct FilteredSimplex {
    double filtration = 0.0;
    std::vector<std::size_t> vertices;

    friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

// Vietoris-Rips complex of a planar cloud up to max_dim (1 or 2): vertices
// enter at 0, edges at their length, triangles at their longest edge.
// Simplices above the threshold are omitted. Sorted by (filtration,
// dimension, vertex lexicographic).
std::vector<FilteredSimplex> rips_complex(const PointCloud& points, int max_dim, double threshold);

// What to do with the one component that never dies in degree 0.
enum class EssentialPolicy {
    cap,   // report it as (0, diameter]
    drop,  // omit it
};

struct RipsOptions {
    // Degree-1 computation enumerates all triangles, which is cubic in the
    // vertex count; inputs above this cap are rejected with a hint to
    // subsample first.
    std::size_t vertex_cap = 150;
    EssentialPolicy essential = EssentialPolicy::cap;
};

// Vietoris-Rips persistence barcode of a planar cloud in degree 0 or 1,
// computed over the full scale range [0, diameter]. At the diameter every
// edge and triangle is present, so all degree-1 classes die and the
// returned bars are finite.
Barcode rips_persistence(const PointCloud& points, int dim, const RipsOptions& options = {});

}  // namespace tda
