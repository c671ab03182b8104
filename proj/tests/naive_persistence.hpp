#pragma once

// Independent reference implementation of Vietoris-Rips persistence used only
// by the tests. Builds the full filtered complex up to triangles and reduces
// the complete boundary matrix over Z/2 with the textbook left-to-right
// column algorithm. Slow but simple enough to audit by eye.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "tda/barcode.hpp"
#include "tda/persistence.hpp"

namespace tda_test {

struct NaiveDiagrams {
    std::vector<tda::Interval> dim0;
    std::vector<tda::Interval> dim1;
};

// Full-matrix reduction of the Rips filtration of `points` up to dimension 2
// with the given threshold. The essential connected component is reported as
// (0, essential_death]; essential 1-cycles (possible when the threshold is
// below the diameter) are dropped.
inline NaiveDiagrams naive_rips_diagrams(const tda::PointCloud& points, double threshold,
                                         double essential_death) {
    using Simplex = std::vector<std::size_t>;
    struct Cell {
        double filtration = 0.0;
        Simplex vertices;
    };

    const std::size_t n = points.size();
    auto dist = [&](std::size_t a, std::size_t b) {
        const double dx = points[a][0] - points[b][0];
        const double dy = points[a][1] - points[b][1];
        return std::sqrt(dx * dx + dy * dy);
    };

    std::vector<Cell> cells;
    for (std::size_t v = 0; v < n; ++v) cells.push_back({0.0, {v}});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dist(i, j) <= threshold) cells.push_back({dist(i, j), {i, j}});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const double w = std::max({dist(i, j), dist(i, k), dist(j, k)});
                if (w <= threshold) cells.push_back({w, {i, j, k}});
            }

    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.filtration != b.filtration) return a.filtration < b.filtration;
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });

    std::map<Simplex, std::size_t> index_of;
    for (std::size_t i = 0; i < cells.size(); ++i) index_of[cells[i].vertices] = i;

    // Column i holds the facet indices of cell i, kept sorted; reduce by
    // cancelling matching lowest entries.
    std::vector<std::vector<std::size_t>> columns(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Simplex& s = cells[i].vertices;
        if (s.size() == 1) continue;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face;
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != drop) face.push_back(s[t]);
            columns[i].push_back(index_of.at(face));
        }
        std::sort(columns[i].begin(), columns[i].end());
    }

    std::vector<std::size_t> pivot_owner(cells.size(), SIZE_MAX);
    std::vector<bool> is_positive(cells.size(), true);
    NaiveDiagrams out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& col = columns[i];
        while (!col.empty()) {
            const std::size_t low = col.back();
            const std::size_t owner = pivot_owner[low];
            if (owner == SIZE_MAX) break;
            std::vector<std::size_t> merged;
            std::set_symmetric_difference(col.begin(), col.end(), columns[owner].begin(),
                                          columns[owner].end(), std::back_inserter(merged));
            col = std::move(merged);
        }
        if (col.empty()) continue;
        const std::size_t low = col.back();
        pivot_owner[low] = i;
        is_positive[i] = false;
        const double birth = cells[low].filtration;
        const double death = cells[i].filtration;
        if (death > birth) {
            if (cells[low].vertices.size() == 1) out.dim0.push_back({birth, death});
            if (cells[low].vertices.size() == 2) out.dim1.push_back({birth, death});
        }
    }

    // Essential classes: positive cells never used as a pivot.
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!is_positive[i] || pivot_owner[i] != SIZE_MAX) continue;
        if (cells[i].vertices.size() == 1 && essential_death > cells[i].filtration)
            out.dim0.push_back({cells[i].filtration, essential_death});
    }
    return out;
}

inline double naive_diameter(const tda::PointCloud& points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double dx = points[i][0] - points[j][0];
            const double dy = points[i][1] - points[j][1];
            best = std::max(best, std::sqrt(dx * dx + dy * dy));
        }
    return best;
}

}  // namespace tda_test
