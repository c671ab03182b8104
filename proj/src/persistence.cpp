#include "tda/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tda {

namespace {

// Union-find with path halving. Roots carry client-managed payloads.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Makes `child` point at `root`. Caller decides orientation.
    void attach(std::size_t child, std::size_t root) { parent_[child] = root; }

private:
    std::vector<std::size_t> parent_;
};

void require_finite_points(const PointCloud& points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i][0]) || !std::isfinite(points[i][1])) {
            throw std::invalid_argument("point " + std::to_string(i) +
                                        ": non-finite coordinate");
        }
    }
}

double point_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

struct Edge {
    double w;
    std::uint32_t u, v;  // u < v
};

std::vector<Edge> sorted_edges(const PointCloud& points) {
    const std::size_t n = points.size();
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            edges.push_back({point_distance(points[i], points[j]), i, j});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.w, a.u, a.v) < std::tie(b.w, b.u, b.v);
    });
    return edges;
}

Barcode rips_h0(const PointCloud& points, const RipsOptions& options) {
    const std::size_t n = points.size();
    if (n == 0) return {};
    const std::vector<Edge> edges = sorted_edges(points);
    const double diameter = edges.empty() ? 0.0 : edges.back().w;

    UnionFind uf(n);
    std::vector<Interval> bars;
    bars.reserve(n);
    for (const Edge& e : edges) {
        const std::size_t ru = uf.find(e.u);
        const std::size_t rv = uf.find(e.v);
        if (ru == rv) continue;
        uf.attach(std::max(ru, rv), std::min(ru, rv));
        bars.push_back({0.0, e.w});
    }
    if (options.essential == EssentialPolicy::cap) {
        bars.push_back({0.0, diameter});
    }
    return canonicalize(std::move(bars));
}

Barcode rips_h1(const PointCloud& points, const RipsOptions& options) {
    const std::size_t n = points.size();
    if (n > options.vertex_cap) {
        throw std::invalid_argument("degree-1 barcode: point count " + std::to_string(n) +
                                    " exceeds the cap of " + std::to_string(options.vertex_cap) +
                                    "; subsample the cloud first");
    }
    if (n < 3) return {};

    const std::vector<Edge> edges = sorted_edges(points);
    const std::uint32_t edge_count = static_cast<std::uint32_t>(edges.size());

    // Edge index (in filtration order) by vertex pair.
    std::vector<std::uint32_t> edge_id(n * n, 0);
    for (std::uint32_t e = 0; e < edge_count; ++e) {
        edge_id[edges[e].u * n + edges[e].v] = e;
        edge_id[edges[e].v * n + edges[e].u] = e;
    }

    // Edges that close a cycle (do not merge components) create degree-1
    // classes; only these can be killed by triangles.
    std::vector<char> creates_cycle(edge_count, 0);
    {
        UnionFind uf(n);
        for (std::uint32_t e = 0; e < edge_count; ++e) {
            const std::size_t ru = uf.find(edges[e].u);
            const std::size_t rv = uf.find(edges[e].v);
            if (ru == rv) {
                creates_cycle[e] = 1;
            } else {
                uf.attach(std::max(ru, rv), std::min(ru, rv));
            }
        }
    }

    // Triangle columns: boundary = three edge indices, sorted ascending so
    // the pivot is the column's last entry.
    struct Triangle {
        double w;
        std::array<std::uint32_t, 3> boundary;
    };
    std::vector<Triangle> triangles;
    triangles.reserve(n * (n - 1) * (n - 2) / 6);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const std::uint32_t eij = edge_id[i * n + j];
            for (std::uint32_t k = j + 1; k < n; ++k) {
                std::array<std::uint32_t, 3> b{eij, edge_id[i * n + k], edge_id[j * n + k]};
                std::sort(b.begin(), b.end());
                triangles.push_back({edges[b[2]].w, b});
            }
        }
    }
    std::sort(triangles.begin(), triangles.end(), [](const Triangle& a, const Triangle& b) {
        return std::tie(a.w, a.boundary) < std::tie(b.w, b.boundary);
    });

    // Standard column reduction over Z/2. Stored reduced columns are shared
    // by later reductions through pivot_owner.
    std::vector<std::int32_t> pivot_owner(edge_count, -1);
    std::vector<std::vector<std::uint32_t>> stored_columns;
    std::vector<Interval> bars;
    std::vector<std::uint32_t> column;
    std::vector<std::uint32_t> merged;
    for (const Triangle& tri : triangles) {
        column.assign(tri.boundary.begin(), tri.boundary.end());
        while (!column.empty()) {
            const std::uint32_t low = column.back();
            const std::int32_t owner = pivot_owner[low];
            if (owner < 0) break;
            // column ^= stored_columns[owner] (symmetric difference of
            // sorted index lists).
            const std::vector<std::uint32_t>& other = stored_columns[owner];
            merged.clear();
            std::set_symmetric_difference(column.begin(), column.end(), other.begin(),
                                          other.end(), std::back_inserter(merged));
            column.swap(merged);
        }
        if (column.empty()) continue;
        const std::uint32_t low = column.back();
        pivot_owner[low] = static_cast<std::int32_t>(stored_columns.size());
        stored_columns.push_back(column);
        bars.push_back({edges[low].w, tri.w});
    }

    for (std::uint32_t e = 0; e < edge_count; ++e) {
        if (creates_cycle[e] && pivot_owner[e] < 0) {
            throw std::runtime_error(
                "degree-1 barcode: cycle not killed within the scale range; "
                "this should be impossible at full diameter");
        }
    }
    return canonicalize(std::move(bars));
}

}  // namespace

Barcode sublevel_h0(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(samples[i])) {
            throw std::invalid_argument("sample " + std::to_string(i) + ": non-finite value");
        }
    }
    if (n == 0) return {};

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a] != samples[b] ? samples[a] < samples[b] : a < b;
    });

    UnionFind uf(n);
    std::vector<char> active(n, 0);
    std::vector<double> component_birth(n, 0.0);
    std::vector<Interval> bars;
    for (const std::size_t idx : order) {
        const double value = samples[idx];
        active[idx] = 1;
        component_birth[idx] = value;
        for (const std::size_t nb : {idx == 0 ? n : idx - 1, idx + 1 == n ? n : idx + 1}) {
            if (nb >= n || !active[nb]) continue;
            const std::size_t r_new = uf.find(idx);
            const std::size_t r_old = uf.find(nb);
            if (r_new == r_old) continue;
            // Elder rule: the component with the higher (younger) birth dies.
            const std::size_t elder =
                component_birth[r_old] <= component_birth[r_new] ? r_old : r_new;
            const std::size_t younger = elder == r_old ? r_new : r_old;
            bars.push_back({component_birth[younger], value});
            uf.attach(younger, elder);
        }
    }
    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    bars.push_back({*min_it, *max_it});
    return canonicalize(std::move(bars));
}

std::vector<FilteredSimplex> rips_complex(const PointCloud& points, int max_dim,
                                          double threshold) {
    if (max_dim != 1 && max_dim != 2) {
        throw std::invalid_argument("rips_complex: max_dim must be 1 or 2, got " +
                                    std::to_string(max_dim));
    }
    if (!(threshold >= 0.0)) {
        throw std::invalid_argument("rips_complex: threshold must be non-negative");
    }
    require_finite_points(points);
    const std::size_t n = points.size();

    std::vector<FilteredSimplex> simplices;
    for (std::size_t i = 0; i < n; ++i) {
        simplices.push_back({0.0, {i}});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = point_distance(points[i], points[j]);
            if (w <= threshold) simplices.push_back({w, {i, j}});
        }
    }
    if (max_dim == 2) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double wij = point_distance(points[i], points[j]);
                if (wij > threshold) continue;
                for (std::size_t k = j + 1; k < n; ++k) {
                    const double w = std::max({wij, point_distance(points[i], points[k]),
                                               point_distance(points[j], points[k])});
                    if (w <= threshold) simplices.push_back({w, {i, j, k}});
                }
            }
        }
    }
    std::sort(simplices.begin(), simplices.end(),
              [](const FilteredSimplex& a, const FilteredSimplex& b) {
                  if (a.filtration != b.filtration) return a.filtration < b.filtration;
                  if (a.vertices.size() != b.vertices.size()) {
                      return a.vertices.size() < b.vertices.size();
                  }
                  return a.vertices < b.vertices;
              });
    return simplices;
}

Barcode rips_persistence(const PointCloud& points, int dim, const RipsOptions& options) {
    if (dim != 0 && dim != 1) {
        throw std::invalid_argument("rips_persistence: dim must be 0 or 1, got " +
                                    std::to_string(dim));
    }
    require_finite_points(points);
    return dim == 0 ? rips_h0(points, options) : rips_h1(points, options);
}

}  // namespace tda
