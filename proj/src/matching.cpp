#include "tda/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inf_cost(const Interval& a, const Interval& b) {
    return std::max(std::fabs(a.birth - b.birth), std::fabs(a.death - b.death));
}

double diag_inf_cost(const Interval& a) { return 0.5 * a.length(); }

// |db|^p + |dd|^p, the p-th power of the l^p distance between two bars
// read as points (birth, death).
double pow_cost(const Interval& a, const Interval& b, double p) {
    return std::pow(std::fabs(a.birth - b.birth), p) + std::pow(std::fabs(a.death - b.death), p);
}

// p-th power of the l^p distance from a bar to its diagonal projection.
double diag_pow_cost(const Interval& a, double p) { return 2.0 * std::pow(0.5 * a.length(), p); }

// Exact minimum-cost perfect assignment on a square matrix (Hungarian
// algorithm with potentials, O(n^3)). Returns the matched cost as the sum
// of selected matrix entries.
double assignment_min_cost(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return 0.0;
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
    return total;
}

double wasserstein_ordered(const Barcode& a, const Barcode& b, double p) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t size = n + m;
    if (size == 0) return 0.0;

    // Rows: bars of a, then m diagonal slots. Columns: bars of b, then n
    // diagonal slots. Diagonal-to-diagonal matches cost nothing.
    std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double to_diag = diag_pow_cost(a[i], p);
        for (std::size_t j = 0; j < m; ++j) cost[i][j] = pow_cost(a[i], b[j], p);
        for (std::size_t j = m; j < size; ++j) cost[i][j] = to_diag;
    }
    for (std::size_t j = 0; j < m; ++j) {
        const double to_diag = diag_pow_cost(b[j], p);
        for (std::size_t i = n; i < size; ++i) cost[i][j] = to_diag;
    }
    return std::pow(assignment_min_cost(cost), 1.0 / p);
}

// Maximum bipartite matching (augmenting paths) on the implicit
// diagonal-augmented graph restricted to edges of infinity-cost <= r.
// Perfect matchings always exist once r is large enough because
// diagonal-to-diagonal edges are free.
bool bottleneck_feasible(const Barcode& a, const Barcode& b, double r) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t size = n + m;

    auto allowed = [&](std::size_t row, std::size_t col) {
        const bool row_real = row < n;
        const bool col_real = col < m;
        if (row_real && col_real) return inf_cost(a[row], b[col]) <= r;
        if (row_real) return diag_inf_cost(a[row]) <= r;
        if (col_real) return diag_inf_cost(b[col]) <= r;
        return true;
    };

    std::vector<int> match_col(size, -1);  // column -> row
    std::vector<char> visited(size, 0);
    std::function<bool(std::size_t)> try_augment = [&](std::size_t row) {
        for (std::size_t col = 0; col < size; ++col) {
            if (visited[col] || !allowed(row, col)) continue;
            visited[col] = 1;
            if (match_col[col] < 0 || try_augment(static_cast<std::size_t>(match_col[col]))) {
                match_col[col] = static_cast<int>(row);
                return true;
            }
        }
        return false;
    };

    for (std::size_t row = 0; row < size; ++row) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!try_augment(row)) return false;
    }
    return true;
}

double bottleneck_ordered(const Barcode& a, const Barcode& b) {
    if (a.empty() && b.empty()) return 0.0;

    std::vector<double> candidates;
    candidates.push_back(0.0);
    for (const Interval& bar : a) candidates.push_back(diag_inf_cost(bar));
    for (const Interval& bar : b) candidates.push_back(diag_inf_cost(bar));
    for (const Interval& x : a) {
        for (const Interval& y : b) candidates.push_back(inf_cost(x, y));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // The answer is the smallest candidate admitting a perfect matching;
    // feasibility is monotone in r, so binary search applies.
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (bottleneck_feasible(a, b, candidates[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return candidates[lo];
}

// Recursively pairs each bar of a with an unused bar of b or with the
// diagonal; leftover bars of b go to the diagonal. Minimizes the summed
// p-th powers (finite p) or the maximum elementary cost (p = infinity).
double bruteforce_recurse(const Barcode& a, const Barcode& b, double p, std::size_t i,
                          std::uint32_t used_mask, double partial) {
    const bool max_mode = std::isinf(p);
    if (i == a.size()) {
        double total = partial;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used_mask & (1u << j)) continue;
            const double c = max_mode ? diag_inf_cost(b[j]) : diag_pow_cost(b[j], p);
            total = max_mode ? std::max(total, c) : total + c;
        }
        return total;
    }
    const double diag = max_mode ? diag_inf_cost(a[i]) : diag_pow_cost(a[i], p);
    double best = bruteforce_recurse(a, b, p, i + 1, used_mask,
                                     max_mode ? std::max(partial, diag) : partial + diag);
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used_mask & (1u << j)) continue;
        const double c = max_mode ? inf_cost(a[i], b[j]) : pow_cost(a[i], b[j], p);
        best = std::min(best, bruteforce_recurse(a, b, p, i + 1, used_mask | (1u << j),
                                                 max_mode ? std::max(partial, c) : partial + c));
    }
    return best;
}

}  // namespace

double wasserstein_distance(const Barcode& a, const Barcode& b, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw std::invalid_argument("wasserstein_distance: p must be finite and >= 1");
    }
    // Evaluate in a canonical argument order so the result is exactly
    // symmetric despite floating-point rounding inside the assignment.
    return barcode_less(b, a) ? wasserstein_ordered(b, a, p) : wasserstein_ordered(a, b, p);
}

double bottleneck_distance(const Barcode& a, const Barcode& b) {
    return barcode_less(b, a) ? bottleneck_ordered(b, a) : bottleneck_ordered(a, b);
}

double matching_cost_bruteforce(const Barcode& a, const Barcode& b, double p) {
    const bool max_mode = std::isinf(p) && p > 0.0;
    if (!max_mode && (!(p >= 1.0) || !std::isfinite(p))) {
        throw std::invalid_argument(
            "matching_cost_bruteforce: p must be finite and >= 1, or +infinity");
    }
    if (a.size() + b.size() > 6) {
        throw std::invalid_argument("matching_cost_bruteforce: needs a.size()+b.size() <= 6, got " +
                                    std::to_string(a.size() + b.size()));
    }
    const Barcode& first = barcode_less(b, a) ? b : a;
    const Barcode& second = barcode_less(b, a) ? a : b;
    const double cost = bruteforce_recurse(first, second, p, 0, 0, 0.0);
    return max_mode ? cost : std::pow(cost, 1.0 / p);
}

}  // namespace tda
