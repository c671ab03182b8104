#include "tda/barcode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tda {

double overlap_length(const Interval& a, const Interval& b) {
    const double lo = std::max(a.birth, b.birth);
    const double hi = std::min(a.death, b.death);
    return std::max(0.0, hi - lo);
}

Barcode canonicalize(std::vector<Interval> raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i].birth) || !std::isfinite(raw[i].death)) {
            throw std::invalid_argument("bar " + std::to_string(i) + ": non-finite endpoint (birth=" +
                                        std::to_string(raw[i].birth) +
                                        ", death=" + std::to_string(raw[i].death) + ")");
        }
    }
    std::vector<Interval> kept;
    kept.reserve(raw.size());
    for (const Interval& bar : raw) {
        if (bar.death > bar.birth + kDegenerateBarEps) kept.push_back(bar);
    }
    std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
        return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
    });
    return Barcode(std::move(kept));
}

Barcode canonicalize(const std::vector<std::pair<double, double>>& raw) {
    std::vector<Interval> bars;
    bars.reserve(raw.size());
    for (const auto& [birth, death] : raw) bars.push_back({birth, death});
    return canonicalize(std::move(bars));
}

Barcode scaled(const Barcode& b, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("scale factor must be positive");
    std::vector<Interval> bars;
    bars.reserve(b.size());
    for (const Interval& bar : b) bars.push_back({bar.birth * s, bar.death * s});
    return canonicalize(std::move(bars));
}

Barcode translated(const Barcode& b, double t) {
    std::vector<Interval> bars;
    bars.reserve(b.size());
    for (const Interval& bar : b) bars.push_back({bar.birth + t, bar.death + t});
    return canonicalize(std::move(bars));
}

Barcode multiset_union(const Barcode& a, const Barcode& b) {
    std::vector<Interval> bars;
    bars.reserve(a.size() + b.size());
    bars.insert(bars.end(), a.begin(), a.end());
    bars.insert(bars.end(), b.begin(), b.end());
    return canonicalize(std::move(bars));
}

bool barcode_less(const Barcode& a, const Barcode& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [](const Interval& x, const Interval& y) {
            return x.birth != y.birth ? x.birth < y.birth : x.death < y.death;
        });
}

Barcode persistence_floor(const Barcode& b, double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("persistence floor must be finite");
    if (alpha <= 0.0 || b.empty()) return b;
    double longest = 0.0;
    for (const Interval& bar : b) longest = std::max(longest, bar.length());
    std::vector<Interval> kept;
    kept.reserve(b.size());
    for (const Interval& bar : b) {
        if (bar.length() >= alpha * longest) kept.push_back(bar);
    }
    return canonicalize(std::move(kept));
}

}  // namespace tda
