#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace tda {

// Half-open bar (birth, death] with finite endpoints and positive length.
// All derived quantities go through Lebesgue measure, so the open/closed
// endpoint convention never changes a computed number.
struct Interval {
    double birth = 0.0;
    double death = 0.0;

    double length() const { return death - birth; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Measure of the intersection of two bars.
double overlap_length(const Interval& a, const Interval& b);

// Bars shorter than this are treated as numerically degenerate and dropped
// during canonicalization.
inline constexpr double kDegenerateBarEps = 1e-12;

// Finite multiset of bars, stored sorted by (birth, death) with duplicates
// materialized. Instances are only created through canonicalize(), so a
// Barcode value is always canonical. Immutable after construction.
class Barcode {
public:
    Barcode() = default;

    std::size_t size() const { return bars_.size(); }
    bool empty() const { return bars_.empty(); }
    const Interval& operator[](std::size_t i) const { return bars_[i]; }
    const std::vector<Interval>& bars() const { return bars_; }

    auto begin() const { return bars_.begin(); }
    auto end() const { return bars_.end(); }

    friend bool operator==(const Barcode&, const Barcode&) = default;

    friend Barcode canonicalize(std::vector<Interval> raw);

private:
    explicit Barcode(std::vector<Interval> sorted_bars) : bars_(std::move(sorted_bars)) {}

    std::vector<Interval> bars_;
};

// Drops bars with death <= birth + kDegenerateBarEps, sorts by
// (birth, death), keeps duplicates. Rejects non-finite endpoints with a
// diagnostic naming the offending input index.
Barcode canonicalize(std::vector<Interval> raw);
Barcode canonicalize(const std::vector<std::pair<double, double>>& raw);

// Multiplies every endpoint by s > 0.
Barcode scaled(const Barcode& b, double s);

// Shifts every endpoint by t.
Barcode translated(const Barcode& b, double t);

// Multiset union.
Barcode multiset_union(const Barcode& a, const Barcode& b);

// Lexicographic order on the canonical bar sequences; used to make
// argument-order-sensitive computations symmetric.
bool barcode_less(const Barcode& a, const Barcode& b);

// Keeps only the bars whose length is at least alpha times the longest
// length in the barcode. The threshold is relative, so the result commutes
// with scaling. alpha <= 0 keeps everything; alpha in (0, 1] always keeps
// the longest bar; alpha > 1 empties the barcode. Rejects non-finite alpha.
Barcode persistence_floor(const Barcode& b, double alpha);

}  // namespace tda
