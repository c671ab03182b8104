#pragma once

#include <cstddef>
#include <vector>

namespace tda {

// Symmetric non-negative square matrix of pairwise pseudo-distances with
// zero diagonal. Row-major dense storage.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    // Writes both (i,j) and (j,i).
    void set_pair(std::size_t i, std::size_t j, double value) {
        entries_[i * n_ + j] = value;
        entries_[j * n_ + i] = value;
    }

    // Writes a single cell; used when loading a full matrix from a file
    // before symmetry has been checked.
    void set_entry(std::size_t i, std::size_t j, double value) { entries_[i * n_ + j] = value; }

    const std::vector<double>& entries() const { return entries_; }

    // Throws if the diagonal is nonzero, an entry is negative or non-finite,
    // or symmetry is violated beyond tol.
    void validate(double tol = 1e-9) const;

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

}  // namespace tda
