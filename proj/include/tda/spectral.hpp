#pragma once

#include <cstddef>
#include <vector>

#include "tda/barcode.hpp"

namespace tda {

// Dense symmetric matrix of pairwise bar overlaps. Entry (i,j) is the
// measure of the intersection of bars i and j; the diagonal holds bar
// lengths.
struct GramMatrix {
    std::size_t n = 0;
    std::vector<double> entries;  // row-major, n*n

    double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

GramMatrix gram_matrix(const Barcode& barcode);

// Eigenvalues of a symmetric matrix, sorted descending. Cyclic Jacobi
// rotations; iteration stops once the off-diagonal Frobenius mass drops
// below 1e-12 times the Frobenius norm of the input. Throws if the input
// is noticeably asymmetric or the iteration fails to converge.
std::vector<double> symmetric_eigenvalues(const GramMatrix& matrix);

// Descending eigenvalue sequence of the overlap Gram matrix divided by its
// largest eigenvalue, so the leading entry is 1. Values land in [0,1];
// tiny negative rounding artifacts are clamped to zero. Empty barcode maps
// to the empty spectrum.
using Spectrum = std::vector<double>;
Spectrum normalized_spectrum(const Barcode& barcode);

// l^p distance between normalized spectra after zero-padding the shorter
// one; descending order makes the identity matching optimal. Only p = 1
// and p = 2 are supported.
double spectral_distance(const Spectrum& a, const Spectrum& b, int p);
double spectral_distance(const Barcode& a, const Barcode& b, int p);

// Reference implementation that minimizes over all pairings of the padded
// spectra explicitly. Rejects padded length above 8 (factorial blowup).
double spectral_distance_bruteforce(const Barcode& a, const Barcode& b, int p);

}  // namespace tda
