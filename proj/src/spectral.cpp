#include "tda/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tda {

namespace {

void require_p(int p) {
    if (p != 1 && p != 2) {
        throw std::invalid_argument("spectral distance: p must be 1 or 2, got " +
                                    std::to_string(p));
    }
}

double frobenius_norm(const std::vector<double>& entries) {
    double sum = 0.0;
    for (const double v : entries) sum += v * v;
    return std::sqrt(sum);
}

// Minimal l^p^p cost over all bijections between two equal-length vectors.
double min_assignment_cost(const std::vector<double>& a, const std::vector<double>& b, int p) {
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = std::fabs(a[i] - b[perm[i]]);
            cost += (p == 1) ? d : d * d;
        }
        best = std::min(best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

GramMatrix gram_matrix(const Barcode& barcode) {
    const std::size_t n = barcode.size();
    GramMatrix g;
    g.n = n;
    g.entries.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        g.entries[i * n + i] = barcode[i].length();
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = overlap_length(barcode[i], barcode[j]);
            g.entries[i * n + j] = v;
            g.entries[j * n + i] = v;
        }
    }
    return g;
}

std::vector<double> symmetric_eigenvalues(const GramMatrix& matrix) {
    const std::size_t n = matrix.n;
    if (matrix.entries.size() != n * n) {
        throw std::invalid_argument("symmetric_eigenvalues: entry count does not match size");
    }
    if (n == 0) return {};

    const double norm = frobenius_norm(matrix.entries);
    const double asym_tol = 1e-12 * std::max(1.0, norm);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::fabs(matrix.at(i, j) - matrix.at(j, i)) > asym_tol) {
                throw std::invalid_argument("symmetric_eigenvalues: input matrix is asymmetric");
            }
        }
    }

    std::vector<double> a = matrix.entries;  // mutated in place
    const double target = 1e-12 * norm;
    auto off_diagonal_mass = [&]() {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                sum += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        return std::sqrt(sum);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_diagonal_mass() > target) {
        if (++sweep > kMaxSweeps) {
            throw std::runtime_error("symmetric_eigenvalues: Jacobi iteration did not converge");
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                     : -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i * n + i];
    std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<double>());
    return eigenvalues;
}

Spectrum normalized_spectrum(const Barcode& barcode) {
    if (barcode.empty()) return {};
    std::vector<double> eigenvalues = symmetric_eigenvalues(gram_matrix(barcode));
    const double top = eigenvalues.front();
    if (!(top > 0.0)) {
        throw std::runtime_error("normalized_spectrum: leading eigenvalue is not positive");
    }
    Spectrum spectrum(eigenvalues.size());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        double v = eigenvalues[i] / top;
        if (v < 0.0) {
            if (v < -1e-10) {
                throw std::runtime_error(
                    "normalized_spectrum: significantly negative eigenvalue " + std::to_string(v));
            }
            v = 0.0;
        }
        spectrum[i] = v;
    }
    return spectrum;
}

double spectral_distance(const Spectrum& a, const Spectrum& b, int p) {
    require_p(p);
    const std::size_t n = std::max(a.size(), b.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        const double d = std::fabs(x - y);
        sum += (p == 1) ? d : d * d;
    }
    return (p == 1) ? sum : std::sqrt(sum);
}

double spectral_distance(const Barcode& a, const Barcode& b, int p) {
    require_p(p);
    return spectral_distance(normalized_spectrum(a), normalized_spectrum(b), p);
}

double spectral_distance_bruteforce(const Barcode& a, const Barcode& b, int p) {
    require_p(p);
    Spectrum sa = normalized_spectrum(a);
    Spectrum sb = normalized_spectrum(b);
    const std::size_t n = std::max(sa.size(), sb.size());
    if (n > 8) {
        throw std::invalid_argument(
            "spectral_distance_bruteforce: padded spectrum length above 8 (got " +
            std::to_string(n) + ")");
    }
    sa.resize(n, 0.0);
    sb.resize(n, 0.0);
    if (n == 0) return 0.0;
    const double cost = min_assignment_cost(sa, sb, p);
    return (p == 1) ? cost : std::sqrt(cost);
}

}  // namespace tda
