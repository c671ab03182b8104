#include "tda/distance_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tda {

void DistanceMatrix::validate(double tol) const {
    for (std::size_t i = 0; i < n_; ++i) {
        if (at(i, i) != 0.0) {
            throw std::invalid_argument("distance matrix: nonzero diagonal at " + std::to_string(i));
        }
        for (std::size_t j = 0; j < n_; ++j) {
            const double v = at(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("distance matrix: bad entry at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            }
            if (std::fabs(v - at(j, i)) > tol) {
                throw std::invalid_argument("distance matrix: asymmetric at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            }
        }
    }
}

}  // namespace tda
