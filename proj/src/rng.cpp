// SPDX-License-Identifier: Apache-2.0
#include "cogbf/rng.hpp"

#include <cmath>
#include <numbers>

namespace cogbf {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::phase() {
    return 2.0 * std::numbers::pi * uniform();
}

double Rng::normal() {
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix Rng::complex_normal_matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = complex_normal();
        }
    }
    return m;
}

ComplexMatrix Rng::unit_modulus_matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = std::polar(1.0, phase());
        }
    }
    return m;
}

}  // namespace cogbf
