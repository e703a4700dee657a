// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "cogbf/numerics.hpp"

namespace cogbf {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives a child seed from a parent seed and a stream tag.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
    return splitmix64(parent ^ splitmix64(tag + 0x632BE59BD9B4E019ULL));
}

/// Reproducible random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Distribution transforms are implemented here (not via
/// <random> distributions, which are implementation defined) so draws are
/// bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in [0, 2*pi).
    double phase();
    /// Standard normal via Box-Muller (no cached second value).
    double normal();
    /// Circularly symmetric CN(0, 1).
    Complex complex_normal();

    ComplexMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols);
    /// Entries exp(j*theta) with theta uniform in [0, 2*pi).
    ComplexMatrix unit_modulus_matrix(Eigen::Index rows, Eigen::Index cols);

private:
    std::mt19937_64 engine_;
};

}  // namespace cogbf
