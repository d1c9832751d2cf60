#pragma once

// Seeded randomness with a fully specified output sequence.
//
// Engine: std::mt19937_64, whose output is fixed by the C++ standard.
// Uniform:  u = (next() >> 11) · 2^-53 in [0, 1).
// Gaussian: Box–Muller on (1 − u1, u2), yielding the pair
//           r·cos(2πu2), r·sin(2πu2) with r = sqrt(−2 ln(1 − u1)).
// Complex:  (z0 + i·z1)/√2, so E|z|² = 1.
// Streams:  sub-generator k of seed s is seeded with splitmix64(s ^ splitmix64(k)).

#include <cstdint>
#include <random>

#include "cframe/matrix.hpp"

namespace cframe {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double gaussian();
    Complex complex_gaussian();
    /// Uniform integer in [lo, hi].
    std::size_t uniform_index(std::size_t lo, std::size_t hi);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// i.i.d. standard complex Gaussian entries.
Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Gaussian matrix scaled to unit Frobenius norm. With `diagonal`, only the
/// leading diagonal is populated.
Matrix unit_random_matrix(Rng& rng, std::size_t rows, std::size_t cols, bool diagonal = false);

}  // namespace cframe
