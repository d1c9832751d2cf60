#include "cframe/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cframe {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) { return splitmix64(seed ^ splitmix64(stream)); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

Complex Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) / std::numbers::sqrt2;
}

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
    const std::size_t span = hi - lo + 1;
    const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(span));
    return lo + std::min(k, span - 1);
}

Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (auto& z : m.entries()) z = rng.complex_gaussian();
    return m;
}

Matrix unit_random_matrix(Rng& rng, std::size_t rows, std::size_t cols, bool diagonal) {
    Matrix m(rows, cols);
    double norm = 0.0;
    while (norm == 0.0) {
        if (diagonal) {
            for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = rng.complex_gaussian();
        } else {
            m = gaussian_matrix(rng, rows, cols);
        }
        norm = m.frobenius_norm();
    }
    return (1.0 / norm) * m;
}

}  // namespace cframe
