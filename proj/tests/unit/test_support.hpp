#pragma once

#include <cmath>

#include "cframe/matrix.hpp"
#include "cframe/random.hpp"

namespace cframe::test {

inline Matrix random_hermitian(Rng& rng, std::size_t n) { return gaussian_matrix(rng, n, n).hermitian_part(); }

inline Matrix random_positive_definite(Rng& rng, std::size_t n, double floor) {
    const Matrix a = gaussian_matrix(rng, n, n);
    return (a.adjoint() * a + floor * Matrix::identity(n)).hermitian_part();
}

inline bool near(const Matrix& a, const Matrix& b, double tol) { return frobenius_distance(a, b) <= tol; }

}  // namespace cframe::test
