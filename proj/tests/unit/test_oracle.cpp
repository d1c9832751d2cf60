#include <cmath>
#include <set>

#include "doctest.h"

#include "cframe/error.hpp"
#include "cframe/oracle.hpp"
#include "test_support.hpp"

using namespace cframe;
using cframe::test::near;

TEST_CASE("riemann_gram of a constant family") {
    const Matrix c{{Complex(1, 1), 2.0}, {0.0, Complex(0, -3)}};
    const auto f = FrameFamily::polynomial({c});
    const auto g = oracle::riemann_gram(f, -1.0, 2.0, {1000});
    CHECK(near(g.matrix(), 3.0 * (c.adjoint() * c), 1e-12));
}

TEST_CASE("riemann_gram errors") {
    const auto f = FrameFamily::polynomial({Matrix::identity(1)});
    CHECK_THROWS_AS(oracle::riemann_gram(f, 1.0, 1.0), Error);
    CHECK_THROWS_AS(oracle::riemann_gram(FrameFamily::tabulated({Matrix::identity(1)}), 0.0, 1.0), Error);
}

TEST_CASE("exact polynomial gram") {
    CHECK(oracle::monomial_integral(0, 0.0, 1.0) == 1.0);
    CHECK(oracle::monomial_integral(2, -1.0, 2.0) == doctest::Approx(3.0));
    const auto f = FrameFamily::polynomial({Matrix::zeros(2, 2), Matrix::identity(2)});
    CHECK(near(oracle::exact_polynomial_gram(f, 0.0, 1.0), (1.0 / 3.0) * Matrix::identity(2), 1e-15));
}

TEST_CASE("riemann and exact grams agree on random families") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto shape = oracle::random_shape(seed, 3, 3);
        const auto f = oracle::random_frame(seed, shape.n, shape.m, shape.degree, 0.5);
        const Matrix exact = oracle::exact_polynomial_gram(f, 0.0, 1.0);
        CHECK(near(oracle::riemann_gram(f, 0.0, 1.0).matrix(), exact, 1e-6 * std::max(1.0, exact.max_abs())));
    }
}

TEST_CASE("random_frame is deterministic") {
    const auto a = oracle::random_frame(17, 2, 3, 2, 1.0);
    const auto b = oracle::random_frame(17, 2, 3, 2, 1.0);
    const auto c = oracle::random_frame(18, 2, 3, 2, 1.0);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 3);
    CHECK(a.degree() == 2);
}

TEST_CASE("random_frame offset dominates at degree zero") {
    const auto f = oracle::random_frame(3, 2, 2, 0, 100.0);
    const Matrix g = oracle::exact_polynomial_gram(f, 0.0, 1.0);
    CHECK(hermitian_eig(g).min() > 1000.0);
}

TEST_CASE("random_vector") {
    const auto x = oracle::random_vector(5, 3, 4);
    CHECK(x == oracle::random_vector(5, 3, 4));
    CHECK(x.matrix().frobenius_norm() == doctest::Approx(1.0).epsilon(1e-14));
    std::set<double> firsts;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) firsts.insert(oracle::random_vector(seed, 1, 2).matrix()(0, 0).real());
    CHECK(firsts.size() == 1000);
}

TEST_CASE("random_map and random_shape") {
    const auto v = oracle::random_map(2, 3, 2);
    CHECK(v.source_cols() == 3);
    CHECK(v.target_cols() == 2);
    CHECK(is_surjective(v));
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto s = oracle::random_shape(seed, 4, 3);
        CHECK(s.n >= 1);
        CHECK(s.n <= 4);
        CHECK(s.m >= 1);
        CHECK(s.m <= 4);
        CHECK(s.degree <= 3);
    }
}
