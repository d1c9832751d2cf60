#include <cmath>

#include "doctest.h"

#include "cframe/cstar.hpp"
#include "cframe/error.hpp"
#include "test_support.hpp"

using namespace cframe;
using cframe::test::near;

namespace {

const Complex I{0.0, 1.0};

AlgebraElement elem(Matrix m) { return AlgebraElement(std::move(m)); }

}  // namespace

TEST_CASE("adjoint") {
    CHECK(adjoint(AlgebraElement::identity(2)) == AlgebraElement::identity(2));
    CHECK(adjoint(elem({{0, 1}, {0, 0}})) == elem({{0, 0}, {1, 0}}));
    CHECK(adjoint(elem(Matrix::diagonal({I, -I}))) == elem(Matrix::diagonal({-I, I})));

    Rng rng(7);
    const AlgebraElement a(gaussian_matrix(rng, 5, 5));
    CHECK(adjoint(adjoint(a)) == a);
}

TEST_CASE("hermitian_eig examples") {
    const auto g = hermitian_eig(Matrix::diagonal({1.0 / 3.0, 7.0 / 3.0}));
    CHECK(g.eigenvalues[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(g.eigenvalues[1] == doctest::Approx(7.0 / 3.0).epsilon(1e-15));

    const auto id = hermitian_eig(Matrix::identity(2));
    CHECK(id.eigenvalues == std::vector<double>{1.0, 1.0});
    // Ties keep their original order.
    CHECK(near(id.basis, Matrix::identity(2), 0.0));

    // λ² − (7/3)λ + 13/12 = 0.
    const auto p = hermitian_eig(Matrix{{1.0, 0.5}, {0.5, 4.0 / 3.0}});
    CHECK(p.eigenvalues[0] == doctest::Approx((7.0 - std::sqrt(10.0)) / 6.0).epsilon(1e-14));
    CHECK(p.eigenvalues[1] == doctest::Approx((7.0 + std::sqrt(10.0)) / 6.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    try {
        hermitian_eig(Matrix{{0, 1}, {0, 0}});
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
    CHECK_THROWS_AS(hermitian_eig(Matrix(2, 3)), Error);
}

TEST_CASE("spectral reconstruction and unitarity on random Hermitian matrices") {
    Rng rng(11);
    for (std::size_t n = 1; n <= 12; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const Matrix a = cframe::test::random_hermitian(rng, n);
            const auto eig = hermitian_eig(a);
            Matrix d(n, n);
            for (std::size_t i = 0; i < n; ++i) d(i, i) = eig.eigenvalues[i];
            const Matrix rebuilt = eig.basis * d * eig.basis.adjoint();
            CHECK(frobenius_distance(rebuilt, a) <= 1e-10 * (1.0 + a.frobenius_norm()));
            CHECK(frobenius_distance(eig.basis.adjoint() * eig.basis, Matrix::identity(n)) <= 1e-10);
            for (std::size_t i = 1; i < n; ++i) CHECK(eig.eigenvalues[i - 1] <= eig.eigenvalues[i]);
            CHECK(eig.sweeps <= kMaxJacobiSweeps);
        }
    }
}

TEST_CASE("zero matrix converges immediately") {
    const auto eig = hermitian_eig(Matrix::zeros(3, 3));
    CHECK(eig.sweeps == 0);
    CHECK(eig.max() == 0.0);
}

TEST_CASE("is_positive") {
    const auto g = is_positive(elem(Matrix::diagonal({1.0 / 3.0, 7.0 / 3.0})));
    CHECK(g.positive);
    CHECK(g.lambda_min == doctest::Approx(1.0 / 3.0));

    const auto neg = is_positive(elem(-Matrix::identity(2)));
    CHECK_FALSE(neg.positive);
    CHECK(neg.lambda_min == doctest::Approx(-1.0));

    const auto indef = is_positive(elem({{1, 2}, {2, 1}}));
    CHECK_FALSE(indef);
    CHECK(indef.lambda_min == doctest::Approx(-1.0));

    const auto nonherm = is_positive(elem({{1, 1}, {0, 1}}));
    CHECK_FALSE(nonherm);
    CHECK(nonherm.reason == "not Hermitian");
}

TEST_CASE("psd_power examples") {
    const Matrix third = (1.0 / 3.0) * Matrix::identity(2);
    CHECK(near(psd_power(third, PsdPower::InvSqrt), std::sqrt(3.0) * Matrix::identity(2), 1e-14));
    CHECK(near(psd_power(Matrix::identity(2), PsdPower::Sqrt), Matrix::identity(2), 1e-15));
    CHECK(near(psd_power(Matrix::diagonal({1.0 / 3.0, 7.0 / 3.0}), PsdPower::Inverse),
               Matrix::diagonal({3.0, 3.0 / 7.0}), 1e-14));
}

TEST_CASE("psd_power error paths and clamping") {
    try {
        psd_power(-Matrix::identity(2), PsdPower::Sqrt);
        FAIL("expected NotPositive");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPositive);
    }
    try {
        psd_power(Matrix::diagonal({1.0, 0.0}), PsdPower::InvSqrt);
        FAIL("expected SingularForNegativePower");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularForNegativePower);
    }
    // A slightly negative eigenvalue inside the clamp window is treated as zero.
    const Matrix r = psd_power(Matrix::diagonal({4.0, -1e-12}), PsdPower::Sqrt);
    CHECK(r(0, 0).real() == doctest::Approx(2.0));
    CHECK(r(1, 1).real() == 0.0);
}

TEST_CASE("power coherence") {
    Rng rng(3);
    for (std::size_t n = 1; n <= 8; ++n) {
        const Matrix a = cframe::test::random_positive_definite(rng, n, 1e-2);
        const Matrix root = psd_power(a, PsdPower::Sqrt);
        CHECK(frobenius_distance(root * root, a) <= 1e-8);
        const Matrix inv_root = psd_power(a, PsdPower::InvSqrt);
        CHECK(frobenius_distance(inv_root * inv_root * a, Matrix::identity(n)) <= 1e-8);
        const Matrix inv = psd_power(a, PsdPower::Inverse);
        CHECK(frobenius_distance(inv * a, Matrix::identity(n)) <= 1e-8);
    }
    // The squared root reproduces the input within 10·tol near the singular edge.
    const Matrix edge = Matrix::diagonal({1e-4, 1.0});
    const Matrix r = psd_power(edge, PsdPower::Sqrt);
    CHECK(frobenius_distance(r * r, edge) <= 1e-9);
}

TEST_CASE("loewner_leq") {
    const Matrix g = Matrix::diagonal({1.0 / 3.0, 7.0 / 3.0});
    const Matrix top = (7.0 / 3.0) * Matrix::identity(2);

    const auto refl = loewner_leq(g, g);
    CHECK(refl.holds);
    CHECK(refl.margin == 0.0);

    const auto below = loewner_leq(g, top);
    CHECK(below.holds);
    CHECK(below.margin == doctest::Approx(0.0).epsilon(1e-15));

    const auto above = loewner_leq(top, g);
    CHECK_FALSE(above.holds);
    CHECK(above.margin == doctest::Approx(-2.0));

    CHECK_THROWS_AS(loewner_leq(Matrix{{0, 1}, {0, 0}}, Matrix::identity(2)), Error);
}

TEST_CASE("loewner antisymmetry") {
    Rng rng(19);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rep % 5;
        const Matrix a = cframe::test::random_hermitian(rng, n);
        const double scale = std::pow(10.0, -static_cast<double>(rep % 14));
        const Matrix b = a + scale * cframe::test::random_hermitian(rng, n);
        if (loewner_leq(a, b).holds && loewner_leq(b, a).holds) CHECK(frobenius_distance(a, b) <= 1e-8);
    }
}

TEST_CASE("operator_norm") {
    CHECK(operator_norm(Matrix::diagonal({1.0 / 3.0, 7.0 / 3.0})) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
    CHECK(operator_norm(Matrix::zeros(2, 2)) == 0.0);
    CHECK(operator_norm(Matrix{{0, 1}, {0, 0}}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(operator_norm(Matrix::diagonal({-5.0, 2.0})) == doctest::Approx(5.0));
    CHECK(operator_norm(Matrix{{3, 4}}) == doctest::Approx(5.0));
}

TEST_CASE("C*-identity") {
    Rng rng(23);
    for (std::size_t n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const Matrix a = gaussian_matrix(rng, n, n);
            const double lhs = operator_norm(a.adjoint() * a);
            const double rhs = operator_norm(a) * operator_norm(a);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
        }
    }
}

TEST_CASE("abs_element") {
    CHECK(near(abs_element(AlgebraElement::identity(2)).matrix(), Matrix::identity(2), 1e-15));
    CHECK(near(abs_element(elem({{0, 1}, {0, 0}})).matrix(), Matrix::diagonal({0.0, 1.0}), 1e-15));
    CHECK(near(abs_element(elem(Matrix::diagonal({-2.0, 3.0}))).matrix(), Matrix::diagonal({2.0, 3.0}), 1e-14));

    Rng rng(5);
    const AlgebraElement a(gaussian_matrix(rng, 4, 4));
    CHECK(is_positive(abs_element(a)).positive);
}

TEST_CASE("invertibility") {
    CHECK(is_invertible(AlgebraElement::identity(3)));
    CHECK_FALSE(is_invertible(elem({{0, 1}, {0, 0}})));
    CHECK(is_invertible(elem(Matrix::diagonal({1.0 / std::sqrt(3.0), std::sqrt(7.0 / 3.0)}))));
}
