#include <cmath>

#include "doctest.h"

#include "cframe/error.hpp"
#include "cframe/measure.hpp"
#include "cframe/oracle.hpp"
#include "test_support.hpp"

using namespace cframe;
using cframe::test::near;

TEST_CASE("build_quadrature examples") {
    const auto one = build_quadrature(IntervalMeasure{0.0, 1.0, 1, 1});
    REQUIRE(one.size() == 1);
    CHECK(one[0].point == doctest::Approx(0.5));
    CHECK(one[0].weight == doctest::Approx(1.0));

    const auto two = build_quadrature(IntervalMeasure{0.0, 1.0, 2, 1});
    REQUIRE(two.size() == 2);
    CHECK(two[0] == QuadratureNode{0.25, 0.5});
    CHECK(two[1] == QuadratureNode{0.75, 0.5});

    const auto atoms = build_quadrature(DiscreteMeasure{{{0.0, 1.0}, {1.0, 1.0}}});
    CHECK(atoms == std::vector<QuadratureNode>{{0.0, 1.0}, {1.0, 1.0}});
}

TEST_CASE("Gauss-Legendre reference rule") {
    const auto two = gauss_legendre(2);
    CHECK(two[0].point == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(two[1].point == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(two[0].weight == doctest::Approx(1.0).epsilon(1e-15));

    const auto three = gauss_legendre(3);
    CHECK(three[1].point == 0.0);
    CHECK(three[1].weight == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(three[2].point == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));

    for (std::size_t k = 1; k <= 40; ++k) {
        const auto nodes = gauss_legendre(k);
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            sum += nodes[i].weight;
            CHECK(nodes[i].weight > 0.0);
            if (i > 0) CHECK(nodes[i - 1].point < nodes[i].point);
        }
        CHECK(std::abs(sum - 2.0) <= 1e-13);
    }
}

TEST_CASE("total weight equals the measure") {
    for (std::size_t p : {1, 3, 8}) {
        for (std::size_t k : {1, 4, 8, 13}) {
            const IntervalMeasure iv{-0.5, 2.0, p, k, 1.5};
            double sum = 0.0;
            for (const auto& node : build_quadrature(iv)) sum += node.weight;
            CHECK(std::abs(sum - total_measure(iv)) <= 1e-12);
        }
    }
    CHECK(total_measure(DiscreteMeasure{{{0.0, 0.25}, {3.0, 2.0}}}) == doctest::Approx(2.25));
}

TEST_CASE("polynomial exactness") {
    const double a = -0.3;
    const double b = 1.7;
    for (std::size_t k = 1; k <= 10; ++k) {
        for (std::size_t p : {1, 4}) {
            const IntervalMeasure iv{a, b, p, k};
            for (unsigned deg = 0; deg <= 2 * k - 1; ++deg) {
                const Matrix integral = integrate_matrix_function(
                    [deg](double w) { return std::pow(w, deg) * Matrix::identity(1); }, iv);
                const double exact = oracle::monomial_integral(deg, a, b);
                CHECK(std::abs(integral(0, 0).real() - exact) <= 1e-13 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

TEST_CASE("refinement stability") {
    const auto f = [](double w) {
        return Matrix{{w * w, Complex(0.0, w)}, {1.0 - w, std::pow(w, 5)}};
    };
    for (std::size_t p : {1, 2, 4, 8}) {
        const Matrix coarse = integrate_matrix_function(f, IntervalMeasure{0.0, 1.0, p, 3});
        const Matrix fine = integrate_matrix_function(f, IntervalMeasure{0.0, 1.0, 2 * p, 3});
        CHECK(frobenius_distance(coarse, fine) <= 1e-12);
    }
}

TEST_CASE("parallel evaluation is bit-identical to sequential") {
    const auto f = [](double w) {
        return Matrix{{std::sin(w), Complex(std::cos(3 * w), w)}, {std::exp(-w), 1.0 / (1.0 + w * w)}};
    };
    const IntervalMeasure iv{0.0, 3.0, 16, 7};
    const Matrix seq = integrate_matrix_function(f, iv, Execution::Sequential);
    for (int rep = 0; rep < 5; ++rep) CHECK(integrate_matrix_function(f, iv, Execution::Parallel) == seq);
}

TEST_CASE("integrate_matrix_function examples") {
    const IntervalMeasure unit;
    CHECK(near(integrate_matrix_function([](double) { return Matrix::identity(2); }, unit), Matrix::identity(2),
               1e-15));
    CHECK(near(integrate_matrix_function([](double w) { return w * w * Matrix::identity(2); }, IntervalMeasure{0, 1, 1, 2}),
               (1.0 / 3.0) * Matrix::identity(2), 1e-15));
    CHECK(near(integrate_matrix_function([](double w) { return w * Matrix::identity(2); },
                                         DiscreteMeasure{{{0.0, 1.0}, {1.0, 1.0}}}),
               Matrix::identity(2), 0.0));
}

TEST_CASE("compensated accumulation holds up under cancellation") {
    // Naive left-to-right summation of 1e16, 1, −1e16 repeated loses every 1.
    std::vector<Atom> atoms;
    for (int i = 0; i < 999; ++i) atoms.push_back({static_cast<double>(i), 1.0});
    const Matrix s = integrate_matrix_function(
        [](double w) {
            const int i = static_cast<int>(w) % 3;
            return Matrix{{i == 0 ? 1e16 : (i == 1 ? 1.0 : -1e16)}};
        },
        DiscreteMeasure{atoms});
    CHECK(s(0, 0).real() == 333.0);
}

TEST_CASE("l2_inner_product") {
    const IntervalMeasure unit;
    const auto phi = sample([](double w) { return w * Matrix::identity(2); }, unit);
    CHECK(near(l2_inner_product(phi, phi, unit).matrix(), (1.0 / 3.0) * Matrix::identity(2), 1e-15));

    const auto zero = sample([](double) { return Matrix::zeros(2, 2); }, unit);
    CHECK(l2_inner_product(zero, zero, unit) == AlgebraElement::zero(2));

    // Midpoint-rule oracle for ∫₀¹ w dw.
    double riemann = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) riemann += (i + 0.5) / n / n;
    const auto one = sample([](double) { return Matrix::identity(2); }, unit);
    const auto ip = l2_inner_product(one, phi, unit);
    CHECK(std::abs(ip(0, 0).real() - riemann) <= 1e-9);
    CHECK(near(ip.matrix(), 0.5 * Matrix::identity(2), 1e-15));

    CHECK(is_positive(l2_inner_product(phi, phi, unit)).positive);
}

TEST_CASE("measure errors") {
    auto expect = [](auto&& fn, ErrorCode code) {
        try {
            fn();
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == code);
        }
    };
    expect([] { build_quadrature(IntervalMeasure{1.0, 0.0}); }, ErrorCode::InvalidMeasure);
    expect([] { build_quadrature(IntervalMeasure{0.0, 1.0, 0, 4}); }, ErrorCode::InvalidMeasure);
    expect([] { build_quadrature(DiscreteMeasure{{{0.0, 0.0}}}); }, ErrorCode::InvalidMeasure);
    expect([] { build_quadrature(DiscreteMeasure{}); }, ErrorCode::InvalidMeasure);

    const auto phi = sample([](double w) { return w * Matrix::identity(2); }, IntervalMeasure{0, 1, 2, 2});
    expect([&] { l2_inner_product(phi, phi, IntervalMeasure{}); }, ErrorCode::NodeMismatch);
}
