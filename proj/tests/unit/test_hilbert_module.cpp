#include "doctest.h"

#include "cframe/error.hpp"
#include "cframe/hilbert_module.hpp"
#include "cframe/oracle.hpp"
#include "test_support.hpp"

using namespace cframe;
using cframe::test::near;

namespace {
const Complex I{0.0, 1.0};
ModuleVector vec(Matrix m) { return ModuleVector(std::move(m)); }
}  // namespace

TEST_CASE("inner_product") {
    CHECK(inner_product(vec(Matrix::identity(2)), vec(Matrix::identity(2))) == AlgebraElement::identity(2));

    const Matrix t{{1.0 + I, 2.0}, {-1.0, 0.5 * I}};
    const double w = 0.3;
    const auto tf = inner_product(vec(t), vec(w * Matrix::identity(2)));
    CHECK(near(tf.matrix(), w * t, 1e-16));

    CHECK(inner_product(vec({{1, 2}, {0, 0}}), vec({{1, 2}, {0, 0}})).matrix() == Matrix{{5, 0}, {0, 0}});

    CHECK_THROWS_AS(inner_product(vec(Matrix(2, 2)), vec(Matrix(2, 3))), Error);
}

TEST_CASE("inner product axioms") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto x = oracle::random_vector(seed, 3, 4);
        const auto y = oracle::random_vector(seed + 1000, 3, 4);
        const auto z = oracle::random_vector(seed + 2000, 3, 4);
        Rng rng(seed);
        const AlgebraElement a(gaussian_matrix(rng, 3, 3));
        // <x, y>* = <y, x>
        CHECK(near(inner_product(x, y).matrix().adjoint(), inner_product(y, x).matrix(), 1e-15));
        // <a·x + y, z> = a<x, z> + <y, z>
        const auto lhs = inner_product(a * x + y, z);
        const auto rhs = a * inner_product(x, z) + inner_product(y, z);
        CHECK(near(lhs.matrix(), rhs.matrix(), 1e-12));
        CHECK(is_positive(inner_product(x, x), 1e-12).positive);
    }
    CHECK(inner_product(ModuleVector::zero(2, 3), ModuleVector::zero(2, 3)) == AlgebraElement::zero(2));
}

TEST_CASE("vector_abs and vector_norm") {
    CHECK(vector_abs(ModuleVector::zero(2, 2)) == AlgebraElement::zero(2));
    CHECK(near(vector_abs(vec(Matrix::identity(2))).matrix(), Matrix::identity(2), 1e-15));
    CHECK(near(vector_abs(vec({{3, 4}, {0, 0}})).matrix(), Matrix::diagonal({5.0, 0.0}), 1e-14));

    CHECK(vector_norm(vec(Matrix::identity(2))) == doctest::Approx(1.0));
    CHECK(vector_norm(ModuleVector::zero(2, 2)) == 0.0);
    CHECK(vector_norm(vec({{3, 4}, {0, 0}})) == doctest::Approx(5.0));
}

TEST_CASE("map_apply and map_adjoint_apply") {
    const auto x = oracle::random_vector(1, 2, 2);
    CHECK(map_apply(AdjointableMap::identity(2), x) == x);
    CHECK(map_apply(AdjointableMap(Matrix{{1}, {0}}), vec(Matrix::identity(2))).matrix() == Matrix{{1}, {0}});
    CHECK(map_apply(AdjointableMap(Matrix::diagonal({2.0, 3.0})), vec(Matrix::identity(2))).matrix() ==
          Matrix::diagonal({2.0, 3.0}));

    CHECK(map_adjoint_apply(AdjointableMap::identity(2), x) == x);
    CHECK(map_adjoint_apply(AdjointableMap(Matrix{{1}, {0}}), vec(Matrix{{1}, {0}})).matrix() ==
          Matrix{{1, 0}, {0, 0}});
    CHECK(near(map_adjoint_apply(AdjointableMap(I * Matrix::identity(2)), x).matrix(), -I * x.matrix(), 0.0));

    CHECK_THROWS_AS(map_apply(AdjointableMap(Matrix(3, 1)), x), Error);
    CHECK_THROWS_AS(map_adjoint_apply(AdjointableMap(Matrix(2, 3)), x), Error);
}

TEST_CASE("map_surjectivity_gap") {
    CHECK(map_surjectivity_gap(AdjointableMap::identity(2)) == doctest::Approx(1.0));
    CHECK(map_surjectivity_gap(AdjointableMap(Matrix{{1}, {0}})) == doctest::Approx(1.0));
    CHECK(map_surjectivity_gap(AdjointableMap(Matrix::diagonal({2.0, 3.0}))) == doctest::Approx(4.0));
    CHECK_FALSE(is_surjective(AdjointableMap(Matrix{{1, 1}, {1, 1}})));
    CHECK(is_surjective(AdjointableMap(Matrix::diagonal({2.0, 3.0}))));
}

TEST_CASE("adjoint identity and module linearity of maps") {
    std::uint64_t seed = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto shape = oracle::random_shape(rep, 6, 0);
        const std::size_t k = 1 + rep % 6;
        const AdjointableMap v = oracle::random_map(++seed, shape.m, k);
        const auto x = oracle::random_vector(++seed, shape.n, shape.m);
        const auto y = oracle::random_vector(++seed, shape.n, k);
        const auto lhs = inner_product(map_apply(v, x), y);
        const auto rhs = inner_product(x, map_adjoint_apply(v, y));
        CHECK(near(lhs.matrix(), rhs.matrix(), 1e-10));

        Rng rng(seed);
        const AlgebraElement a(gaussian_matrix(rng, shape.n, shape.n));
        CHECK(near(map_apply(v, a * x).matrix(), (a * map_apply(v, x)).matrix(), 1e-12));
    }
}

TEST_CASE("adjointable maps are bounded by their norm") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto shape = oracle::random_shape(seed, 5, 0);
        const AdjointableMap v = oracle::random_map(seed + 17, shape.m, 1 + seed % 5);
        const auto x = oracle::random_vector(seed + 31, shape.n, shape.m);
        const double norm = map_norm(v);
        CHECK(vector_norm(map_apply(v, x)) <= norm * vector_norm(x) + 1e-10);
        const auto vx = map_apply(v, x);
        const auto lhs = inner_product(vx, vx);
        const auto rhs = (norm * norm) * inner_product(x, x);
        CHECK(loewner_leq(lhs.matrix().hermitian_part(), rhs.matrix().hermitian_part(), 1e-9).holds);
    }
}
