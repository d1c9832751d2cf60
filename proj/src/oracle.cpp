#include "cframe/oracle.hpp"

#include <cmath>

#include "cframe/error.hpp"
#include "cframe/random.hpp"

namespace cframe::oracle {

namespace {

// Plain power sum, deliberately not Horner.
Matrix evaluate_power_sum(const FrameFamily& f, double w) {
    Matrix acc = Matrix::zeros(f.rows(), f.cols());
    double power = 1.0;
    for (const auto& c : f.data()) {
        acc += power * c;
        power *= w;
    }
    return acc;
}

}  // namespace

GramMatrix riemann_gram(const FrameFamily& f, double a, double b, const RiemannRule& rule) {
    if (!(a < b)) throw Error(ErrorCode::InvalidMeasure, "riemann_gram needs a < b");
    if (rule.subintervals < 1) throw Error(ErrorCode::InvalidMeasure, "riemann_gram needs N >= 1");
    if (f.form() != FamilyForm::Polynomial) throw Error(ErrorCode::FormMismatch, "riemann_gram needs a polynomial");
    const double h = (b - a) / static_cast<double>(rule.subintervals);
    Matrix sum = Matrix::zeros(f.cols(), f.cols());
    for (std::size_t i = 0; i < rule.subintervals; ++i) {
        const Matrix fw = evaluate_power_sum(f, a + (static_cast<double>(i) + 0.5) * h);
        sum += fw.adjoint() * fw;
    }
    return GramMatrix((h * sum).hermitian_part());
}

double monomial_integral(unsigned k, double a, double b) {
    return (std::pow(b, k + 1) - std::pow(a, k + 1)) / static_cast<double>(k + 1);
}

Matrix exact_polynomial_gram(const FrameFamily& f, double a, double b) {
    const auto& c = f.data();
    Matrix g = Matrix::zeros(f.cols(), f.cols());
    for (std::size_t j = 0; j < c.size(); ++j)
        for (std::size_t k = 0; k < c.size(); ++k)
            g += monomial_integral(static_cast<unsigned>(j + k), a, b) * (c[j].adjoint() * c[k]);
    return g;
}

FrameFamily random_frame(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t degree, double offset) {
    Rng rng(seed);
    std::vector<Matrix> coefficients;
    coefficients.reserve(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) coefficients.push_back(gaussian_matrix(rng, n, m));
    coefficients.front() += offset * Matrix::identity(n, m);
    return FrameFamily::polynomial(std::move(coefficients));
}

ModuleVector random_vector(std::uint64_t seed, std::size_t n, std::size_t m) {
    Rng rng(seed);
    return ModuleVector(unit_random_matrix(rng, n, m));
}

AdjointableMap random_map(std::uint64_t seed, std::size_t m, std::size_t k) {
    Rng rng(seed);
    return AdjointableMap(gaussian_matrix(rng, m, k));
}

InstanceShape random_shape(std::uint64_t seed, std::size_t max_dim, std::size_t max_degree) {
    Rng rng(splitmix64(seed));
    InstanceShape s{};
    s.n = rng.uniform_index(1, max_dim);
    s.m = rng.uniform_index(1, max_dim);
    s.degree = rng.uniform_index(0, max_degree);
    return s;
}

}  // namespace cframe::oracle
