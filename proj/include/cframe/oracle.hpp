#pragma once

// Reference computations for tests: brute-force quadrature and seeded instance
// generators. Nothing in the engine depends on this header.

#include <cstdint>

#include "cframe/frames.hpp"
#include "cframe/hilbert_module.hpp"

namespace cframe::oracle {

struct RiemannRule {
    std::size_t subintervals = 100000;
};

/// Midpoint rule for ∫_a^b F_w*·F_w dw. Polynomial families only.
/// Throws InvalidMeasure for a >= b, FormMismatch for tabulated families.
GramMatrix riemann_gram(const FrameFamily& f, double a, double b, const RiemannRule& rule = {});

/// Closed form Σ_{j,k} C_j*·C_k·(b^{j+k+1} − a^{j+k+1})/(j+k+1).
Matrix exact_polynomial_gram(const FrameFamily& f, double a, double b);

/// ∫_a^b w^k dw.
double monomial_integral(unsigned k, double a, double b);

/// Complex Gaussian coefficients C_0..C_degree, with offset·I added to C_0.
FrameFamily random_frame(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t degree, double offset);

/// Complex Gaussian n×m vector of unit Frobenius norm.
ModuleVector random_vector(std::uint64_t seed, std::size_t n, std::size_t m);

/// Complex Gaussian m×k matrix; surjective almost surely when k <= m.
AdjointableMap random_map(std::uint64_t seed, std::size_t m, std::size_t k);

/// Random shapes n, m in [1, max_dim] and degree in [0, max_degree].
struct InstanceShape {
    std::size_t n;
    std::size_t m;
    std::size_t degree;
};
InstanceShape random_shape(std::uint64_t seed, std::size_t max_dim, std::size_t max_degree);

}  // namespace cframe::oracle
