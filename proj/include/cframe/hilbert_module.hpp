#pragma once

// The Hilbert module H = M_{n×m}(C) over A = M_n(C): left action a·x,
// inner product <x, y> = x·y*, and adjointable maps x ↦ x·M.

#include "cframe/cstar.hpp"
#include "cframe/matrix.hpp"

namespace cframe {

class ModuleVector {
public:
    explicit ModuleVector(Matrix m);

    static ModuleVector zero(std::size_t n, std::size_t m) { return ModuleVector(Matrix::zeros(n, m)); }

    std::size_t rows() const noexcept { return m_.rows(); }
    std::size_t cols() const noexcept { return m_.cols(); }
    const Matrix& matrix() const noexcept { return m_; }

    friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

private:
    Matrix m_;
};

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y);
ModuleVector operator-(const ModuleVector& x, const ModuleVector& y);
/// Left module action.
ModuleVector operator*(const AlgebraElement& a, const ModuleVector& x);
ModuleVector operator*(Complex s, const ModuleVector& x);

/// <x, y> = x·y*.
AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y);

/// |x| = <x, x>^{1/2}.
AlgebraElement vector_abs(const ModuleVector& x, double tol = 1e-10);

/// ||x|| = ||<x, x>||^{1/2}, the largest singular value of x.
double vector_norm(const ModuleVector& x);

/// Right multiplication x ↦ x·M from M_{n×m} to M_{n×k}.
class AdjointableMap {
public:
    explicit AdjointableMap(Matrix m);

    static AdjointableMap identity(std::size_t m) { return AdjointableMap(Matrix::identity(m)); }

    std::size_t source_cols() const noexcept { return m_.rows(); }
    std::size_t target_cols() const noexcept { return m_.cols(); }
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

inline constexpr double kSurjectivityTol = 1e-10;

ModuleVector map_apply(const AdjointableMap& v, const ModuleVector& x);
ModuleVector map_adjoint_apply(const AdjointableMap& v, const ModuleVector& y);

/// λ_min(M*M) = ||(VV*)^{-1}||^{-1}; zero when V is not surjective.
double map_surjectivity_gap(const AdjointableMap& v);
bool is_surjective(const AdjointableMap& v, double tol = kSurjectivityTol);

/// ||V|| = largest singular value of M.
double map_norm(const AdjointableMap& v);

}  // namespace cframe
