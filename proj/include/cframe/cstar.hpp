#pragma once

// Dense *-algebra kernel over M_n(C): involution, Hermitian eigenanalysis,
// positivity, PSD functional calculus, Loewner order and the C*-norm.

#include <string>
#include <vector>

#include "cframe/matrix.hpp"

namespace cframe {

/// Element of the algebra M_n(C). Always square, n >= 1.
class AlgebraElement {
public:
    explicit AlgebraElement(Matrix m);

    static AlgebraElement identity(std::size_t n) { return AlgebraElement(Matrix::identity(n)); }
    static AlgebraElement zero(std::size_t n) { return AlgebraElement(Matrix::zeros(n, n)); }
    static AlgebraElement scalar(std::size_t n, Complex s) { return AlgebraElement(s * Matrix::identity(n)); }

    std::size_t dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

private:
    Matrix m_;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(Complex s, const AlgebraElement& a);

struct Tolerances {
    double herm = 1e-12;
    double eig = 1e-10;
    double psd_clamp = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};
inline constexpr int kMaxJacobiSweeps = 100;

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    Matrix basis;                     // unitary, column j pairs with eigenvalues[j]
    int sweeps = 0;

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

AlgebraElement adjoint(const AlgebraElement& a);

/// Relative Hermitian defect ||a − a*||_F <= tol·||a||_F.
bool is_hermitian(const Matrix& a, double tol);

/// Cyclic Jacobi. Throws NotHermitian or NoConvergence.
EigenDecomposition hermitian_eig(const Matrix& a, const Tolerances& tol = kDefaultTolerances);
EigenDecomposition hermitian_eig(const AlgebraElement& a, const Tolerances& tol = kDefaultTolerances);

struct PositivityWitness {
    bool positive = false;
    double lambda_min = 0.0;
    std::string reason;  // empty when positive

    explicit operator bool() const noexcept { return positive; }
};

PositivityWitness is_positive(const AlgebraElement& a, double tol = 1e-10);

enum class PsdPower { Sqrt, InvSqrt, Inverse };

double exponent(PsdPower p);

/// U·diag(λ^p)·U*. Eigenvalues in [−tol, 0) are clamped to zero.
/// Throws NotPositive, or SingularForNegativePower when p < 0 and λ_min <= tol.
Matrix psd_power(const Matrix& a, PsdPower p, double tol = 1e-10);
AlgebraElement psd_power(const AlgebraElement& a, PsdPower p, double tol = 1e-10);

struct LoewnerWitness {
    bool holds = false;
    double margin = 0.0;  // λ_min(b − a)

    explicit operator bool() const noexcept { return holds; }
};

/// a ⪯ b. Throws NotHermitian if either side is not Hermitian within tol.
LoewnerWitness loewner_leq(const Matrix& a, const Matrix& b, double tol = 1e-10);
LoewnerWitness loewner_leq(const AlgebraElement& a, const AlgebraElement& b, double tol = 1e-10);

/// Largest singular value. Accepts rectangular input.
double operator_norm(const Matrix& a);
double operator_norm(const AlgebraElement& a);

/// Smallest singular value; zero for singular input. Rectangular input uses a*a.
double smallest_singular_value(const Matrix& a);

/// |a| = (a*a)^{1/2}.
AlgebraElement abs_element(const AlgebraElement& a, double tol = 1e-10);

/// Invertible in the algebra: λ_min(|a|) > tol.
bool is_invertible(const AlgebraElement& a, double tol = 1e-10);

}  // namespace cframe
