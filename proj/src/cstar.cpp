#include "cframe/cstar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cframe/error.hpp"

namespace cframe {

namespace {

void require_square(const Matrix& a, const char* what) {
    if (!a.is_square() || a.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " needs a nonempty square matrix, got " + std::to_string(a.rows()) +
                        "x" + std::to_string(a.cols()));
    }
}

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary U = diag(1, e^{-iφ})·[[c, s], [−s, c]] acting on (p, q).
void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex phase_conj = std::conj(apq / mag);
    const double alpha = a(p, p).real();
    const double gamma = a(q, q).real();

    const double theta = (gamma - alpha) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex upp = c;
    const Complex upq = s;
    const Complex uqp = -s * phase_conj;
    const Complex uqq = c * phase_conj;

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * upp + akq * uqp;
        a(k, q) = akp * upq + akq * uqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
        a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = alpha - t * mag;
    a(q, q) = gamma + t * mag;

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * upp + vkq * uqp;
        v(k, q) = vkp * upq + vkq * uqq;
    }
}

// Jacobi on the Hermitian part of `input`; no precondition check.
EigenDecomposition jacobi_eig(const Matrix& input) {
    Matrix a = input.hermitian_part();
    const std::size_t n = a.rows();
    Matrix v = Matrix::identity(n);
    const double threshold = 1e-13 * a.frobenius_norm();

    int sweep = 0;
    for (;; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) break;
        if (sweep == kMaxJacobiSweeps) {
            throw Error(ErrorCode::NoConvergence,
                        "Jacobi did not converge in " + std::to_string(kMaxJacobiSweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.sweeps = sweep;
    out.eigenvalues.reserve(n);
    out.basis = Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        out.eigenvalues.push_back(a(order[col], order[col]).real());
        for (std::size_t k = 0; k < n; ++k) out.basis(k, col) = v(k, order[col]);
    }
    return out;
}

Matrix spectral_map(const EigenDecomposition& eig, const std::vector<double>& values) {
    const std::size_t n = values.size();
    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k) s += eig.basis(i, k) * values[k] * std::conj(eig.basis(j, k));
            r(i, j) = s;
        }
    }
    return r.hermitian_part();
}

}  // namespace

AlgebraElement::AlgebraElement(Matrix m) : m_(std::move(m)) { require_square(m_, "AlgebraElement"); }

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.matrix() + b.matrix());
}
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.matrix() - b.matrix());
}
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.matrix() * b.matrix());
}
AlgebraElement operator*(Complex s, const AlgebraElement& a) { return AlgebraElement(s * a.matrix()); }

AlgebraElement adjoint(const AlgebraElement& a) { return AlgebraElement(a.matrix().adjoint()); }

bool is_hermitian(const Matrix& a, double tol) {
    if (!a.is_square()) return false;
    return frobenius_distance(a, a.adjoint()) <= tol * a.frobenius_norm();
}

EigenDecomposition hermitian_eig(const Matrix& a, const Tolerances& tol) {
    require_square(a, "hermitian_eig");
    if (!is_hermitian(a, tol.herm)) {
        throw Error(ErrorCode::NotHermitian, "||a - a*||_F = " + std::to_string(frobenius_distance(a, a.adjoint())) +
                                                 " exceeds tolerance");
    }
    return jacobi_eig(a);
}

EigenDecomposition hermitian_eig(const AlgebraElement& a, const Tolerances& tol) {
    return hermitian_eig(a.matrix(), tol);
}

PositivityWitness is_positive(const AlgebraElement& a, double tol) {
    PositivityWitness w;
    if (!is_hermitian(a.matrix(), tol)) {
        w.lambda_min = std::numeric_limits<double>::quiet_NaN();
        w.reason = "not Hermitian";
        return w;
    }
    w.lambda_min = jacobi_eig(a.matrix()).min();
    w.positive = w.lambda_min >= -tol;
    if (!w.positive) w.reason = "lambda_min = " + std::to_string(w.lambda_min);
    return w;
}

double exponent(PsdPower p) {
    switch (p) {
        case PsdPower::Sqrt: return 0.5;
        case PsdPower::InvSqrt: return -0.5;
        case PsdPower::Inverse: return -1.0;
    }
    return 0.0;
}

Matrix psd_power(const Matrix& a, PsdPower p, double tol) {
    const EigenDecomposition eig = hermitian_eig(a);
    if (eig.min() < -tol) {
        throw Error(ErrorCode::NotPositive, "lambda_min = " + std::to_string(eig.min()));
    }
    if (p != PsdPower::Sqrt && eig.min() <= tol) {
        throw Error(ErrorCode::SingularForNegativePower, "lambda_min = " + std::to_string(eig.min()));
    }
    std::vector<double> values;
    values.reserve(eig.eigenvalues.size());
    for (double lambda : eig.eigenvalues) {
        const double l = std::max(lambda, 0.0);
        switch (p) {
            case PsdPower::Sqrt: values.push_back(std::sqrt(l)); break;
            case PsdPower::InvSqrt: values.push_back(1.0 / std::sqrt(l)); break;
            case PsdPower::Inverse: values.push_back(1.0 / l); break;
        }
    }
    return spectral_map(eig, values);
}

AlgebraElement psd_power(const AlgebraElement& a, PsdPower p, double tol) {
    return AlgebraElement(psd_power(a.matrix(), p, tol));
}

LoewnerWitness loewner_leq(const Matrix& a, const Matrix& b, double tol) {
    require_square(a, "loewner_leq");
    require_same_shape(a, b, "loewner_leq");
    if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) {
        throw Error(ErrorCode::NotHermitian, "loewner_leq operands must be Hermitian");
    }
    LoewnerWitness w;
    w.margin = jacobi_eig(b - a).min();
    w.holds = w.margin >= -tol;
    return w;
}

LoewnerWitness loewner_leq(const AlgebraElement& a, const AlgebraElement& b, double tol) {
    return loewner_leq(a.matrix(), b.matrix(), tol);
}

double operator_norm(const Matrix& a) {
    if (a.empty()) return 0.0;
    if (a.is_square() && is_hermitian(a, 1e-14)) {
        const EigenDecomposition eig = jacobi_eig(a);
        return std::max(std::abs(eig.min()), std::abs(eig.max()));
    }
    const Matrix gram = a.cols() <= a.rows() ? a.adjoint() * a : a * a.adjoint();
    return std::sqrt(std::max(0.0, jacobi_eig(gram).max()));
}

double operator_norm(const AlgebraElement& a) { return operator_norm(a.matrix()); }

double smallest_singular_value(const Matrix& a) {
    if (a.empty()) return 0.0;
    return std::sqrt(std::max(0.0, jacobi_eig(a.adjoint() * a).min()));
}

AlgebraElement abs_element(const AlgebraElement& a, double tol) {
    return AlgebraElement(psd_power((a.matrix().adjoint() * a.matrix()).hermitian_part(), PsdPower::Sqrt, tol));
}

bool is_invertible(const AlgebraElement& a, double tol) { return smallest_singular_value(a.matrix()) > tol; }

}  // namespace cframe
