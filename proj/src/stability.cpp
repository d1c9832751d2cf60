#include "cframe/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cframe/error.hpp"
#include "cframe/random.hpp"

namespace cframe {

namespace {

double pencil_max(const Matrix& base, const Matrix& r, double tol) {
    const double lambda_min = hermitian_eig(base).min();
    if (lambda_min <= tol) throw Error(ErrorCode::NotAFrame, "lambda_min = " + std::to_string(lambda_min));
    const Matrix w = psd_power(base, PsdPower::InvSqrt, tol);
    return hermitian_eig((w * r * w).hermitian_part()).max();
}

double psd_norm(const Matrix& x, const Matrix& g) {
    return std::max(0.0, hermitian_eig((x * g * x.adjoint()).hermitian_part()).max());
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::NonPositiveBound, std::string(name) + " must be positive, got " + std::to_string(v));
    }
}

}  // namespace

PerturbationGrams perturbation_grams(const FrameFamily& f, const FrameFamily& g, const MeasureSpace& ms) {
    const FrameFamily diff = difference(f, g);
    return PerturbationGrams{gram(f, ms), gram(g, ms), gram(diff, ms), f.rows()};
}

double loewner_stability_constant(const PerturbationGrams& pg, double tol) {
    const double mp = pencil_max(pg.p.matrix(), pg.r.matrix(), tol);
    const double mq = pencil_max(pg.q.matrix(), pg.r.matrix(), tol);
    return std::max({0.0, mp, mq});
}

double theorem_forward_constant(double a, double b, double c, double d) {
    require_positive(a, "A");
    require_positive(b, "B");
    require_positive(c, "C");
    require_positive(d, "D");
    const double first = std::sqrt(b / c) + 1.0;
    const double second = std::sqrt(d / a) + 1.0;
    return std::min(first * first, second * second);
}

double theorem_forward_constant_star(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c,
                                     const AlgebraElement& d, double tol) {
    // ||x⁻¹|| = 1/σ_min(x).
    auto inverse_norm = [tol](const AlgebraElement& x, const char* name) {
        const double smin = smallest_singular_value(x.matrix());
        if (smin <= tol) throw Error(ErrorCode::NotInvertible, std::string(name) + " is not invertible");
        return 1.0 / smin;
    };
    for (const auto* x : {&b, &d}) {
        if (!is_invertible(*x, tol)) throw Error(ErrorCode::NotInvertible, "upper star bound is not invertible");
    }
    const double first = operator_norm(b) * inverse_norm(c, "C") + 1.0;
    const double second = operator_norm(d) * inverse_norm(a, "A") + 1.0;
    return std::min(first * first, second * second);
}

FrameBounds derived_bounds_from_M(double a, double b, double m) {
    require_positive(a, "A");
    require_positive(b, "B");
    if (!(m >= 0.0) || !std::isfinite(m)) {
        throw Error(ErrorCode::NonPositiveBound, "M must be nonnegative, got " + std::to_string(m));
    }
    const double factor = (1.0 + std::sqrt(m)) * (1.0 + std::sqrt(m));
    return FrameBounds::make(a / factor, b * factor);
}

InequalityCheck randomized_inequality_check(const PerturbationGrams& pg, double m, std::size_t samples,
                                            std::uint64_t seed, double tol) {
    if (samples < 1) throw Error(ErrorCode::ValidationError, "randomized check needs at least one sample");
    const std::size_t n = pg.module_rows;
    const std::size_t cols = pg.p.dim();
    InequalityCheck out;
    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(derive_seed(seed, s));
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt == kMaxResamplesPerSample) {
                throw Error(ErrorCode::DegenerateSample,
                            "sample " + std::to_string(s) + " stayed degenerate after " +
                                std::to_string(kMaxResamplesPerSample) + " draws");
            }
            const Matrix x = unit_random_matrix(rng, n, cols);
            const double denom = std::min(psd_norm(x, pg.p.matrix()), psd_norm(x, pg.q.matrix()));
            if (denom < kDegenerateDenominator) {
                ++out.resamples;
                continue;
            }
            const double ratio = psd_norm(x, pg.r.matrix()) / denom;
            if (ratio > out.max_ratio || !out.witness) {
                out.max_ratio = ratio;
                out.witness = ModuleVector(x);
            }
            break;
        }
        ++out.samples;
    }
    out.passed = out.max_ratio <= m + tol;
    return out;
}

StabilityReport stability_report(const FrameFamily& f, const FrameFamily& g, const MeasureSpace& ms,
                                 std::size_t samples, std::uint64_t seed, double tol) {
    const PerturbationGrams pg = perturbation_grams(f, g, ms);
    StabilityReport out{};
    out.m_certified = loewner_stability_constant(pg, tol);
    out.f_bounds = optimal_scalar_bounds(pg.p, tol).bounds();
    out.g_bounds = optimal_scalar_bounds(pg.q, tol).bounds();
    out.m_theorem_forward =
        theorem_forward_constant(out.f_bounds.lower, out.f_bounds.upper, out.g_bounds.lower, out.g_bounds.upper);
    out.derived_bounds_for_g = derived_bounds_from_M(out.f_bounds.lower, out.f_bounds.upper, out.m_certified);
    constexpr double slack = 1e-9;
    out.derived_bounds_hold = out.g_bounds.lower >= out.derived_bounds_for_g.lower - slack &&
                              out.g_bounds.upper <= out.derived_bounds_for_g.upper + slack;
    const InequalityCheck check = randomized_inequality_check(pg, out.m_certified, samples, seed);
    out.sampled_max_ratio = check.max_ratio;
    out.samples = check.samples;
    return out;
}

}  // namespace cframe
