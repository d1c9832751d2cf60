#pragma once

// Perturbation stability: for a frame F and a family G, compare
//   ||x·R·x*||  against  min(||x·P·x*||, ||x·Q·x*||)
// with P, Q, R the Gram matrices of F, G and F − G.

#include <cstdint>
#include <optional>

#include "cframe/frames.hpp"

namespace cframe {

struct PerturbationGrams {
    GramMatrix p;  // F
    GramMatrix q;  // G
    GramMatrix r;  // F − G
    std::size_t module_rows = 1;  // n, the row count of module vectors
};

/// Throws DimensionMismatch, FormMismatch.
PerturbationGrams perturbation_grams(const FrameFamily& f, const FrameFamily& g, const MeasureSpace& ms);

/// M = max(λ_max(P^{-1/2} R P^{-1/2}), λ_max(Q^{-1/2} R Q^{-1/2})).
/// R ⪯ M·P and R ⪯ M·Q, hence the norm inequality holds for every x.
/// Throws NotAFrame when P or Q is not invertible at tol.
double loewner_stability_constant(const PerturbationGrams& pg, double tol = kFrameTol);

/// min((√(B/C) + 1)², (√(D/A) + 1)²) for F-bounds (A, B) and G-bounds (C, D).
/// Throws NonPositiveBound.
double theorem_forward_constant(double a, double b, double c, double d);

/// min((||B||·||C⁻¹|| + 1)², (||D||·||A⁻¹|| + 1)²). Throws NotInvertible.
double theorem_forward_constant_star(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c,
                                     const AlgebraElement& d, double tol = kFrameTol);

/// (A/(1+√M)², B·(1+√M)²). Throws NonPositiveBound.
FrameBounds derived_bounds_from_M(double a, double b, double m);

inline constexpr double kDegenerateDenominator = 1e-14;
inline constexpr std::size_t kMaxResamplesPerSample = 16;

struct InequalityCheck {
    double max_ratio = 0.0;
    bool passed = true;
    std::optional<ModuleVector> witness;  // argmax sample
    std::size_t samples = 0;
    std::size_t resamples = 0;
};

/// Samples unit-Frobenius x with sample k drawn from sub-generator k of `seed`.
/// Degenerate draws are redrawn from the same stream; throws DegenerateSample
/// once a sample exhausts its redraw budget.
InequalityCheck randomized_inequality_check(const PerturbationGrams& pg, double m,
                                            std::size_t samples, std::uint64_t seed, double tol = 1e-9);

struct StabilityReport {
    double m_certified = 0.0;
    double m_theorem_forward = 0.0;
    FrameBounds f_bounds;
    FrameBounds g_bounds;
    FrameBounds derived_bounds_for_g;
    double sampled_max_ratio = 0.0;
    std::size_t samples = 0;
    bool derived_bounds_hold = false;
};

/// Throws NotAFrame unless both F and G are frames.
StabilityReport stability_report(const FrameFamily& f, const FrameFamily& g, const MeasureSpace& ms,
                                 std::size_t samples, std::uint64_t seed, double tol = kFrameTol);

}  // namespace cframe
