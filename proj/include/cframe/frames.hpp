#pragma once

// Frames F: Ω → H over M_n(C)-modules, with scalar or algebra-valued bounds.
//
// In the realization H = M_{n×m}(C) with <x, y> = x·y*, the frame operator is
// right multiplication by the Gram matrix G = ∫ F_w*·F_w dμ(w), so that
//   ∫ <x, F_w><F_w, x> dμ = x·G·x*,
// and every operator-level statement about S reduces to one about G.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cframe/cstar.hpp"
#include "cframe/hilbert_module.hpp"
#include "cframe/measure.hpp"

namespace cframe {

enum class FamilyForm { Polynomial, Tabulated };

/// w ↦ F_w ∈ M_{n×m}(C), either Σ_k C_k·w^k or one tabulated matrix per atom.
class FrameFamily {
public:
    static FrameFamily polynomial(std::vector<Matrix> coefficients);
    static FrameFamily tabulated(std::vector<Matrix> values);

    FamilyForm form() const noexcept { return form_; }
    std::size_t rows() const noexcept { return data_.front().rows(); }
    std::size_t cols() const noexcept { return data_.front().cols(); }
    /// Polynomial degree; for tabulated families, the number of entries minus one.
    std::size_t degree() const noexcept { return data_.size() - 1; }
    /// Coefficients C_0..C_d or tabulated values F_0..F_{N−1}.
    const std::vector<Matrix>& data() const noexcept { return data_; }

    /// Horner evaluation; polynomial families only.
    Matrix evaluate(double w) const;
    /// F at each node; tabulated families need exactly one node per entry.
    std::vector<Matrix> sample(const std::vector<QuadratureNode>& nodes) const;

    bool is_diagonal(double tol = 0.0) const;

    /// Coefficientwise (polynomial) or pointwise (tabulated) F_w·M.
    FrameFamily right_multiply(const Matrix& m) const;
    FrameFamily scaled(Complex s) const;

    friend bool operator==(const FrameFamily&, const FrameFamily&) = default;

private:
    FrameFamily(FamilyForm form, std::vector<Matrix> data);

    FamilyForm form_;
    std::vector<Matrix> data_;
};

/// F − G, coefficientwise or pointwise. Throws FormMismatch or DimensionMismatch.
FrameFamily difference(const FrameFamily& f, const FrameFamily& g);

inline constexpr double kFrameTol = 1e-10;      // NotAFrame threshold on λ_min(G)
inline constexpr double kReportTol = 1e-8;      // tight / Parseval verdicts
inline constexpr double kGramPositivityFloor = -1e-8;

/// G = ∫ F_w*·F_w dμ; Sx = x·G.
class GramMatrix {
public:
    /// Throws NotHermitian or NotPositive (λ_min < −1e-8).
    explicit GramMatrix(Matrix g);

    std::size_t dim() const noexcept { return g_.rows(); }
    const Matrix& matrix() const noexcept { return g_; }
    AlgebraElement element() const { return AlgebraElement(g_); }

private:
    Matrix g_;
};

GramMatrix gram(const FrameFamily& f, const MeasureSpace& ms, Execution exec = Execution::Sequential);

/// ∫ F̃_w*·F_w dμ for two families on the same measure.
Matrix cross_gram(const FrameFamily& left, const FrameFamily& right, const MeasureSpace& ms);

struct FrameBounds {
    double lower;
    double upper;

    /// Throws NonPositiveBound unless 0 < lower <= upper.
    static FrameBounds make(double lower, double upper);
};

/// |A|, |B| invertible at tolerance 1e-10.
class StarFrameBounds {
public:
    /// Throws NotInvertible.
    StarFrameBounds(AlgebraElement lower, AlgebraElement upper, double tol = kFrameTol);

    const AlgebraElement& lower() const noexcept { return lower_; }
    const AlgebraElement& upper() const noexcept { return upper_; }

private:
    AlgebraElement lower_;
    AlgebraElement upper_;
};

using AnyBounds = std::variant<FrameBounds, StarFrameBounds>;

ModuleVector frame_operator_apply(const GramMatrix& g, const ModuleVector& x);

/// T_F x: w_i ↦ <x, F_{w_i}> = x·F_{w_i}*.
SampledFunction analysis(const FrameFamily& f, const MeasureSpace& ms, const ModuleVector& x);

/// T_F* φ = Σ weight_i·φ_i·F_{w_i}. Throws NodeMismatch.
ModuleVector synthesis(const FrameFamily& f, const MeasureSpace& ms, const SampledFunction& phi);

struct OptimalBounds {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    bool is_frame = false;

    /// Throws NotAFrame when !is_frame.
    FrameBounds bounds() const;
};

/// (λ_min(G), λ_max(G)), the tightest constants in A<x,x> ⪯ x·G·x* ⪯ B<x,x>.
OptimalBounds optimal_scalar_bounds(const GramMatrix& g, double tol = kFrameTol);

struct ScalarBoundsVerdict {
    bool accepted = false;
    bool lower_holds = false;
    bool upper_holds = false;
    double lower_margin = 0.0;  // λ_min(G − A·I)
    double upper_margin = 0.0;  // λ_min(B·I − G)
};

ScalarBoundsVerdict verify_scalar_bounds(const GramMatrix& g, double lower, double upper, double tol = kFrameTol);

enum class StarMode { Scalar, Diagonal, Randomized };

struct StarCheckOptions {
    StarMode mode = StarMode::Randomized;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double tol = kFrameTol;
    bool diagonal_algebra = false;
};

enum class StarStatus { Certified, Falsified, NotFalsified };

struct StarBoundsResult {
    StarStatus status = StarStatus::NotFalsified;
    bool lower_holds = true;
    bool upper_holds = true;
    double lower_margin = 0.0;  // smallest observed λ_min on the lower side
    double upper_margin = 0.0;
    std::optional<ModuleVector> witness;
    std::size_t samples_drawn = 0;
};

/// A<x,x>A* ⪯ ∫<x,F_w><F_w,x>dμ ⪯ B<x,x>B*.
/// Scalar and diagonal modes are exact; randomized mode can only falsify.
/// Throws ModeUnavailable when the structural preconditions of a mode fail.
StarBoundsResult verify_star_bounds(const FrameFamily& f, const MeasureSpace& ms, const AlgebraElement& lower,
                                    const AlgebraElement& upper, const StarCheckOptions& options);
StarBoundsResult verify_star_bounds(const FrameFamily& f, const GramMatrix& g, const AlgebraElement& lower,
                                    const AlgebraElement& upper, const StarCheckOptions& options);

/// F_w·G^{−1/2}, a Parseval frame. Throws NotAFrame.
FrameFamily canonical_parseval(const FrameFamily& f, const GramMatrix& g, double tol = kFrameTol);

/// F_w·G^{−1}. Throws NotAFrame.
FrameFamily canonical_dual(const FrameFamily& f, const GramMatrix& g, double tol = kFrameTol);

/// x = ∫ <x, F_w> F̃_w dμ with the canonical dual F̃.
ModuleVector reconstruct(const ModuleVector& x, const FrameFamily& f, const MeasureSpace& ms, const GramMatrix& g);

struct ImageFrame {
    FrameFamily family;
    GramMatrix gram;         // M*·G·M
    AnyBounds predicted;     // scalar: (A·λ_min(M*M), B·||V||²); star: (√λ_min(M*M)·A, ||V||·B)
};

/// V F for a surjective V. Throws NotSurjective or DimensionMismatch.
ImageFrame image_frame(const FrameFamily& f, const GramMatrix& g, const AnyBounds& bounds, const AdjointableMap& v,
                       double tol = kSurjectivityTol);

struct FrameReport {
    GramMatrix gram;
    std::vector<double> spectrum;
    std::optional<FrameBounds> optimal_bounds;
    bool is_frame = false;
    bool is_tight = false;
    bool is_parseval = false;
    double tightness_gap = 0.0;       // λ_max − λ_min
    double parseval_deviation = 0.0;  // ||G − I||_F
    std::optional<double> condition;  // B / A
    std::string failure;              // set when !is_frame
};

FrameReport frame_report(const FrameFamily& f, const MeasureSpace& ms, double tol = kFrameTol,
                         double report_tol = kReportTol);

}  // namespace cframe
