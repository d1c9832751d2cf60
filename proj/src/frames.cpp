#include "cframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cframe/error.hpp"
#include "cframe/random.hpp"

namespace cframe {

namespace {

std::vector<Matrix> family_values(const FrameFamily& f, const MeasureSpace& ms,
                                  const std::vector<QuadratureNode>& nodes) {
    if (f.form() == FamilyForm::Tabulated && !std::holds_alternative<DiscreteMeasure>(ms)) {
        throw Error(ErrorCode::FormMismatch, "tabulated families need a discrete measure");
    }
    return f.sample(nodes);
}

void require_cols(const GramMatrix& g, std::size_t cols, const char* what) {
    if (g.dim() != cols) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": Gram is " + std::to_string(g.dim()) +
                                                      "x" + std::to_string(g.dim()) + ", family has " +
                                                      std::to_string(cols) + " columns");
    }
}

void require_frame(const GramMatrix& g, double tol) {
    const double lambda_min = hermitian_eig(g.matrix()).min();
    if (lambda_min <= tol) {
        throw Error(ErrorCode::NotAFrame, "lambda_min(G) = " + std::to_string(lambda_min));
    }
}

// x with a single nonzero row u*, so that x·G·x* = (u*·G·u)·E_00 and <x,x> = |u|²·E_00.
ModuleVector row_witness(const Matrix& basis, std::size_t column, std::size_t n) {
    Matrix x(n, basis.rows());
    for (std::size_t j = 0; j < basis.rows(); ++j) x(0, j) = std::conj(basis(j, column));
    return ModuleVector(std::move(x));
}

ModuleVector unit_witness(std::size_t i, std::size_t n, std::size_t m) {
    Matrix x(n, m);
    x(i, i) = 1.0;
    return ModuleVector(std::move(x));
}

bool is_scalar_multiple(const Matrix& a, double tol) {
    const Complex s = a(0, 0);
    return (a - s * Matrix::identity(a.rows())).max_abs() <= tol * std::max(1.0, std::abs(s));
}

}  // namespace

FrameFamily::FrameFamily(FamilyForm form, std::vector<Matrix> data) : form_(form), data_(std::move(data)) {
    if (data_.empty()) throw Error(ErrorCode::DimensionMismatch, "frame family needs at least one matrix");
    const std::size_t n = data_.front().rows();
    const std::size_t m = data_.front().cols();
    if (n == 0 || m == 0) throw Error(ErrorCode::DimensionMismatch, "frame family matrices must be nonempty");
    for (const auto& c : data_) {
        if (c.rows() != n || c.cols() != m) {
            throw Error(ErrorCode::DimensionMismatch, "frame family matrices must share dimensions");
        }
    }
}

FrameFamily FrameFamily::polynomial(std::vector<Matrix> coefficients) {
    return FrameFamily(FamilyForm::Polynomial, std::move(coefficients));
}

FrameFamily FrameFamily::tabulated(std::vector<Matrix> values) {
    return FrameFamily(FamilyForm::Tabulated, std::move(values));
}

Matrix FrameFamily::evaluate(double w) const {
    if (form_ != FamilyForm::Polynomial) {
        throw Error(ErrorCode::FormMismatch, "tabulated families are only defined on their atoms");
    }
    Matrix acc = data_.back();
    for (std::size_t k = data_.size() - 1; k-- > 0;) {
        acc *= w;
        acc += data_[k];
    }
    return acc;
}

std::vector<Matrix> FrameFamily::sample(const std::vector<QuadratureNode>& nodes) const {
    if (form_ == FamilyForm::Tabulated) {
        if (nodes.size() != data_.size()) {
            throw Error(ErrorCode::NodeMismatch, "tabulated family has " + std::to_string(data_.size()) +
                                                     " entries for " + std::to_string(nodes.size()) + " atoms");
        }
        return data_;
    }
    std::vector<Matrix> out;
    out.reserve(nodes.size());
    for (const auto& node : nodes) out.push_back(evaluate(node.point));
    return out;
}

bool FrameFamily::is_diagonal(double tol) const {
    return std::all_of(data_.begin(), data_.end(), [&](const Matrix& c) { return c.is_diagonal(tol); });
}

FrameFamily FrameFamily::right_multiply(const Matrix& m) const {
    std::vector<Matrix> out;
    out.reserve(data_.size());
    for (const auto& c : data_) out.push_back(c * m);
    return FrameFamily(form_, std::move(out));
}

FrameFamily FrameFamily::scaled(Complex s) const {
    std::vector<Matrix> out;
    out.reserve(data_.size());
    for (const auto& c : data_) out.push_back(s * c);
    return FrameFamily(form_, std::move(out));
}

FrameFamily difference(const FrameFamily& f, const FrameFamily& g) {
    if (f.form() != g.form()) throw Error(ErrorCode::FormMismatch, "cannot subtract families of different form");
    if (f.rows() != g.rows() || f.cols() != g.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "cannot subtract families of different dimensions");
    }
    const auto& a = f.data();
    const auto& b = g.data();
    if (f.form() == FamilyForm::Tabulated && a.size() != b.size()) {
        throw Error(ErrorCode::NodeMismatch, "tabulated families must share the atom set");
    }
    const std::size_t len = std::max(a.size(), b.size());
    std::vector<Matrix> out;
    out.reserve(len);
    for (std::size_t k = 0; k < len; ++k) {
        Matrix c = k < a.size() ? a[k] : Matrix::zeros(f.rows(), f.cols());
        if (k < b.size()) c -= b[k];
        out.push_back(std::move(c));
    }
    return f.form() == FamilyForm::Polynomial ? FrameFamily::polynomial(std::move(out))
                                              : FrameFamily::tabulated(std::move(out));
}

GramMatrix::GramMatrix(Matrix g) : g_(std::move(g)) {
    if (!g_.is_square() || g_.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "Gram matrix must be square");
    if (!is_hermitian(g_, 1e-12)) throw Error(ErrorCode::NotHermitian, "Gram matrix is not Hermitian");
    g_ = g_.hermitian_part();
    const double lambda_min = hermitian_eig(g_).min();
    if (lambda_min < kGramPositivityFloor) {
        throw Error(ErrorCode::NotPositive, "Gram lambda_min = " + std::to_string(lambda_min));
    }
}

GramMatrix gram(const FrameFamily& f, const MeasureSpace& ms, Execution exec) {
    const std::vector<QuadratureNode> nodes = build_quadrature(ms);
    const std::vector<Matrix> values = family_values(f, ms, nodes);
    return GramMatrix(integrate_nodes(
        nodes, [&](std::size_t i, const QuadratureNode&) { return values[i].adjoint() * values[i]; }, exec));
}

Matrix cross_gram(const FrameFamily& left, const FrameFamily& right, const MeasureSpace& ms) {
    const std::vector<QuadratureNode> nodes = build_quadrature(ms);
    const std::vector<Matrix> a = family_values(left, ms, nodes);
    const std::vector<Matrix> b = family_values(right, ms, nodes);
    return integrate_nodes(nodes, [&](std::size_t i, const QuadratureNode&) { return a[i].adjoint() * b[i]; });
}

FrameBounds FrameBounds::make(double lower, double upper) {
    if (!(lower > 0.0) || !(lower <= upper) || !std::isfinite(upper)) {
        throw Error(ErrorCode::NonPositiveBound,
                    "frame bounds need 0 < A <= B, got (" + std::to_string(lower) + ", " + std::to_string(upper) + ")");
    }
    return FrameBounds{lower, upper};
}

StarFrameBounds::StarFrameBounds(AlgebraElement lower, AlgebraElement upper, double tol)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.dim() != upper_.dim()) throw Error(ErrorCode::DimensionMismatch, "star bounds differ in dimension");
    if (!is_invertible(lower_, tol)) throw Error(ErrorCode::NotInvertible, "lower star bound is not invertible");
    if (!is_invertible(upper_, tol)) throw Error(ErrorCode::NotInvertible, "upper star bound is not invertible");
}

ModuleVector frame_operator_apply(const GramMatrix& g, const ModuleVector& x) {
    if (x.cols() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "frame operator dimension mismatch");
    return ModuleVector(x.matrix() * g.matrix());
}

SampledFunction analysis(const FrameFamily& f, const MeasureSpace& ms, const ModuleVector& x) {
    if (x.rows() != f.rows() || x.cols() != f.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "analysis: vector and family dimensions differ");
    }
    SampledFunction out;
    out.nodes = build_quadrature(ms);
    std::vector<Matrix> values = family_values(f, ms, out.nodes);
    out.values.reserve(values.size());
    for (const auto& fw : values) out.values.push_back(x.matrix() * fw.adjoint());
    return out;
}

ModuleVector synthesis(const FrameFamily& f, const MeasureSpace& ms, const SampledFunction& phi) {
    const std::vector<QuadratureNode> nodes = build_quadrature(ms);
    if (phi.nodes != nodes || phi.values.size() != nodes.size()) {
        throw Error(ErrorCode::NodeMismatch, "synthesis: function is not sampled on the measure's nodes");
    }
    const std::vector<Matrix> values = family_values(f, ms, nodes);
    for (const auto& v : phi.values) {
        if (v.rows() != f.rows() || v.cols() != f.rows()) {
            throw Error(ErrorCode::DimensionMismatch, "synthesis: sample values must be algebra elements");
        }
    }
    return ModuleVector(
        integrate_nodes(nodes, [&](std::size_t i, const QuadratureNode&) { return phi.values[i] * values[i]; }));
}

FrameBounds OptimalBounds::bounds() const {
    if (!is_frame) throw Error(ErrorCode::NotAFrame, "lambda_min(G) = " + std::to_string(lambda_min));
    return FrameBounds::make(lambda_min, lambda_max);
}

OptimalBounds optimal_scalar_bounds(const GramMatrix& g, double tol) {
    const EigenDecomposition eig = hermitian_eig(g.matrix());
    return OptimalBounds{eig.min(), eig.max(), eig.min() > tol};
}

ScalarBoundsVerdict verify_scalar_bounds(const GramMatrix& g, double lower, double upper, double tol) {
    const std::size_t m = g.dim();
    const LoewnerWitness lo = loewner_leq(lower * Matrix::identity(m), g.matrix(), tol);
    const LoewnerWitness hi = loewner_leq(g.matrix(), upper * Matrix::identity(m), tol);
    ScalarBoundsVerdict v;
    v.lower_holds = lo.holds;
    v.upper_holds = hi.holds;
    v.lower_margin = lo.margin;
    v.upper_margin = hi.margin;
    v.accepted = lo.holds && hi.holds;
    return v;
}

StarBoundsResult verify_star_bounds(const FrameFamily& f, const MeasureSpace& ms, const AlgebraElement& lower,
                                    const AlgebraElement& upper, const StarCheckOptions& options) {
    return verify_star_bounds(f, gram(f, ms), lower, upper, options);
}

StarBoundsResult verify_star_bounds(const FrameFamily& f, const GramMatrix& g, const AlgebraElement& lower,
                                    const AlgebraElement& upper, const StarCheckOptions& options) {
    const std::size_t n = f.rows();
    const std::size_t m = f.cols();
    require_cols(g, m, "verify_star_bounds");
    if (lower.dim() != n || upper.dim() != n) {
        throw Error(ErrorCode::DimensionMismatch, "star bounds must live in M_" + std::to_string(n));
    }
    const StarFrameBounds bounds(lower, upper, options.tol);
    const double tol = options.tol;
    StarBoundsResult result;

    switch (options.mode) {
        case StarMode::Scalar: {
            if (!is_scalar_multiple(lower.matrix(), tol) || !is_scalar_multiple(upper.matrix(), tol)) {
                throw Error(ErrorCode::ModeUnavailable, "scalar mode needs A = alpha*I and B = beta*I");
            }
            const EigenDecomposition eig = hermitian_eig(g.matrix());
            result.lower_margin = eig.min() - std::norm(lower(0, 0));
            result.upper_margin = std::norm(upper(0, 0)) - eig.max();
            result.lower_holds = result.lower_margin >= -tol;
            result.upper_holds = result.upper_margin >= -tol;
            if (!result.lower_holds) {
                result.witness = row_witness(eig.basis, 0, n);
            } else if (!result.upper_holds) {
                result.witness = row_witness(eig.basis, m - 1, n);
            }
            break;
        }
        case StarMode::Diagonal: {
            if (!options.diagonal_algebra) {
                throw Error(ErrorCode::ModeUnavailable, "diagonal mode needs the diagonal-algebra flag");
            }
            if (n != m || !f.is_diagonal() || !lower.matrix().is_diagonal() || !upper.matrix().is_diagonal()) {
                throw Error(ErrorCode::ModeUnavailable, "diagonal mode needs m = n and diagonal F, A, B");
            }
            result.lower_margin = std::numeric_limits<double>::infinity();
            result.upper_margin = std::numeric_limits<double>::infinity();
            std::optional<std::size_t> worst;
            double worst_margin = -tol;
            for (std::size_t i = 0; i < n; ++i) {
                const double gii = g.matrix()(i, i).real();
                const double lo = gii - std::norm(lower(i, i));
                const double hi = std::norm(upper(i, i)) - gii;
                result.lower_margin = std::min(result.lower_margin, lo);
                result.upper_margin = std::min(result.upper_margin, hi);
                if (std::min(lo, hi) < worst_margin) {
                    worst_margin = std::min(lo, hi);
                    worst = i;
                }
            }
            result.lower_holds = result.lower_margin >= -tol;
            result.upper_holds = result.upper_margin >= -tol;
            if (worst) result.witness = unit_witness(*worst, n, m);
            break;
        }
        case StarMode::Randomized: {
            const bool diagonal = options.diagonal_algebra && n == m;
            result.lower_margin = std::numeric_limits<double>::infinity();
            result.upper_margin = std::numeric_limits<double>::infinity();
            double worst_margin = -tol;
            const Matrix& a = lower.matrix();
            const Matrix& b = upper.matrix();
            for (std::size_t s = 0; s < options.samples; ++s) {
                Rng rng(derive_seed(options.seed, s));
                const Matrix x = unit_random_matrix(rng, n, m, diagonal);
                const Matrix xx = x * x.adjoint();
                const Matrix sx = x * g.matrix() * x.adjoint();
                const double lo = hermitian_eig((sx - a * xx * a.adjoint()).hermitian_part()).min();
                const double hi = hermitian_eig((b * xx * b.adjoint() - sx).hermitian_part()).min();
                result.lower_margin = std::min(result.lower_margin, lo);
                result.upper_margin = std::min(result.upper_margin, hi);
                if (std::min(lo, hi) < worst_margin) {
                    worst_margin = std::min(lo, hi);
                    result.witness = ModuleVector(x);
                }
                ++result.samples_drawn;
            }
            result.lower_holds = result.lower_margin >= -tol;
            result.upper_holds = result.upper_margin >= -tol;
            result.status = result.lower_holds && result.upper_holds ? StarStatus::NotFalsified : StarStatus::Falsified;
            return result;
        }
    }
    result.status = result.lower_holds && result.upper_holds ? StarStatus::Certified : StarStatus::Falsified;
    return result;
}

FrameFamily canonical_parseval(const FrameFamily& f, const GramMatrix& g, double tol) {
    require_cols(g, f.cols(), "canonical_parseval");
    require_frame(g, tol);
    return f.right_multiply(psd_power(g.matrix(), PsdPower::InvSqrt, tol));
}

FrameFamily canonical_dual(const FrameFamily& f, const GramMatrix& g, double tol) {
    require_cols(g, f.cols(), "canonical_dual");
    require_frame(g, tol);
    return f.right_multiply(psd_power(g.matrix(), PsdPower::Inverse, tol));
}

ModuleVector reconstruct(const ModuleVector& x, const FrameFamily& f, const MeasureSpace& ms, const GramMatrix& g) {
    const FrameFamily dual = canonical_dual(f, g);
    return synthesis(dual, ms, analysis(f, ms, x));
}

ImageFrame image_frame(const FrameFamily& f, const GramMatrix& g, const AnyBounds& bounds, const AdjointableMap& v,
                       double tol) {
    require_cols(g, f.cols(), "image_frame");
    if (v.source_cols() != f.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "map source has " + std::to_string(v.source_cols()) +
                                                      " columns, family has " + std::to_string(f.cols()));
    }
    const double gap = map_surjectivity_gap(v);
    if (gap <= tol) throw Error(ErrorCode::NotSurjective, "lambda_min(M*M) = " + std::to_string(gap));
    const double norm = map_norm(v);
    const Matrix& m = v.matrix();

    GramMatrix image_gram((m.adjoint() * g.matrix() * m).hermitian_part());
    AnyBounds predicted = std::visit(
        [&](const auto& b) -> AnyBounds {
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<B, FrameBounds>) {
                return FrameBounds{b.lower * gap, b.upper * norm * norm};
            } else {
                return StarFrameBounds(std::sqrt(gap) * b.lower(), norm * b.upper());
            }
        },
        bounds);
    return ImageFrame{f.right_multiply(m), std::move(image_gram), std::move(predicted)};
}

FrameReport frame_report(const FrameFamily& f, const MeasureSpace& ms, double tol, double report_tol) {
    FrameReport r{gram(f, ms), {}, std::nullopt, false, false, false, 0.0, 0.0, std::nullopt, {}};
    const EigenDecomposition eig = hermitian_eig(r.gram.matrix());
    r.spectrum = eig.eigenvalues;
    r.tightness_gap = eig.max() - eig.min();
    r.parseval_deviation = frobenius_distance(r.gram.matrix(), Matrix::identity(r.gram.dim()));
    r.is_frame = eig.min() > tol;
    if (r.is_frame) {
        r.optimal_bounds = FrameBounds::make(eig.min(), eig.max());
        r.condition = eig.max() / eig.min();
        r.is_tight = r.tightness_gap <= report_tol;
        r.is_parseval = r.parseval_deviation <= report_tol;
    } else {
        r.failure = "NotAFrame: lambda_min(G) = " + std::to_string(eig.min());
    }
    return r;
}

}  // namespace cframe
