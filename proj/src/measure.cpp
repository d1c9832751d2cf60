#include "cframe/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "cframe/error.hpp"

namespace cframe {

namespace {

constexpr double kNewtonTol = 1e-15;
constexpr int kNewtonMaxIter = 100;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct MeasureValidator {
    void operator()(const IntervalMeasure& m) const {
        if (!std::isfinite(m.a) || !std::isfinite(m.b) || !(m.a < m.b)) {
            throw Error(ErrorCode::InvalidMeasure, "interval needs finite a < b");
        }
        if (m.panels < 1 || m.nodes_per_panel < 1) {
            throw Error(ErrorCode::InvalidMeasure, "panels and nodes_per_panel must be >= 1");
        }
        if (!(m.density > 0.0) || !std::isfinite(m.density)) {
            throw Error(ErrorCode::InvalidMeasure, "density must be positive");
        }
    }
    void operator()(const DiscreteMeasure& m) const {
        if (m.atoms.empty()) throw Error(ErrorCode::InvalidMeasure, "discrete measure has no atoms");
        for (std::size_t i = 0; i < m.atoms.size(); ++i) {
            if (!(m.atoms[i].weight > 0.0) || !std::isfinite(m.atoms[i].weight) ||
                !std::isfinite(m.atoms[i].point)) {
                throw Error(ErrorCode::InvalidMeasure, "atom " + std::to_string(i) + " needs a positive finite weight");
            }
        }
    }
};

}  // namespace

void validate(const MeasureSpace& ms) { std::visit(MeasureValidator{}, ms); }

double total_measure(const MeasureSpace& ms) {
    validate(ms);
    if (const auto* iv = std::get_if<IntervalMeasure>(&ms)) return iv->density * (iv->b - iv->a);
    CompensatedSum s;
    for (const auto& atom : std::get<DiscreteMeasure>(ms).atoms) s.add(atom.weight);
    return s.value();
}

std::vector<QuadratureNode> gauss_legendre(std::size_t k) {
    if (k < 1) throw Error(ErrorCode::InvalidMeasure, "Gauss-Legendre needs at least one node");
    std::vector<QuadratureNode> nodes(k);
    const std::size_t half = (k + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(k) + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t j = 2; j <= k; ++j) {
                const double pj = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
                p0 = p1;
                p1 = pj;
            }
            if (k == 1) p0 = 1.0;
            derivative = static_cast<double>(k) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / derivative;
            x -= dx;
            if (std::abs(dx) <= kNewtonTol) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t j = 2; j <= k; ++j) {
            const double pj = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
            p0 = p1;
            p1 = pj;
        }
        derivative = k == 1 ? 1.0 : static_cast<double>(k) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        // x is descending in i; mirror into ascending slots.
        nodes[i] = {-x, w};
        nodes[k - 1 - i] = {x, w};
    }
    if (k % 2 == 1) nodes[k / 2].point = 0.0;
    return nodes;
}

std::vector<QuadratureNode> build_quadrature(const MeasureSpace& ms) {
    validate(ms);
    if (const auto* dm = std::get_if<DiscreteMeasure>(&ms)) {
        std::vector<QuadratureNode> out;
        out.reserve(dm->atoms.size());
        for (const auto& atom : dm->atoms) out.push_back({atom.point, atom.weight});
        return out;
    }
    const auto& iv = std::get<IntervalMeasure>(ms);
    const std::vector<QuadratureNode> reference = gauss_legendre(iv.nodes_per_panel);
    const double width = (iv.b - iv.a) / static_cast<double>(iv.panels);
    std::vector<QuadratureNode> out;
    out.reserve(iv.panels * reference.size());
    for (std::size_t p = 0; p < iv.panels; ++p) {
        const double lo = iv.a + width * static_cast<double>(p);
        const double mid = lo + 0.5 * width;
        for (const auto& node : reference) {
            out.push_back({mid + 0.5 * width * node.point, 0.5 * width * node.weight * iv.density});
        }
    }
    return out;
}

Matrix integrate_nodes(const std::vector<QuadratureNode>& nodes, const IndexedIntegrand& f, Execution exec) {
    if (nodes.empty()) throw Error(ErrorCode::InvalidMeasure, "no quadrature nodes");
    std::vector<Matrix> values(nodes.size());
    if (exec == Execution::Parallel && nodes.size() > 1) {
        const std::size_t workers =
            std::clamp<std::size_t>(std::thread::hardware_concurrency(), 2, nodes.size());
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < nodes.size(); i += workers) values[i] = f(i, nodes[i]);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : failures)
            if (e) std::rethrow_exception(e);
    } else {
        for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = f(i, nodes[i]);
    }

    const std::size_t rows = values.front().rows();
    const std::size_t cols = values.front().cols();
    std::vector<CompensatedSum> re(rows * cols);
    std::vector<CompensatedSum> im(rows * cols);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].rows() != rows || values[i].cols() != cols) {
            throw Error(ErrorCode::DimensionMismatch, "integrand changes shape at node " + std::to_string(i));
        }
        const auto entries = values[i].entries();
        for (std::size_t e = 0; e < entries.size(); ++e) {
            re[e].add(nodes[i].weight * entries[e].real());
            im[e].add(nodes[i].weight * entries[e].imag());
        }
    }
    Matrix out(rows, cols);
    auto entries = out.entries();
    for (std::size_t e = 0; e < entries.size(); ++e) entries[e] = Complex(re[e].value(), im[e].value());
    return out;
}

Matrix integrate_matrix_function(const PointIntegrand& f, const MeasureSpace& ms, Execution exec) {
    return integrate_nodes(
        build_quadrature(ms), [&](std::size_t, const QuadratureNode& node) { return f(node.point); }, exec);
}

SampledFunction sample(const PointIntegrand& f, const MeasureSpace& ms) {
    SampledFunction out;
    out.nodes = build_quadrature(ms);
    out.values.reserve(out.nodes.size());
    for (const auto& node : out.nodes) out.values.push_back(f(node.point));
    return out;
}

AlgebraElement l2_inner_product(const SampledFunction& phi, const SampledFunction& psi, const MeasureSpace& ms) {
    const std::vector<QuadratureNode> nodes = build_quadrature(ms);
    if (phi.nodes != nodes || psi.nodes != nodes || phi.values.size() != nodes.size() ||
        psi.values.size() != nodes.size()) {
        throw Error(ErrorCode::NodeMismatch, "sampled functions are not on the quadrature nodes of the measure");
    }
    return AlgebraElement(integrate_nodes(nodes, [&](std::size_t i, const QuadratureNode&) {
        return phi.values[i] * psi.values[i].adjoint();
    }));
}

}  // namespace cframe
