#pragma once

// Measure spaces (Ω, μ) and matrix-valued quadrature over them.

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "cframe/cstar.hpp"
#include "cframe/matrix.hpp"

namespace cframe {

/// Constant-density measure on [a, b], discretized by composite Gauss–Legendre.
struct IntervalMeasure {
    double a = 0.0;
    double b = 1.0;
    std::size_t panels = 8;
    std::size_t nodes_per_panel = 8;
    double density = 1.0;  // 1 is Lebesgue

    friend bool operator==(const IntervalMeasure&, const IntervalMeasure&) = default;
};

struct Atom {
    double point = 0.0;
    double weight = 1.0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct DiscreteMeasure {
    std::vector<Atom> atoms;

    friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;
};

using MeasureSpace = std::variant<IntervalMeasure, DiscreteMeasure>;

struct QuadratureNode {
    double point = 0.0;
    double weight = 0.0;

    friend bool operator==(const QuadratureNode&, const QuadratureNode&) = default;
};

/// Throws InvalidMeasure.
void validate(const MeasureSpace& ms);

/// μ(Ω).
double total_measure(const MeasureSpace& ms);

/// Gauss–Legendre points/weights on [−1, 1], ascending.
std::vector<QuadratureNode> gauss_legendre(std::size_t k);

std::vector<QuadratureNode> build_quadrature(const MeasureSpace& ms);

enum class Execution { Sequential, Parallel };

using IndexedIntegrand = std::function<Matrix(std::size_t index, const QuadratureNode& node)>;
using PointIntegrand = std::function<Matrix(double point)>;

/// Σ weight_i·f_i, reduced in node order with compensated summation per entry.
/// Parallel execution only spreads the integrand evaluations; the reduction
/// order, and hence the result, is identical to sequential execution.
Matrix integrate_nodes(const std::vector<QuadratureNode>& nodes, const IndexedIntegrand& f,
                       Execution exec = Execution::Sequential);

Matrix integrate_matrix_function(const PointIntegrand& f, const MeasureSpace& ms,
                                 Execution exec = Execution::Sequential);

/// Element of the discretized L²(Ω, A): one matrix per quadrature node.
struct SampledFunction {
    std::vector<QuadratureNode> nodes;
    std::vector<Matrix> values;
};

SampledFunction sample(const PointIntegrand& f, const MeasureSpace& ms);

/// <φ, ψ> = Σ weight_i·φ_i·ψ_i*. Throws NodeMismatch unless both live on the nodes of ms.
AlgebraElement l2_inner_product(const SampledFunction& phi, const SampledFunction& psi, const MeasureSpace& ms);

}  // namespace cframe
