#include "cframe/hilbert_module.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cframe/error.hpp"

namespace cframe {

ModuleVector::ModuleVector(Matrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "empty module vector");
}

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y) { return ModuleVector(x.matrix() + y.matrix()); }
ModuleVector operator-(const ModuleVector& x, const ModuleVector& y) { return ModuleVector(x.matrix() - y.matrix()); }
ModuleVector operator*(const AlgebraElement& a, const ModuleVector& x) { return ModuleVector(a.matrix() * x.matrix()); }
ModuleVector operator*(Complex s, const ModuleVector& x) { return ModuleVector(s * x.matrix()); }

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y) {
    require_same_shape(x.matrix(), y.matrix(), "inner_product");
    return AlgebraElement(x.matrix() * y.matrix().adjoint());
}

AlgebraElement vector_abs(const ModuleVector& x, double tol) {
    return psd_power(AlgebraElement(inner_product(x, x).matrix().hermitian_part()), PsdPower::Sqrt, tol);
}

double vector_norm(const ModuleVector& x) { return operator_norm(x.matrix()); }

AdjointableMap::AdjointableMap(Matrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "empty map matrix");
}

ModuleVector map_apply(const AdjointableMap& v, const ModuleVector& x) {
    if (x.cols() != v.source_cols()) {
        throw Error(ErrorCode::DimensionMismatch, "map expects " + std::to_string(v.source_cols()) +
                                                      " columns, vector has " + std::to_string(x.cols()));
    }
    return ModuleVector(x.matrix() * v.matrix());
}

ModuleVector map_adjoint_apply(const AdjointableMap& v, const ModuleVector& y) {
    if (y.cols() != v.target_cols()) {
        throw Error(ErrorCode::DimensionMismatch, "adjoint expects " + std::to_string(v.target_cols()) +
                                                      " columns, vector has " + std::to_string(y.cols()));
    }
    return ModuleVector(y.matrix() * v.matrix().adjoint());
}

double map_surjectivity_gap(const AdjointableMap& v) {
    const Matrix mm = (v.matrix().adjoint() * v.matrix()).hermitian_part();
    return std::max(0.0, hermitian_eig(mm).min());
}

bool is_surjective(const AdjointableMap& v, double tol) { return map_surjectivity_gap(v) > tol; }

double map_norm(const AdjointableMap& v) { return operator_norm(v.matrix()); }

}  // namespace cframe
