#include "mafr/ldo.hpp"

#include <cmath>
#include <numbers>

#include "mafr/errors.hpp"
#include "mafr/kernels.hpp"

namespace mafr {

LinearDifferentialOperator::LinearDifferentialOperator(std::size_t leading_order,
                                                       std::vector<Coefficient> coefficients)
    : leading_order_(leading_order), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != leading_order_) {
        throw ParameterError("ldo: expected one coefficient per derivative order below the "
                             "leading order");
    }
}

LinearDifferentialOperator LinearDifferentialOperator::harmonic_acceleration(double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw ParameterError("ldo: harmonic acceleration needs a positive period");
    }
    const double omega = 2.0 * std::numbers::pi / period;
    return {3, {0.0, omega * omega, 0.0}};
}

bool LinearDifferentialOperator::has_constant_coefficients() const noexcept {
    for (const auto& c : coefficients_) {
        if (!std::holds_alternative<double>(c)) return false;
    }
    return true;
}

double LinearDifferentialOperator::constant_coefficient(std::size_t j) const {
    if (j >= coefficients_.size()) throw ParameterError("ldo: coefficient index out of range");
    if (!std::holds_alternative<double>(coefficients_[j])) {
        throw ParameterError("ldo: coefficient is not constant");
    }
    return std::get<double>(coefficients_[j]);
}

double LinearDifferentialOperator::coefficient_at(std::size_t j, double t) const {
    if (j >= coefficients_.size()) throw ParameterError("ldo: coefficient index out of range");
    if (const double* c = std::get_if<double>(&coefficients_[j])) return *c;
    return std::get<std::function<double(double)>>(coefficients_[j])(t);
}

Matrix apply_to_basis(const LinearDifferentialOperator& op, const BasisSystem& basis,
                      std::span<const double> points) {
    const std::size_t k = op.leading_order();
    Matrix out = evaluate(basis, points, k);
    for (std::size_t j = 0; j < k; ++j) {
        bool all_zero = op.has_constant_coefficients() && op.constant_coefficient(j) == 0.0;
        if (all_zero) continue;
        const Matrix ej = evaluate(basis, points, j);
        for (std::size_t p = 0; p < points.size(); ++p) {
            const double aj = op.coefficient_at(j, points[p]);
            if (aj != 0.0) kernels::axpy(aj, ej.row(p), out.row(p), basis.size);
        }
    }
    return out;
}

std::vector<double> apply(const LinearDifferentialOperator& op, const BasisSystem& basis,
                          std::span<const double> coefs, std::span<const double> points) {
    if (coefs.size() != basis.size) {
        throw ParameterError("ldo: coefficient vector length does not match basis size");
    }
    const Matrix lf = apply_to_basis(op, basis, points);
    std::vector<double> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        out[p] = kernels::dot(lf.row(p), coefs.data(), coefs.size());
    }
    return out;
}

} // namespace mafr
