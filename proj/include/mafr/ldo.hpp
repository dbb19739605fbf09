#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "mafr/basis.hpp"
#include "mafr/matrix.hpp"

namespace mafr {

// Monic linear differential operator
//
//   L x = x^(k) + sum_{j<k} a_j(t) x^(j)
//
// with constant or t-varying lower-order coefficients. k = 0 is the identity.
class LinearDifferentialOperator {
public:
    using Coefficient = std::variant<double, std::function<double(double)>>;

    LinearDifferentialOperator(std::size_t leading_order, std::vector<Coefficient> coefficients);

    static LinearDifferentialOperator identity() { return {0, {}}; }
    static LinearDifferentialOperator first_derivative() { return {1, {0.0}}; }
    static LinearDifferentialOperator second_derivative() { return {2, {0.0, 0.0}}; }

    // D^3 + omega^2 D with omega = 2*pi/period; annihilates constants and
    // sinusoids at that period.
    static LinearDifferentialOperator harmonic_acceleration(double period);

    std::size_t leading_order() const noexcept { return leading_order_; }

    bool has_constant_coefficients() const noexcept;

    // a_j as a constant; only valid when has_constant_coefficients().
    double constant_coefficient(std::size_t j) const;

    double coefficient_at(std::size_t j, double t) const;

private:
    std::size_t leading_order_;
    std::vector<Coefficient> coefficients_;
};

// (L x)(t) at each point for x = sum_j coefs[j] f_j.
std::vector<double> apply(const LinearDifferentialOperator& op, const BasisSystem& basis,
                          std::span<const double> coefs, std::span<const double> points);

// Entry (p, j) = (L f_j)(points[p]); the building block for penalty matrices.
Matrix apply_to_basis(const LinearDifferentialOperator& op, const BasisSystem& basis,
                      std::span<const double> points);

} // namespace mafr
