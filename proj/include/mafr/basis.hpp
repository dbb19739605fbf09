#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mafr/interval.hpp"
#include "mafr/matrix.hpp"

namespace mafr {

class LinearDifferentialOperator;

enum class BasisKind { Fourier, BSpline };

// An ordered system of basis functions on an interval, evaluable with
// derivatives.
//
// Fourier enumeration is fixed as (constant, sin_1, cos_1, sin_2, cos_2, ...)
// at frequencies 2*pi*i/period; an even size truncates the last pair after its
// sine. B-splines are clamped with `order` repeated end knots, so the number
// of basis functions equals interior knots + order.
//
// `scaling` (empty = all ones) multiplies function j by scaling[j]; it is how
// orthonormalized systems are represented.
struct BasisSystem {
    BasisKind kind = BasisKind::Fourier;
    Interval interval;
    std::size_t size = 0;

    double period = 0.0; // Fourier only

    std::size_t order = 0;              // B-spline only
    std::vector<double> interior_knots; // B-spline only, nondecreasing, inside interval

    std::vector<double> scaling;

    double scale_of(std::size_t j) const noexcept {
        return scaling.empty() ? 1.0 : scaling[j];
    }
};

// Fourier system; period defaults to the interval length.
BasisSystem fourier_basis(Interval interval, std::size_t size, double period = 0.0);

// B-spline system with uniformly spaced interior knots.
BasisSystem bspline_basis(Interval interval, std::size_t order, std::size_t num_basis);

BasisSystem bspline_basis_with_knots(Interval interval, std::size_t order,
                                     std::vector<double> interior_knots);

// Highest derivative order the system supports everywhere.
std::size_t max_supported_derivative(const BasisSystem& basis);

// Entry (p, j) = d^deriv/dt^deriv of basis function j at points[p].
Matrix evaluate(const BasisSystem& basis, std::span<const double> points, std::size_t deriv);

// Entry (i, j) = integral of (L f_i)(L f_j) over the interval. Closed form for
// Fourier systems under constant-coefficient operators whose period matches
// the interval length; composite-Simpson quadrature otherwise.
Matrix gram_matrix(const BasisSystem& basis, const LinearDifferentialOperator& op,
                   std::size_t quad_points = 501);

// Scaling vector c with integral (c_i f_i)(c_j f_j) = delta_ij. Requires a
// diagonal plain Gram matrix (Fourier); B-splines are rejected.
std::vector<double> orthonormalize(const BasisSystem& basis);

// Copy of the system with the orthonormalizing scaling baked in.
BasisSystem orthonormalized(const BasisSystem& basis);

} // namespace mafr
