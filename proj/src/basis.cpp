#include "mafr/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mafr/errors.hpp"
#include "mafr/ldo.hpp"
#include "mafr/quadrature.hpp"

namespace mafr {

BasisSystem fourier_basis(Interval interval, std::size_t size, double period) {
    if (size == 0) throw ParameterError("basis: size must be positive");
    if (period == 0.0) period = interval.length();
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw ParameterError("basis: Fourier period must be positive");
    }
    BasisSystem b;
    b.kind = BasisKind::Fourier;
    b.interval = interval;
    b.size = size;
    b.period = period;
    return b;
}

BasisSystem bspline_basis(Interval interval, std::size_t order, std::size_t num_basis) {
    if (order < 1) throw ParameterError("basis: B-spline order must be at least 1");
    if (num_basis < order) {
        throw ParameterError("basis: B-spline needs at least `order` basis functions");
    }
    const std::size_t n_interior = num_basis - order;
    std::vector<double> knots(n_interior);
    const double step = interval.length() / static_cast<double>(n_interior + 1);
    for (std::size_t i = 0; i < n_interior; ++i) {
        knots[i] = interval.lo + step * static_cast<double>(i + 1);
    }
    return bspline_basis_with_knots(interval, order, std::move(knots));
}

BasisSystem bspline_basis_with_knots(Interval interval, std::size_t order,
                                     std::vector<double> interior_knots) {
    if (order < 1) throw ParameterError("basis: B-spline order must be at least 1");
    for (std::size_t i = 0; i < interior_knots.size(); ++i) {
        if (!std::isfinite(interior_knots[i]) || interior_knots[i] <= interval.lo ||
            interior_knots[i] >= interval.hi) {
            throw ParameterError("basis: interior knots must lie strictly inside the interval");
        }
        if (i > 0 && interior_knots[i] < interior_knots[i - 1]) {
            throw ParameterError("basis: interior knots must be nondecreasing");
        }
    }
    BasisSystem b;
    b.kind = BasisKind::BSpline;
    b.interval = interval;
    b.order = order;
    b.interior_knots = std::move(interior_knots);
    b.size = b.interior_knots.size() + order;
    return b;
}

std::size_t max_supported_derivative(const BasisSystem& basis) {
    if (basis.kind == BasisKind::Fourier) return static_cast<std::size_t>(-1);
    return basis.order - 1;
}

namespace {

void check_points(const BasisSystem& basis, std::span<const double> points) {
    for (double t : points) {
        if (!basis.interval.contains(t)) {
            throw DomainError("basis: point t=" + std::to_string(t) + " outside interval [" +
                              std::to_string(basis.interval.lo) + ", " +
                              std::to_string(basis.interval.hi) + "]");
        }
    }
}

void eval_fourier(const BasisSystem& basis, std::span<const double> points, std::size_t deriv,
                  Matrix& out) {
    const double omega = 2.0 * std::numbers::pi / basis.period;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const double t = points[p] - basis.interval.lo;
        for (std::size_t j = 0; j < basis.size; ++j) {
            double v;
            if (j == 0) {
                v = deriv == 0 ? 1.0 : 0.0;
            } else {
                const std::size_t freq = (j + 1) / 2;
                const double a = omega * static_cast<double>(freq);
                const double arg = a * t;
                double factor = 1.0;
                for (std::size_t d = 0; d < deriv; ++d) factor *= a;
                // derivative cycles: sin -> cos -> -sin -> -cos, cos -> -sin -> ...
                const bool is_sin = j % 2 == 1;
                switch (deriv % 4) {
                case 0: v = is_sin ? std::sin(arg) : std::cos(arg); break;
                case 1: v = is_sin ? std::cos(arg) : -std::sin(arg); break;
                case 2: v = is_sin ? -std::sin(arg) : -std::cos(arg); break;
                default: v = is_sin ? -std::cos(arg) : std::sin(arg); break;
                }
                v *= factor;
            }
            out(p, j) = v * basis.scale_of(j);
        }
    }
}

// Full clamped knot vector: order copies of each endpoint around the interior.
std::vector<double> full_knots(const BasisSystem& basis) {
    std::vector<double> t;
    t.reserve(basis.size + basis.order);
    t.insert(t.end(), basis.order, basis.interval.lo);
    t.insert(t.end(), basis.interior_knots.begin(), basis.interior_knots.end());
    t.insert(t.end(), basis.order, basis.interval.hi);
    return t;
}

std::size_t find_span(const std::vector<double>& t, std::size_t num_basis, std::size_t degree,
                      double x) {
    if (x >= t[num_basis]) return num_basis - 1;
    const auto it = std::upper_bound(t.begin() + static_cast<std::ptrdiff_t>(degree),
                                     t.begin() + static_cast<std::ptrdiff_t>(num_basis), x);
    return static_cast<std::size_t>(it - t.begin()) - 1;
}

// Nonzero basis functions and derivatives at x (de Boor recurrence with the
// standard derivative triangle). ders[d][r] is the d-th derivative of basis
// function span-degree+r.
void bspline_ders(const std::vector<double>& t, std::size_t degree, std::size_t span, double x,
                  std::size_t nd, std::vector<std::vector<double>>& ders) {
    const std::size_t p = degree;
    std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
    std::vector<double> left(p + 1, 0.0);
    std::vector<double> right(p + 1, 0.0);
    ndu[0][0] = 1.0;
    for (std::size_t j = 1; j <= p; ++j) {
        left[j] = x - t[span + 1 - j];
        right[j] = t[span + j] - x;
        double saved = 0.0;
        for (std::size_t r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[j][r] != 0.0 ? ndu[r][j - 1] / ndu[j][r] : 0.0;
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }

    ders.assign(nd + 1, std::vector<double>(p + 1, 0.0));
    for (std::size_t j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];
    if (nd == 0) return;

    std::vector<std::vector<double>> a(2, std::vector<double>(p + 1, 0.0));
    for (std::size_t r = 0; r <= p; ++r) {
        std::size_t s1 = 0;
        std::size_t s2 = 1;
        a[0].assign(p + 1, 0.0);
        a[1].assign(p + 1, 0.0);
        a[0][0] = 1.0;
        for (std::size_t k = 1; k <= nd; ++k) {
            double d = 0.0;
            const std::ptrdiff_t rk = static_cast<std::ptrdiff_t>(r) - static_cast<std::ptrdiff_t>(k);
            const std::size_t pk = p - k;
            if (r >= k) {
                const double den = ndu[pk + 1][static_cast<std::size_t>(rk)];
                a[s2][0] = den != 0.0 ? a[s1][0] / den : 0.0;
                d = a[s2][0] * ndu[static_cast<std::size_t>(rk)][pk];
            }
            const std::size_t j1 = rk >= -1 ? 1 : static_cast<std::size_t>(-rk);
            const std::size_t j2 = (static_cast<std::ptrdiff_t>(r) - 1 <=
                                    static_cast<std::ptrdiff_t>(pk))
                                       ? k - 1
                                       : p - r;
            for (std::size_t j = j1; j <= j2; ++j) {
                const std::size_t col = static_cast<std::size_t>(rk + static_cast<std::ptrdiff_t>(j));
                const double den = ndu[pk + 1][col];
                a[s2][j] = den != 0.0 ? (a[s1][j] - a[s1][j - 1]) / den : 0.0;
                d += a[s2][j] * ndu[col][pk];
            }
            if (r <= pk) {
                const double den = ndu[pk + 1][r];
                a[s2][k] = den != 0.0 ? -a[s1][k - 1] / den : 0.0;
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            std::swap(s1, s2);
        }
    }

    double factor = static_cast<double>(p);
    for (std::size_t k = 1; k <= nd; ++k) {
        for (std::size_t j = 0; j <= p; ++j) ders[k][j] *= factor;
        factor *= static_cast<double>(p - k);
    }
}

void eval_bspline(const BasisSystem& basis, std::span<const double> points, std::size_t deriv,
                  Matrix& out) {
    if (deriv >= basis.order) {
        throw UnsupportedDerivativeError(
            "basis: derivative order " + std::to_string(deriv) +
            " not supported by B-spline of order " + std::to_string(basis.order));
    }
    const std::size_t degree = basis.order - 1;
    const std::vector<double> t = full_knots(basis);
    std::vector<std::vector<double>> ders;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const double x = basis.interval.clamp(points[p]);
        const std::size_t span = find_span(t, basis.size, degree, x);
        bspline_ders(t, degree, span, x, deriv, ders);
        for (std::size_t r = 0; r <= degree; ++r) {
            const std::size_t j = span - degree + r;
            out(p, j) = ders[deriv][r] * basis.scale_of(j);
        }
    }
}

} // namespace

Matrix evaluate(const BasisSystem& basis, std::span<const double> points, std::size_t deriv) {
    check_points(basis, points);
    Matrix out(points.size(), basis.size);
    if (basis.kind == BasisKind::Fourier) {
        eval_fourier(basis, points, deriv, out);
    } else {
        eval_bspline(basis, points, deriv, out);
    }
    return out;
}

namespace {

bool closed_form_applies(const BasisSystem& basis, const LinearDifferentialOperator& op) {
    if (basis.kind != BasisKind::Fourier) return false;
    if (!op.has_constant_coefficients()) return false;
    // Orthogonality across frequencies needs the interval to span one period.
    return std::abs(basis.period - basis.interval.length()) <= 1e-12 * basis.interval.length();
}

Matrix fourier_closed_form_gram(const BasisSystem& basis, const LinearDifferentialOperator& op) {
    const std::size_t k = op.leading_order();
    std::vector<double> b(k + 1, 0.0);
    for (std::size_t d = 0; d < k; ++d) b[d] = op.constant_coefficient(d);
    b[k] = 1.0;

    const double length = basis.interval.length();
    const double omega = 2.0 * std::numbers::pi / basis.period;
    Matrix g(basis.size, basis.size);
    for (std::size_t j = 0; j < basis.size; ++j) {
        double diag;
        if (j == 0) {
            diag = b[0] * b[0] * length;
        } else {
            const double a = omega * static_cast<double>((j + 1) / 2);
            // L applied to sin(at)/cos(at) stays in the pair's span:
            // L sin = alpha sin + beta cos, L cos = alpha cos - beta sin.
            double alpha = 0.0;
            double beta = 0.0;
            double ad = 1.0;
            for (std::size_t d = 0; d <= k; ++d) {
                switch (d % 4) {
                case 0: alpha += b[d] * ad; break;
                case 1: beta += b[d] * ad; break;
                case 2: alpha -= b[d] * ad; break;
                default: beta -= b[d] * ad; break;
                }
                ad *= a;
            }
            diag = (alpha * alpha + beta * beta) * length / 2.0;
        }
        g(j, j) = diag * basis.scale_of(j) * basis.scale_of(j);
    }
    return g;
}

} // namespace

Matrix gram_matrix(const BasisSystem& basis, const LinearDifferentialOperator& op,
                   std::size_t quad_points) {
    if (basis.kind == BasisKind::BSpline && op.leading_order() >= basis.order) {
        throw UnsupportedDerivativeError("basis: operator order " +
                                         std::to_string(op.leading_order()) +
                                         " not supported by B-spline of order " +
                                         std::to_string(basis.order));
    }
    if (closed_form_applies(basis, op)) return fourier_closed_form_gram(basis, op);

    const QuadratureRule rule = QuadratureRule::default_rule(basis.interval, quad_points);
    const Matrix lf = apply_to_basis(op, basis, rule.nodes());
    const auto& w = rule.weights();
    Matrix scaled = lf;
    for (std::size_t p = 0; p < scaled.rows(); ++p) {
        for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(p, j) *= w[p];
    }
    return symmetrized(matmul(transpose(lf), scaled));
}

std::vector<double> orthonormalize(const BasisSystem& basis) {
    const Matrix g = gram_matrix(basis, LinearDifferentialOperator::identity());
    double max_diag = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) max_diag = std::max(max_diag, g(i, i));
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            if (i != j && std::abs(g(i, j)) > 1e-10 * max_diag) {
                throw UnsupportedBasisError(
                    "basis: Gram matrix is not diagonal; orthonormalization by scaling "
                    "is unsupported for this system");
            }
        }
    }
    std::vector<double> c(basis.size);
    for (std::size_t i = 0; i < basis.size; ++i) {
        if (!(g(i, i) > 0.0)) {
            throw UnsupportedBasisError("basis: zero-norm basis function");
        }
        c[i] = 1.0 / std::sqrt(g(i, i));
    }
    return c;
}

BasisSystem orthonormalized(const BasisSystem& basis) {
    const std::vector<double> c = orthonormalize(basis);
    BasisSystem out = basis;
    out.scaling.resize(basis.size, 1.0);
    for (std::size_t i = 0; i < basis.size; ++i) out.scaling[i] = basis.scale_of(i) * c[i];
    return out;
}

} // namespace mafr
