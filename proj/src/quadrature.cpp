#include "mafr/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mafr/errors.hpp"
#include "mafr/kernels.hpp"

namespace mafr {

namespace {

void simpson_nodes(const Interval& iv, std::size_t n, std::vector<double>& x,
                   std::vector<double>& w) {
    if (n < 3 || n % 2 == 0) {
        throw ParameterError("quadrature: composite Simpson needs an odd point count >= 3");
    }
    const double h = iv.length() / static_cast<double>(n - 1);
    x.resize(n);
    w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = iv.lo + h * static_cast<double>(i);
        const bool edge = i == 0 || i == n - 1;
        w[i] = edge ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
    }
    x.back() = iv.hi;
}

// Legendre nodes by Newton iteration on the recurrence.
void gauss_nodes(const Interval& iv, std::size_t n, std::vector<double>& x,
                 std::vector<double>& w) {
    if (n < 1) throw ParameterError("quadrature: Gauss-Legendre needs at least one point");
    x.resize(n);
    w.resize(n);
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * iv.length();
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = ((2.0 * dj + 1.0) * z * p2 - dj * p3) / (dj + 1.0);
            }
            pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = mid - half * z;
        x[n - 1 - i] = mid + half * z;
        const double wi = 2.0 * half / ((1.0 - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
}

} // namespace

QuadratureRule::QuadratureRule(QuadratureKind kind, std::size_t num_points, Interval interval)
    : kind_(kind), interval_(interval) {
    if (kind == QuadratureKind::CompositeSimpson) {
        simpson_nodes(interval_, num_points, nodes_, weights_);
    } else {
        gauss_nodes(interval_, num_points, nodes_, weights_);
    }
}

double integrate(const QuadratureRule& rule, const RealFunction& f) {
    const auto& x = rule.nodes();
    const auto& w = rule.weights();
    std::vector<double> fx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        fx[i] = f(x[i]);
        if (!std::isfinite(fx[i])) {
            throw EvaluationError("quadrature: non-finite integrand value at node t=" +
                                      std::to_string(x[i]),
                                  x[i]);
        }
    }
    return kernels::dot(w.data(), fx.data(), x.size());
}

namespace {

Matrix sample_columns(const QuadratureRule& rule, const std::vector<RealFunction>& fs) {
    const auto& x = rule.nodes();
    Matrix vals(x.size(), fs.size());
    for (std::size_t p = 0; p < x.size(); ++p) {
        for (std::size_t j = 0; j < fs.size(); ++j) {
            const double v = fs[j](x[p]);
            if (!std::isfinite(v)) {
                throw EvaluationError("quadrature: non-finite function value at node t=" +
                                          std::to_string(x[p]),
                                      x[p]);
            }
            vals(p, j) = v;
        }
    }
    return vals;
}

} // namespace

Matrix inner_product_matrix(const QuadratureRule& rule, const std::vector<RealFunction>& fs,
                            const std::vector<RealFunction>& gs) {
    const Matrix fv = transpose(sample_columns(rule, fs)); // |fs| x P
    const Matrix gv = transpose(sample_columns(rule, gs)); // |gs| x P
    const auto& w = rule.weights();
    Matrix out(fs.size(), gs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = 0; j < gs.size(); ++j) {
            out(i, j) = kernels::weighted_dot(w.data(), fv.row(i), gv.row(j), w.size());
        }
    }
    return out;
}

Matrix inner_product_matrix(const QuadratureRule& rule, const std::vector<RealFunction>& fs) {
    if (fs.empty()) return Matrix(0, 0);
    return symmetrized(inner_product_matrix(rule, fs, fs));
}

} // namespace mafr
