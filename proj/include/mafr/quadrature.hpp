#pragma once

#include <functional>
#include <vector>

#include "mafr/interval.hpp"
#include "mafr/matrix.hpp"

namespace mafr {

enum class QuadratureKind { CompositeSimpson, GaussLegendre };

// Fixed quadrature rule on an interval; nodes and weights are precomputed on
// construction. CompositeSimpson is exact for cubics, Gauss-Legendre with n
// points for polynomials of degree 2n-1.
class QuadratureRule {
public:
    QuadratureRule(QuadratureKind kind, std::size_t num_points, Interval interval);

    static QuadratureRule default_rule(Interval interval, std::size_t num_points = 501) {
        return {QuadratureKind::CompositeSimpson, num_points, interval};
    }

    QuadratureKind kind() const noexcept { return kind_; }
    const Interval& interval() const noexcept { return interval_; }
    std::size_t num_points() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    QuadratureKind kind_;
    Interval interval_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

using RealFunction = std::function<double(double)>;

double integrate(const QuadratureRule& rule, const RealFunction& f);

// Entry (i, j) = integral of fs[i] * gs[j] over the rule's interval.
Matrix inner_product_matrix(const QuadratureRule& rule, const std::vector<RealFunction>& fs,
                            const std::vector<RealFunction>& gs);

// Self inner products, symmetrized by averaging with the transpose.
Matrix inner_product_matrix(const QuadratureRule& rule, const std::vector<RealFunction>& fs);

} // namespace mafr
