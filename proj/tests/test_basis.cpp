#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mafr/basis.hpp"
#include "mafr/errors.hpp"
#include "mafr/ldo.hpp"
#include "mafr/linalg.hpp"
#include "mafr/quadrature.hpp"

using namespace mafr;
using std::numbers::pi;

namespace {

double eval_one(const BasisSystem& basis, std::size_t j, double t, std::size_t deriv) {
    const double pt[1] = {t};
    return evaluate(basis, pt, deriv)(0, j);
}

// quadrature route for Gram entries, independent of the closed form
Matrix gram_by_quadrature(const BasisSystem& basis, const LinearDifferentialOperator& op,
                          std::size_t points = 2001) {
    const QuadratureRule rule(QuadratureKind::GaussLegendre, points / 4, basis.interval);
    std::vector<RealFunction> fs;
    for (std::size_t j = 0; j < basis.size; ++j) {
        fs.push_back([&basis, &op, j](double t) {
            std::vector<double> coefs(basis.size, 0.0);
            coefs[j] = 1.0;
            const double pt[1] = {t};
            return apply(op, basis, coefs, pt)[0];
        });
    }
    return inner_product_matrix(rule, fs);
}

} // namespace

TEST_CASE("fourier evaluation matches the analytic formulas") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 5);
    // constant
    CHECK(eval_one(basis, 0, 0.37, 0) == doctest::Approx(1.0));
    // sin(2 pi t) at t = 1/4
    CHECK(eval_one(basis, 1, 0.25, 0) == doctest::Approx(1.0));
    // d/dt sin(2 pi t) at 0 = 2 pi
    CHECK(eval_one(basis, 1, 0.0, 1) == doctest::Approx(2.0 * pi));
    // cos(2 pi t) at 0
    CHECK(eval_one(basis, 2, 0.0, 0) == doctest::Approx(1.0));
    // second pair has frequency 2
    CHECK(eval_one(basis, 3, 0.125, 0) == doctest::Approx(std::sin(4.0 * pi * 0.125)));
    CHECK(eval_one(basis, 4, 0.3, 0) == doctest::Approx(std::cos(4.0 * pi * 0.3)));
    // derivative of the constant vanishes
    CHECK(eval_one(basis, 0, 0.6, 2) == doctest::Approx(0.0));
}

TEST_CASE("points outside the interval are rejected") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 3);
    const double bad[1] = {1.5};
    CHECK_THROWS_AS(evaluate(basis, bad, 0), DomainError);
}

TEST_CASE("bspline partition of unity") {
    const BasisSystem basis = bspline_basis(Interval(0, 1), 4, 12);
    std::vector<double> pts;
    for (int i = 0; i <= 100; ++i) pts.push_back(i / 100.0);
    const Matrix e = evaluate(basis, pts, 0);
    for (std::size_t p = 0; p < pts.size(); ++p) {
        double sum = 0.0;
        for (std::size_t j = 0; j < basis.size; ++j) sum += e(p, j);
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("bspline rejects too-high derivatives") {
    const BasisSystem basis = bspline_basis(Interval(0, 1), 4, 10);
    const double pt[1] = {0.5};
    CHECK_NOTHROW(evaluate(basis, pt, 3));
    CHECK_THROWS_AS(evaluate(basis, pt, 4), UnsupportedDerivativeError);
}

TEST_CASE("derivative consistency against central differences") {
    const std::vector<BasisSystem> systems = {
        fourier_basis(Interval(0, 1), 9),
        bspline_basis(Interval(0, 24), 4, 14),
    };
    for (const auto& basis : systems) {
        const double len = basis.interval.length();
        const double h = 3e-6 * len;
        std::vector<double> pts;
        for (int i = 0; i < 50; ++i) {
            double t = basis.interval.lo + (i + 0.341) * len / 50.0;
            for (double knot : basis.interior_knots) {
                if (std::abs(t - knot) < 4.0 * h) t += 8.0 * h;
            }
            pts.push_back(t);
        }
        for (std::size_t d = 1; d <= 2; ++d) {
            std::vector<double> lo(pts), hi(pts);
            for (auto& t : lo) t -= h;
            for (auto& t : hi) t += h;
            const Matrix f_lo = evaluate(basis, lo, d - 1);
            const Matrix f_hi = evaluate(basis, hi, d - 1);
            const Matrix f_d = evaluate(basis, pts, d);
            for (std::size_t j = 0; j < basis.size; ++j) {
                double scale = 0.0;
                for (std::size_t p = 0; p < pts.size(); ++p) {
                    scale = std::max(scale, std::abs(f_d(p, j)));
                }
                if (scale == 0.0) scale = 1.0;
                for (std::size_t p = 0; p < pts.size(); ++p) {
                    const double fd = (f_hi(p, j) - f_lo(p, j)) / (2.0 * h);
                    CHECK(std::abs(fd - f_d(p, j)) / scale < 1e-6);
                }
            }
        }
    }
}

TEST_CASE("fourier gram under the identity operator") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 7);
    const Matrix g = gram_matrix(basis, LinearDifferentialOperator::identity());
    CHECK(g(0, 0) == doctest::Approx(1.0));
    for (std::size_t j = 1; j < 7; ++j) CHECK(g(j, j) == doctest::Approx(0.5));
    for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = 0; j < 7; ++j) {
            if (i != j) CHECK(g(i, j) == 0.0);
        }
    }
}

TEST_CASE("fourier gram under the first derivative") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 5);
    const Matrix g = gram_matrix(basis, LinearDifferentialOperator::first_derivative());
    CHECK(g(0, 0) == doctest::Approx(0.0));
    CHECK(g(1, 1) == doctest::Approx(2.0 * pi * pi));
    CHECK(g(2, 2) == doctest::Approx(2.0 * pi * pi));
    CHECK(g(3, 3) == doctest::Approx(8.0 * pi * pi));
}

TEST_CASE("closed-form fourier gram matches the quadrature route") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 9);
    const std::vector<LinearDifferentialOperator> ops = {
        LinearDifferentialOperator::identity(),
        LinearDifferentialOperator::first_derivative(),
        LinearDifferentialOperator::second_derivative(),
        LinearDifferentialOperator::harmonic_acceleration(1.0),
    };
    for (const auto& op : ops) {
        const Matrix closed = gram_matrix(basis, op);
        const Matrix quad = gram_by_quadrature(basis, op);
        const double scale = std::max(max_abs(closed), 1.0);
        for (std::size_t i = 0; i < basis.size; ++i) {
            for (std::size_t j = 0; j < basis.size; ++j) {
                CHECK(std::abs(closed(i, j) - quad(i, j)) < 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("gram matrices are symmetric PSD") {
    const std::vector<BasisSystem> systems = {
        fourier_basis(Interval(0, 1), 7),
        bspline_basis(Interval(0, 2), 4, 9),
    };
    for (const auto& basis : systems) {
        const Matrix g = gram_matrix(basis, LinearDifferentialOperator::second_derivative());
        for (std::size_t i = 0; i < g.rows(); ++i) {
            for (std::size_t j = 0; j < g.cols(); ++j) {
                CHECK(std::abs(g(i, j) - g(j, i)) < 1e-12 * std::max(1.0, max_abs(g)));
            }
        }
        const auto eig = sym_eigen(g, EigenOrder::Descending);
        CHECK(eig.eigenvalues.back() >= -1e-10 * eig.eigenvalues.front());
    }
}

TEST_CASE("varying-coefficient operators go through quadrature") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 5);
    // L = D^1 + t * D^0
    const LinearDifferentialOperator op(1, {LinearDifferentialOperator::Coefficient(
                                               std::function<double(double)>([](double t) {
                                                   return t;
                                               }))});
    const Matrix g = gram_matrix(basis, op);
    const Matrix ref = gram_by_quadrature(basis, op);
    for (std::size_t i = 0; i < basis.size; ++i) {
        for (std::size_t j = 0; j < basis.size; ++j) {
            CHECK(std::abs(g(i, j) - ref(i, j)) < 1e-8 * std::max(1.0, max_abs(ref)));
        }
    }
    // constant term is now integral of t^2 over [0,1]
    CHECK(g(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("orthonormalize") {
    SUBCASE("fourier scaling constants") {
        const BasisSystem basis = fourier_basis(Interval(0, 1), 5);
        const auto c = orthonormalize(basis);
        CHECK(c[0] == doctest::Approx(1.0));
        for (std::size_t j = 1; j < 5; ++j) CHECK(c[j] == doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("already orthonormal gives all ones") {
        const BasisSystem basis = orthonormalized(fourier_basis(Interval(0, 1), 5));
        for (double c : orthonormalize(basis)) CHECK(c == doctest::Approx(1.0));
    }
    SUBCASE("bspline is unsupported") {
        CHECK_THROWS_AS(orthonormalize(bspline_basis(Interval(0, 1), 4, 8)),
                        UnsupportedBasisError);
    }
    SUBCASE("scaled system has identity gram") {
        const BasisSystem basis = orthonormalized(fourier_basis(Interval(0, 2), 6));
        const Matrix g = gram_matrix(basis, LinearDifferentialOperator::identity());
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                CHECK(std::abs(g(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("even fourier size truncates the last pair") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 4);
    // index 3 is sin at frequency 2 with no cosine partner
    CHECK(eval_one(basis, 3, 0.125, 0) == doctest::Approx(std::sin(4.0 * pi * 0.125)));
    const Matrix g = gram_matrix(basis, LinearDifferentialOperator::identity());
    CHECK(g(3, 3) == doctest::Approx(0.5));
}
