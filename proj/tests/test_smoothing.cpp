#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mafr/errors.hpp"
#include "mafr/kernels.hpp"
#include "mafr/ldo.hpp"
#include "mafr/smoothing.hpp"

using namespace mafr;

namespace {

std::vector<double> uniform_grid(const Interval& iv, std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = iv.lo + iv.length() * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return pts;
}

Matrix random_coefs(std::mt19937_64& eng, std::size_t n, std::size_t k) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix c(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) c(i, j) = u(eng);
    }
    return c;
}

double penalty_form(const FunctionalDataSet& data, const LinearDifferentialOperator& op,
                    std::size_t curve) {
    const Matrix r = gram_matrix(data.basis, op);
    const std::size_t k = data.basis.size;
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            acc += data.coefficients(curve, i) * r(i, j) * data.coefficients(curve, j);
        }
    }
    return acc;
}

} // namespace

TEST_CASE("round trip: exact basis expansions are recovered") {
    std::mt19937_64 eng(31);
    const std::vector<BasisSystem> systems = {
        fourier_basis(Interval(0, 1), 11),
        bspline_basis(Interval(0, 24), 4, 12),
    };
    for (const auto& basis : systems) {
        const Matrix truth = random_coefs(eng, 6, basis.size);
        const FunctionalDataSet gen(basis, truth);
        const auto pts = uniform_grid(basis.interval, 2 * basis.size + 5);
        const ObservationGrid grid(pts, evaluate_curves(gen, pts));
        const FunctionalDataSet fitted = fit(grid, basis);
        for (std::size_t i = 0; i < truth.rows(); ++i) {
            for (std::size_t j = 0; j < truth.cols(); ++j) {
                CHECK(std::abs(fitted.coefficients(i, j) - truth(i, j)) < 1e-8);
            }
        }
    }
}

TEST_CASE("constant curve maps to the constant coefficient") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 7);
    const auto pts = uniform_grid(basis.interval, 25);
    Matrix values(1, pts.size(), 5.0);
    const FunctionalDataSet fitted = fit(ObservationGrid(pts, values), basis);
    CHECK(std::abs(fitted.coefficients(0, 0) - 5.0) < 1e-10);
    for (std::size_t j = 1; j < basis.size; ++j) {
        CHECK(std::abs(fitted.coefficients(0, j)) < 1e-10);
    }
}

TEST_CASE("huge lambda shrinks toward the penalty null space") {
    std::mt19937_64 eng(77);
    const BasisSystem basis = bspline_basis(Interval(0, 1), 4, 10);
    const auto pts = uniform_grid(basis.interval, 41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix values(1, pts.size());
    for (std::size_t p = 0; p < pts.size(); ++p) {
        values(0, p) = std::sin(7.0 * pts[p]) + 0.2 * u(eng);
    }
    const ObservationGrid grid(pts, values);
    const auto d2 = LinearDifferentialOperator::second_derivative();

    const FunctionalDataSet plain = fit(grid, basis);
    const FunctionalDataSet shrunk = fit(grid, basis, RoughnessPenalty{d2, 1e12});
    const double form_plain = penalty_form(plain, d2, 0);
    const double form_shrunk = penalty_form(shrunk, d2, 0);
    CHECK(form_shrunk < 1e-6 * form_plain);
}

TEST_CASE("penalized objective beats the zero vector and matches at lambda=0") {
    std::mt19937_64 eng(5);
    const BasisSystem basis = fourier_basis(Interval(0, 1), 9);
    const auto pts = uniform_grid(basis.interval, 33);
    Matrix values(1, pts.size());
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t p = 0; p < pts.size(); ++p) values(0, p) = u(eng);
    const ObservationGrid grid(pts, values);
    const auto d2 = LinearDifferentialOperator::second_derivative();
    const double lambda = 0.37;

    auto objective = [&](const FunctionalDataSet& data) {
        const Matrix fitted_vals = evaluate_curves(data, pts);
        double sse = 0.0;
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const double r = values(0, p) - fitted_vals(0, p);
            sse += r * r;
        }
        return sse + lambda * penalty_form(data, d2, 0);
    };

    const FunctionalDataSet best = fit(grid, basis, RoughnessPenalty{d2, lambda});
    const FunctionalDataSet unpenalized = fit(grid, basis);
    const FunctionalDataSet zero(basis, Matrix(1, basis.size));
    CHECK(objective(best) <= objective(unpenalized) + 1e-10);
    CHECK(objective(best) <= objective(zero) + 1e-10);
}

TEST_CASE("rank-deficient designs are reported") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 9);
    const auto pts = uniform_grid(basis.interval, 5); // fewer points than functions
    Matrix values(1, pts.size(), 1.0);
    CHECK_THROWS_AS(fit(ObservationGrid(pts, values), basis), FittingError);
}

TEST_CASE("grid validation") {
    Matrix values(1, 2, 0.0);
    CHECK_THROWS_AS(ObservationGrid({0.5, 0.5}, values), ParameterError);
    CHECK_THROWS_AS(ObservationGrid({0.5}, Matrix(1, 1, 0.0)), ParameterError);
    Matrix bad(1, 2, 0.0);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(ObservationGrid({0.0, 1.0}, bad), ParameterError);
}

TEST_CASE("evaluate_curves") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 5);
    SUBCASE("unit constant coefficient gives an all-ones row") {
        Matrix c(1, 5);
        c(0, 0) = 1.0;
        const FunctionalDataSet data(basis, c);
        const auto pts = uniform_grid(basis.interval, 11);
        const Matrix vals = evaluate_curves(data, pts);
        for (std::size_t p = 0; p < pts.size(); ++p) CHECK(vals(0, p) == doctest::Approx(1.0));
    }
    SUBCASE("linearity in coefficients") {
        std::mt19937_64 eng(11);
        const Matrix a = random_coefs(eng, 3, 5);
        const Matrix b = random_coefs(eng, 3, 5);
        const auto pts = uniform_grid(basis.interval, 13);
        const Matrix va = evaluate_curves(FunctionalDataSet(basis, a), pts);
        const Matrix vb = evaluate_curves(FunctionalDataSet(basis, b), pts);
        const Matrix vsum = evaluate_curves(FunctionalDataSet(basis, add(a, b)), pts);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t p = 0; p < pts.size(); ++p) {
                CHECK(vsum(i, p) == doctest::Approx(va(i, p) + vb(i, p)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("matches the direct expansion formula") {
        std::mt19937_64 eng(13);
        const Matrix c = random_coefs(eng, 4, 5);
        const FunctionalDataSet data(basis, c);
        const auto pts = uniform_grid(basis.interval, 101);
        const Matrix vals = evaluate_curves(data, pts);
        const Matrix e = evaluate(basis, pts, 0);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t p = 0; p < pts.size(); ++p) {
                double direct = 0.0;
                for (std::size_t j = 0; j < 5; ++j) direct += c(i, j) * e(p, j);
                CHECK(std::abs(vals(i, p) - direct) < 1e-12);
            }
        }
    }
    SUBCASE("out-of-interval points are a domain error") {
        const FunctionalDataSet data(basis, Matrix(1, 5, 0.1));
        const std::vector<double> bad = {0.5, 1.2};
        CHECK_THROWS_AS(evaluate_curves(data, bad), DomainError);
    }
}

TEST_CASE("center") {
    const BasisSystem basis = fourier_basis(Interval(0, 1), 4);
    SUBCASE("column means vanish") {
        std::mt19937_64 eng(3);
        const FunctionalDataSet data(basis, random_coefs(eng, 10, 4));
        const auto c = center(data);
        for (std::size_t j = 0; j < 4; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < 10; ++i) mean += c.data.coefficients(i, j);
            CHECK(std::abs(mean / 10.0) < 1e-12);
        }
    }
    SUBCASE("already centered data is unchanged") {
        Matrix coefs(2, 4);
        coefs(0, 1) = 1.0;
        coefs(1, 1) = -1.0;
        const auto c = center(FunctionalDataSet(basis, coefs));
        for (double m : c.mean_coefficients) CHECK(m == 0.0);
        CHECK(c.data.coefficients == coefs);
    }
    SUBCASE("single curve becomes zero with the row as mean") {
        Matrix coefs(1, 4);
        for (std::size_t j = 0; j < 4; ++j) coefs(0, j) = static_cast<double>(j) + 0.5;
        const auto c = center(FunctionalDataSet(basis, coefs));
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(c.data.coefficients(0, j) == 0.0);
            CHECK(c.mean_coefficients[j] == doctest::Approx(coefs(0, j)));
        }
    }
}
