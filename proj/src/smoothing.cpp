#include "mafr/smoothing.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mafr/errors.hpp"
#include "mafr/linalg.hpp"

namespace mafr {

ObservationGrid::ObservationGrid(std::vector<double> points_, Matrix values_,
                                 std::vector<std::string> curve_ids_)
    : points(std::move(points_)), values(std::move(values_)), curve_ids(std::move(curve_ids_)) {
    if (points.size() < 2) throw ParameterError("grid: need at least two observation points");
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (!std::isfinite(points[p])) throw ParameterError("grid: non-finite point");
        if (p > 0 && !(points[p] > points[p - 1])) {
            throw ParameterError("grid: points must be strictly increasing");
        }
    }
    if (values.cols() != points.size()) {
        throw ParameterError("grid: values must have one column per point");
    }
    if (!all_finite(values)) throw ParameterError("grid: non-finite observation value");
    if (curve_ids.empty()) {
        curve_ids.reserve(values.rows());
        for (std::size_t i = 0; i < values.rows(); ++i) {
            curve_ids.push_back(std::to_string(i + 1));
        }
    } else if (curve_ids.size() != values.rows()) {
        throw ParameterError("grid: one id per curve expected");
    }
}

FunctionalDataSet::FunctionalDataSet(BasisSystem basis_, Matrix coefficients_,
                                     std::vector<std::string> curve_ids_)
    : basis(std::move(basis_)), coefficients(std::move(coefficients_)),
      curve_ids(std::move(curve_ids_)) {
    if (coefficients.cols() != basis.size) {
        throw ParameterError("dataset: coefficient columns must match basis size");
    }
    if (!all_finite(coefficients)) throw ParameterError("dataset: non-finite coefficient");
    if (curve_ids.empty()) {
        curve_ids.reserve(coefficients.rows());
        for (std::size_t i = 0; i < coefficients.rows(); ++i) {
            curve_ids.push_back(std::to_string(i + 1));
        }
    } else if (curve_ids.size() != coefficients.rows()) {
        throw ParameterError("dataset: one id per curve expected");
    }
}

FunctionalDataSet fit(const ObservationGrid& grid, const BasisSystem& basis,
                      const std::optional<RoughnessPenalty>& penalty, std::size_t quad_points) {
    const std::size_t k = basis.size;
    const bool penalized = penalty.has_value() && penalty->lambda > 0.0;
    if (penalty.has_value() && penalty->lambda < 0.0) {
        throw ParameterError("fit: lambda must be nonnegative");
    }
    if (!penalized && grid.points.size() < k) {
        throw FittingError("fit: " + std::to_string(grid.points.size()) +
                           " points cannot determine " + std::to_string(k) +
                           " coefficients without a penalty");
    }

    const Matrix design = evaluate(basis, grid.points, 0); // P x K
    Matrix normal = matmul(transpose(design), design);
    if (penalized) {
        const Matrix r = gram_matrix(basis, penalty->op, quad_points);
        add_scaled(normal, penalty->lambda, r);
    }
    normal = symmetrized(normal);
    if (!cholesky_factorize(normal)) {
        throw FittingError(penalized
                               ? "fit: penalized normal equations are singular"
                               : "fit: design matrix is rank deficient on this grid");
    }

    Matrix rhs = matmul(transpose(design), transpose(grid.values)); // K x n
    cholesky_solve_in_place(normal, rhs);
    return {basis, transpose(rhs), grid.curve_ids};
}

Matrix evaluate_curves(const FunctionalDataSet& data, std::span<const double> points) {
    const Matrix e = evaluate(data.basis, points, 0); // P x K
    return matmul(data.coefficients, transpose(e));
}

CenteredData center(const FunctionalDataSet& data) {
    const std::size_t n = data.num_curves();
    if (n == 0) throw InsufficientDataError("center: empty dataset");
    const std::size_t k = data.basis.size;
    std::vector<double> mean(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) mean[j] += data.coefficients(i, j);
    }
    for (double& m : mean) m /= static_cast<double>(n);
    Matrix centered = data.coefficients;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) centered(i, j) -= mean[j];
    }
    return {FunctionalDataSet(data.basis, std::move(centered), data.curve_ids), std::move(mean)};
}

} // namespace mafr
