#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mafr/basis.hpp"
#include "mafr/ldo.hpp"
#include "mafr/matrix.hpp"

namespace mafr {

// Discretely observed curves on a shared grid: values(i, p) is curve i at
// points[p].
struct ObservationGrid {
    std::vector<double> points;
    Matrix values;
    std::vector<std::string> curve_ids;

    ObservationGrid(std::vector<double> points_, Matrix values_,
                    std::vector<std::string> curve_ids_ = {});

    std::size_t num_curves() const noexcept { return values.rows(); }
};

// n curves represented by rows of a coefficient matrix over a shared basis.
struct FunctionalDataSet {
    BasisSystem basis;
    Matrix coefficients; // n x K
    std::vector<std::string> curve_ids;

    FunctionalDataSet(BasisSystem basis_, Matrix coefficients_,
                      std::vector<std::string> curve_ids_ = {});

    std::size_t num_curves() const noexcept { return coefficients.rows(); }
};

struct RoughnessPenalty {
    LinearDifferentialOperator op;
    double lambda = 0.0;
};

// Penalized least squares per curve:
//   minimize  sum_p (values(i,p) - x_i(points[p]))^2 + lambda * int (L x_i)^2.
FunctionalDataSet fit(const ObservationGrid& grid, const BasisSystem& basis,
                      const std::optional<RoughnessPenalty>& penalty = std::nullopt,
                      std::size_t quad_points = 501);

// Entry (i, p) = x_i(points[p]).
Matrix evaluate_curves(const FunctionalDataSet& data, std::span<const double> points);

struct CenteredData {
    FunctionalDataSet data;
    std::vector<double> mean_coefficients;
};

CenteredData center(const FunctionalDataSet& data);

} // namespace mafr
