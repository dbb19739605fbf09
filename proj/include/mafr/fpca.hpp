#pragma once

#include <cstddef>
#include <vector>

#include "mafr/matrix.hpp"
#include "mafr/smoothing.hpp"

namespace mafr {

// How many components to keep: an explicit count, or the smallest count whose
// cumulative variance fraction reaches a target.
struct RetainSpec {
    static RetainSpec count(std::size_t k) { return {k, 0.0, true}; }
    static RetainSpec fraction(double q) { return {0, q, false}; }

    std::size_t count_value = 0;
    double fraction_value = 0.99;
    bool by_count = false;
};

struct PcaDecomposition {
    BasisSystem basis;
    Matrix components;                     // K_retained x K, rows are coefficient vectors
    Matrix scores;                         // n x K_retained
    std::vector<double> variances;         // nonincreasing, >= 0
    double variance_fraction_retained = 0; // retained / total
    std::vector<double> mean_coefficients; // zeros when centering was disabled
    std::vector<std::string> curve_ids;

    std::size_t num_components() const noexcept { return components.rows(); }
};

// Functional PCA via the whitened coefficient eigenproblem
// W^{1/2} C W^{1/2} with C the (n-1)-divisor coefficient covariance and W the
// basis Gram matrix. Components are orthonormal in L2; scores are the L2
// projections of the centered curves.
PcaDecomposition fpca(const FunctionalDataSet& data, const RetainSpec& retain,
                      bool center_data = true, std::size_t quad_points = 501);

// Mean plus the leading `num_components` score-weighted components.
FunctionalDataSet reconstruct(const PcaDecomposition& pca,
                              const std::vector<double>& mean_coefficients,
                              std::size_t num_components);

// Scores of an arbitrary dataset against fixed components (used for
// projection checks and export tooling).
Matrix project_scores(const PcaDecomposition& pca, const FunctionalDataSet& data,
                      std::size_t quad_points = 501);

} // namespace mafr
