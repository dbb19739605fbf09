#pragma once

#include <vector>

#include "mafr/fpca.hpp"
#include "mafr/ldo.hpp"
#include "mafr/matrix.hpp"

namespace mafr {

// SmoothFirst orders rotated components by ascending roughness, so the
// leading component is the smoothest; RoughFirst reverses that.
enum class Ordering { SmoothFirst, RoughFirst };

struct MafrRotation {
    BasisSystem basis;
    Matrix rotation;                       // K_r x K_r orthogonal, columns b_j
    std::vector<double> penalty_eigenvalues;
    Matrix rotated_components;             // K_r x K coefficient rows (psi_j)
    Matrix rotated_scores;                 // n x K_r (t_i = U^T s_i)
    Matrix rotated_score_covariance;       // U^T Sigma U
    Ordering ordering = Ordering::SmoothFirst;

    std::size_t num_components() const noexcept { return rotated_components.rows(); }
};

// Entry (i, j) = integral of (L phi_i)(L phi_j), computed through the
// basis-level operator Gram matrix: A * gram(basis, L) * A^T.
Matrix penalty_matrix(const PcaDecomposition& pca, const LinearDifferentialOperator& op,
                      std::size_t quad_points = 501);

// The roughness-ordered rotation: eigendecompose the penalty matrix P = U D U^T
// and re-express components, scores, and score covariance through U.
MafrRotation rotate(const PcaDecomposition& pca, const LinearDifferentialOperator& op,
                    Ordering ordering = Ordering::SmoothFirst, std::size_t quad_points = 501);

// Weighted variant: eigendecomposes W^{1/2} P W^{1/2} for W = diag(weights).
// Columns are ordered by their unweighted roughness so SmoothFirst still means
// smoothest-first; reported eigenvalues are those of the weighted matrix. With
// equal weights this coincides with rotate() up to the weight factor.
MafrRotation joint_rotate(const PcaDecomposition& pca, const LinearDifferentialOperator& op,
                          const std::vector<double>& weights,
                          Ordering ordering = Ordering::SmoothFirst,
                          std::size_t quad_points = 501);

// Per-component roughness: integral of (L psi_j)^2 (resp. (L phi_j)^2).
std::vector<double> roughness_profile(const PcaDecomposition& pca,
                                      const LinearDifferentialOperator& op,
                                      std::size_t quad_points = 501);
std::vector<double> roughness_profile(const MafrRotation& rotation,
                                      const LinearDifferentialOperator& op,
                                      std::size_t quad_points = 501);

} // namespace mafr
