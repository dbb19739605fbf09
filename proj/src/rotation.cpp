#include "mafr/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mafr/errors.hpp"
#include "mafr/kernels.hpp"
#include "mafr/linalg.hpp"

namespace mafr {

namespace {

std::vector<double> component_roughness(const Matrix& component_coefs, const BasisSystem& basis,
                                        const LinearDifferentialOperator& op,
                                        std::size_t quad_points) {
    const Matrix g = gram_matrix(basis, op, quad_points);
    const Matrix ag = matmul(component_coefs, g);
    std::vector<double> r(component_coefs.rows());
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = kernels::dot(ag.row(i), component_coefs.row(i), component_coefs.cols());
    }
    return r;
}

MafrRotation assemble(const PcaDecomposition& pca, Matrix u, std::vector<double> eigenvalues,
                      Ordering ordering) {
    MafrRotation out;
    out.basis = pca.basis;
    out.ordering = ordering;
    out.rotation = std::move(u);
    out.penalty_eigenvalues = std::move(eigenvalues);
    out.rotated_components = matmul(transpose(out.rotation), pca.components);
    out.rotated_scores = matmul(pca.scores, out.rotation);
    const Matrix sigma = Matrix::diagonal(pca.variances);
    out.rotated_score_covariance =
        symmetrized(matmul(transpose(out.rotation), matmul(sigma, out.rotation)));
    return out;
}

} // namespace

Matrix penalty_matrix(const PcaDecomposition& pca, const LinearDifferentialOperator& op,
                      std::size_t quad_points) {
    const Matrix g = gram_matrix(pca.basis, op, quad_points);
    return symmetrized(matmul(pca.components, matmul(g, transpose(pca.components))));
}

MafrRotation rotate(const PcaDecomposition& pca, const LinearDifferentialOperator& op,
                    Ordering ordering, std::size_t quad_points) {
    if (pca.num_components() < 1) throw ParameterError("rotate: empty decomposition");
    const Matrix p = penalty_matrix(pca, op, quad_points);
    const EigenOrder eig_order =
        ordering == Ordering::SmoothFirst ? EigenOrder::Ascending : EigenOrder::Descending;
    SymmetricEigenResult eig = sym_eigen(p, eig_order);
    return assemble(pca, std::move(eig.eigenvectors), std::move(eig.eigenvalues), ordering);
}

MafrRotation joint_rotate(const PcaDecomposition& pca, const LinearDifferentialOperator& op,
                          const std::vector<double>& weights, Ordering ordering,
                          std::size_t quad_points) {
    const std::size_t kr = pca.num_components();
    if (kr < 1) throw ParameterError("joint_rotate: empty decomposition");
    if (weights.size() != kr) {
        throw ParameterError("joint_rotate: need one weight per retained component");
    }
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ParameterError("joint_rotate: weights must be positive");
        }
    }

    const Matrix p = penalty_matrix(pca, op, quad_points);
    Matrix weighted(kr, kr);
    for (std::size_t i = 0; i < kr; ++i) {
        const double si = std::sqrt(weights[i]);
        for (std::size_t j = 0; j < kr; ++j) {
            weighted(i, j) = si * p(i, j) * std::sqrt(weights[j]);
        }
    }
    const SymmetricEigenResult eig = sym_eigen(weighted, EigenOrder::Ascending);

    // Order columns by unweighted roughness b^T P b; the weighted eigenvalues
    // alone would sort by the wrong quantity when weights differ.
    std::vector<double> rough(kr);
    std::vector<double> pv(kr);
    for (std::size_t j = 0; j < kr; ++j) {
        for (std::size_t i = 0; i < kr; ++i) {
            pv[i] = 0.0;
            for (std::size_t l = 0; l < kr; ++l) pv[i] += p(i, l) * eig.eigenvectors(l, j);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < kr; ++i) acc += eig.eigenvectors(i, j) * pv[i];
        rough[j] = acc;
    }
    std::vector<std::size_t> idx(kr);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (rough[a] != rough[b]) {
            return ordering == Ordering::SmoothFirst ? rough[a] < rough[b] : rough[a] > rough[b];
        }
        return eig.eigenvalues[a] < eig.eigenvalues[b];
    });

    Matrix u(kr, kr);
    std::vector<double> values(kr);
    for (std::size_t j = 0; j < kr; ++j) {
        values[j] = eig.eigenvalues[idx[j]];
        for (std::size_t i = 0; i < kr; ++i) u(i, j) = eig.eigenvectors(i, idx[j]);
    }
    return assemble(pca, std::move(u), std::move(values), ordering);
}

std::vector<double> roughness_profile(const PcaDecomposition& pca,
                                      const LinearDifferentialOperator& op,
                                      std::size_t quad_points) {
    return component_roughness(pca.components, pca.basis, op, quad_points);
}

std::vector<double> roughness_profile(const MafrRotation& rotation,
                                      const LinearDifferentialOperator& op,
                                      std::size_t quad_points) {
    return component_roughness(rotation.rotated_components, rotation.basis, op, quad_points);
}

} // namespace mafr
