#include "mafr/fpca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mafr/errors.hpp"
#include "mafr/kernels.hpp"
#include "mafr/ldo.hpp"
#include "mafr/linalg.hpp"

namespace mafr {

PcaDecomposition fpca(const FunctionalDataSet& data, const RetainSpec& retain, bool center_data,
                      std::size_t quad_points) {
    const std::size_t n = data.num_curves();
    const std::size_t k = data.basis.size;
    if (n < 2) throw InsufficientDataError("fpca: need at least two curves");
    if (retain.by_count && (retain.count_value < 1 || retain.count_value > k)) {
        throw ParameterError("fpca: retained count must be in [1, basis size]");
    }
    if (!retain.by_count && !(retain.fraction_value > 0.0 && retain.fraction_value <= 1.0)) {
        throw ParameterError("fpca: retained fraction must be in (0, 1]");
    }

    std::vector<double> mean(k, 0.0);
    Matrix centered = data.coefficients;
    if (center_data) {
        auto c = center(data);
        centered = std::move(c.data.coefficients);
        mean = std::move(c.mean_coefficients);
    }

    Matrix cov = matmul(transpose(centered), centered);
    const double inv = 1.0 / static_cast<double>(n - 1);
    kernels::scale(inv, cov.data(), cov.rows() * cov.cols());
    cov = symmetrized(cov);

    const Matrix w = gram_matrix(data.basis, LinearDifferentialOperator::identity(), quad_points);
    SqrtPair ws;
    try {
        ws = sym_sqrt_inv_sqrt(w, 1e-12);
    } catch (const ConditioningError&) {
        throw ConditioningError("fpca: basis Gram matrix is numerically singular");
    }

    const Matrix m = symmetrized(matmul(ws.sqrt, matmul(cov, ws.sqrt)));
    const SymmetricEigenResult eig = sym_eigen(m, EigenOrder::Descending);

    double total = 0.0;
    for (double lam : eig.eigenvalues) total += lam;

    std::size_t keep;
    if (retain.by_count) {
        keep = retain.count_value;
    } else if (!(total > 0.0)) {
        keep = 1; // all variances vanish; report a single degenerate component
    } else {
        keep = k;
        double cum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            cum += eig.eigenvalues[j];
            if (cum >= retain.fraction_value * total) {
                keep = j + 1;
                break;
            }
        }
    }

    PcaDecomposition out;
    out.basis = data.basis;
    out.curve_ids = data.curve_ids;
    out.mean_coefficients = std::move(mean);
    out.components = Matrix(keep, k);
    out.variances.resize(keep);

    double retained_sum = 0.0;
    for (std::size_t j = 0; j < keep; ++j) {
        out.variances[j] = std::max(eig.eigenvalues[j], 0.0);
        retained_sum += eig.eigenvalues[j];
        // coefficient vector a_j = W^{-1/2} v_j, sign-fixed on the coefficients
        for (std::size_t i = 0; i < k; ++i) {
            double acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) acc += ws.inv_sqrt(i, l) * eig.eigenvectors(l, j);
            out.components(j, i) = acc;
        }
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double mag = std::abs(out.components(j, i));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (out.components(j, arg) < 0.0) {
            for (std::size_t i = 0; i < k; ++i) out.components(j, i) = -out.components(j, i);
        }
    }
    out.variance_fraction_retained = total > 0.0 ? retained_sum / total : 1.0;

    // s_ij = int (x_i - mean) phi_j = (c_i - mean)^T W a_j
    out.scores = matmul(centered, matmul(w, transpose(out.components)));
    return out;
}

FunctionalDataSet reconstruct(const PcaDecomposition& pca,
                              const std::vector<double>& mean_coefficients,
                              std::size_t num_components) {
    const std::size_t kr = pca.num_components();
    const std::size_t k = pca.basis.size;
    if (num_components > kr) {
        throw ParameterError("reconstruct: requested more components than retained");
    }
    if (mean_coefficients.size() != k) {
        throw ParameterError("reconstruct: mean coefficient length must match basis size");
    }
    const std::size_t n = pca.scores.rows();
    Matrix coefs(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = coefs.row(i);
        for (std::size_t j = 0; j < k; ++j) row[j] = mean_coefficients[j];
        for (std::size_t c = 0; c < num_components; ++c) {
            kernels::axpy(pca.scores(i, c), pca.components.row(c), row, k);
        }
    }
    return {pca.basis, std::move(coefs), pca.curve_ids};
}

Matrix project_scores(const PcaDecomposition& pca, const FunctionalDataSet& data,
                      std::size_t quad_points) {
    if (data.basis.size != pca.basis.size) {
        throw ParameterError("project_scores: dataset basis does not match decomposition");
    }
    const Matrix w = gram_matrix(pca.basis, LinearDifferentialOperator::identity(), quad_points);
    Matrix centered = data.coefficients;
    for (std::size_t i = 0; i < centered.rows(); ++i) {
        for (std::size_t j = 0; j < centered.cols(); ++j) {
            centered(i, j) -= pca.mean_coefficients[j];
        }
    }
    return matmul(centered, matmul(w, transpose(pca.components)));
}

} // namespace mafr
