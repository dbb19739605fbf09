#pragma once

#include <vector>

#include "mafr/matrix.hpp"

namespace mafr {

enum class EigenOrder { Ascending, Descending };

struct SymmetricEigenResult {
    std::vector<double> eigenvalues; // sorted per requested order
    Matrix eigenvectors;             // column j pairs with eigenvalues[j]
};

// Full eigendecomposition of a (symmetrized-on-entry) real symmetric matrix.
// Cyclic Jacobi; deterministic for identical input bytes within one build.
// Sign convention: each eigenvector's largest-magnitude entry is positive.
SymmetricEigenResult sym_eigen(const Matrix& a, EigenOrder order);

struct SqrtPair {
    Matrix sqrt;     // A^{1/2}
    Matrix inv_sqrt; // A^{-1/2}, eigenvalues floored at floor_rel * max
};

// Symmetric PSD square root and inverse square root with a relative
// eigenvalue floor guarding near-singular Gram matrices.
SqrtPair sym_sqrt_inv_sqrt(const Matrix& a, double floor_rel = 1e-12);

// In-place lower Cholesky factorization; false when a pivot is not positive.
bool cholesky_factorize(Matrix& a) noexcept;

// Solve L L^T X = B given the factor from cholesky_factorize; B is overwritten.
void cholesky_solve_in_place(const Matrix& l, Matrix& b);

} // namespace mafr
