#include "mafr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mafr/errors.hpp"

namespace mafr {

namespace {

// One cyclic Jacobi pass with the usual threshold schedule.
void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const std::size_t n = a.rows();
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);
    const double h = t * apq;

    a(p, p) -= h;
    a(q, q) += h;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != p && i != q) {
            const double aip = a(i, p);
            const double aiq = a(i, q);
            a(i, p) = aip - s * (aiq + tau * aip);
            a(i, q) = aiq + s * (aip - tau * aiq);
            a(p, i) = a(i, p);
            a(q, i) = a(i, q);
        }
        const double vip = v(i, p);
        const double viq = v(i, q);
        v(i, p) = vip - s * (viq + tau * vip);
        v(i, q) = viq + s * (vip - tau * viq);
    }
}

double off_diagonal_abs_sum(const Matrix& a) noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) sum += std::abs(a(i, j));
    }
    return sum;
}

void fix_sign(Matrix& vectors, std::size_t col) noexcept {
    const std::size_t n = vectors.rows();
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::abs(vectors(i, col));
        if (m > best) {
            best = m;
            arg = i;
        }
    }
    if (vectors(arg, col) < 0.0) {
        for (std::size_t i = 0; i < n; ++i) vectors(i, col) = -vectors(i, col);
    }
}

} // namespace

SymmetricEigenResult sym_eigen(const Matrix& a_in, EigenOrder order) {
    if (a_in.rows() != a_in.cols()) throw ParameterError("sym_eigen: matrix must be square");
    if (!all_finite(a_in)) throw ParameterError("sym_eigen: non-finite entries");
    const std::size_t n = a_in.rows();
    if (n == 0) return {{}, Matrix{}};

    Matrix a = symmetrized(a_in);
    Matrix v = Matrix::identity(n);

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const double sm = off_diagonal_abs_sum(a);
        if (sm == 0.0) break;
        const double tresh = sweep < 3 ? 0.2 * sm / static_cast<double>(n * n) : 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = 100.0 * std::abs(a(p, q));
                if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
                    std::abs(a(q, q)) + g == std::abs(a(q, q))) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                } else if (std::abs(a(p, q)) > tresh) {
                    jacobi_rotate(a, v, p, q);
                }
            }
        }
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return order == EigenOrder::Ascending ? a(i, i) < a(j, j) : a(i, i) > a(j, j);
    });

    SymmetricEigenResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        result.eigenvalues[j] = a(idx[j], idx[j]);
        for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, j) = v(i, idx[j]);
        fix_sign(result.eigenvectors, j);
    }
    return result;
}

SqrtPair sym_sqrt_inv_sqrt(const Matrix& a, double floor_rel) {
    const auto eig = sym_eigen(a, EigenOrder::Descending);
    const std::size_t n = eig.eigenvalues.size();
    if (n == 0 || eig.eigenvalues.front() <= 0.0) {
        throw ConditioningError("sym_sqrt_inv_sqrt: matrix has no positive eigenvalue");
    }
    const double floor = floor_rel * eig.eigenvalues.front();

    Matrix s(n, n);
    Matrix si(n, n);
    const Matrix& v = eig.eigenvectors;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc_s = 0.0;
            double acc_i = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double lam = std::max(eig.eigenvalues[k], floor);
                const double r = std::sqrt(lam);
                acc_s += v(i, k) * r * v(j, k);
                acc_i += v(i, k) / r * v(j, k);
            }
            s(i, j) = acc_s;
            si(i, j) = acc_i;
        }
    }
    return {std::move(s), std::move(si)};
}

bool cholesky_factorize(Matrix& a) noexcept {
    const std::size_t n = a.rows();
    if (a.cols() != n) return false;
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
        for (std::size_t i = 0; i < j; ++i) a(i, j) = 0.0;
    }
    return true;
}

void cholesky_solve_in_place(const Matrix& l, Matrix& b) {
    const std::size_t n = l.rows();
    if (b.rows() != n) throw ParameterError("cholesky_solve: dimension mismatch");
    const std::size_t m = b.cols();
    // forward substitution L y = b
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < m; ++c) {
            double s = b(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b(k, c);
            b(i, c) = s / l(i, i);
        }
    }
    // back substitution L^T x = y
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t c = 0; c < m; ++c) {
            double s = b(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * b(k, c);
            b(ii, c) = s / l(ii, ii);
        }
    }
}

} // namespace mafr
