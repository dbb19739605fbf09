#include "mafr/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "mafr/errors.hpp"
#include "mafr/kernels.hpp"

namespace mafr {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ParameterError("matmul: inner dimensions do not match");
    }
    Matrix c(a.rows(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik != 0.0) kernels::axpy(aik, b.row(k), ci, n);
        }
    }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return t;
}

Matrix symmetrized(const Matrix& a) {
    if (a.rows() != a.cols()) throw ParameterError("symmetrized: matrix must be square");
    Matrix s(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    }
    return s;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ParameterError("add: shapes do not match");
    }
    Matrix c = a;
    kernels::axpy(1.0, b.data(), c.data(), c.rows() * c.cols());
    return c;
}

void add_scaled(Matrix& a, double alpha, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ParameterError("add_scaled: shapes do not match");
    }
    kernels::axpy(alpha, b.data(), a.data(), a.rows() * a.cols());
}

double max_abs(const Matrix& a) noexcept {
    double m = 0.0;
    const double* p = a.data();
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size()) throw ParameterError("matvec: dimension mismatch");
    std::vector<double> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = kernels::dot(a.row(i), x.data(), x.size());
    return y;
}

bool all_finite(const Matrix& a) noexcept {
    const double* p = a.data();
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(p[i])) return false;
    }
    return true;
}

} // namespace mafr
