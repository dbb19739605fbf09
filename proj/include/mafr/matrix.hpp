#pragma once

#include <cstddef>
#include <vector>

namespace mafr {

// Dense row-major matrix of doubles. Everything in this library is small
// (hundreds of rows at most), so value semantics throughout.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    double* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    bool operator==(const Matrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// C = A * B. Dimension mismatch throws ParameterError.
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

// (A + A^T) / 2 for square A.
Matrix symmetrized(const Matrix& a);

Matrix add(const Matrix& a, const Matrix& b);

// A += alpha * B
void add_scaled(Matrix& a, double alpha, const Matrix& b);

double max_abs(const Matrix& a) noexcept;

// y = A * x for a length-cols vector.
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

bool all_finite(const Matrix& a) noexcept;

} // namespace mafr
