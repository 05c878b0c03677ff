#pragma once

// Row-major double-precision matrix plus the handful of dense ops the
// transformer stacks need. Deliberately plain: the model dims here are
// desk scale, so clarity beats kernels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "memcap/common.hpp"
#include "memcap/vecmath.hpp"

namespace memcap {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_block(const FeatureBlock& block);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* row(std::size_t r) { return data_.data() + r * cols_; }
    const double* row(std::size_t r) const { return data_.data() + r * cols_; }
    std::span<const double> row_span(std::size_t r) const { return {row(r), cols_}; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

    // Rows [begin, end) copied out.
    Matrix rows_slice(std::size_t begin, std::size_t end) const;

    FeatureBlock to_block() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// C = A * B
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A * B^T
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// C = A^T * B
Matrix matmul_tn(const Matrix& a, const Matrix& b);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
void add_inplace(Matrix& a, const Matrix& b);
void scale_inplace(Matrix& a, double s);
Matrix vstack(const Matrix& top, const Matrix& bottom);

// Per-column sums (for bias gradients).
std::vector<double> column_sums(const Matrix& m);

bool all_finite(const Matrix& m);
bool bit_equal(const Matrix& a, const Matrix& b);
std::uint64_t checksum(const Matrix& m);
std::uint64_t checksum(std::span<const double> v);

// Fills with U(-scale, scale) draws from rng, row-major order.
void fill_uniform(Matrix& m, SplitMix64& rng, double scale);

// pos_enc[p, 2i] = sin(p / 10000^(2i/d)), pos_enc[p, 2i+1] = cos(...)
Matrix sinusoidal_positions(std::size_t length, std::size_t dim);

}  // namespace memcap
