#include "memcap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace memcap {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError(std::string(what) + ": " + std::to_string(a.rows()) +
                                 "x" + std::to_string(a.cols()) + " vs " +
                                 std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()));
    }
}

}  // namespace

Matrix Matrix::from_block(const FeatureBlock& block) {
    Matrix m(block.rows(), block.dim());
    for (std::size_t r = 0; r < block.rows(); ++r) {
        const auto row = block.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) m(r, c) = row[c];
    }
    return m;
}

Matrix Matrix::rows_slice(std::size_t begin, std::size_t end) const {
    Matrix out(end - begin, cols_);
    std::copy(row(begin), row(begin) + (end - begin) * cols_, out.data());
    return out;
}

FeatureBlock Matrix::to_block() const {
    std::vector<float> data(rows_ * cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        data[i] = static_cast<float>(data_[i]);
    return FeatureBlock(rows_, cols_, std::move(data));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatchError("matmul: " + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " * " +
                                 std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw ShapeMismatchError("matmul_nt: inner dims " + std::to_string(a.cols()) +
                                 " vs " + std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row(i);
        double* ci = c.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* bj = b.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += ai[k] * bj[k];
            ci[j] = acc;
        }
    }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw ShapeMismatchError("matmul_tn: inner dims " + std::to_string(a.rows()) +
                                 " vs " + std::to_string(b.rows()));
    }
    Matrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* ak = a.row(k);
        const double* bk = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            double* ci = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "matrix add");
    Matrix c = a;
    add_inplace(c, b);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "matrix sub");
    Matrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

void add_inplace(Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "matrix add");
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] += b.data()[i];
}

void scale_inplace(Matrix& a, double s) {
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] *= s;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.empty()) return bottom;
    if (bottom.empty()) return top;
    if (top.cols() != bottom.cols()) {
        throw ShapeMismatchError("vstack: cols " + std::to_string(top.cols()) + " vs " +
                                 std::to_string(bottom.cols()));
    }
    Matrix out(top.rows() + bottom.rows(), top.cols());
    std::copy(top.data(), top.data() + top.size(), out.data());
    std::copy(bottom.data(), bottom.data() + bottom.size(), out.data() + top.size());
    return out;
}

std::vector<double> column_sums(const Matrix& m) {
    std::vector<double> sums(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double* row = m.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c) sums[c] += row[c];
    }
    return sums;
}

bool all_finite(const Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!std::isfinite(m.data()[i])) return false;
    return true;
}

bool bit_equal(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::uint64_t checksum(const Matrix& m) {
    std::uint64_t h = fnv1a64(m.data(), m.size() * sizeof(double));
    h = hash_combine(h, m.rows());
    return hash_combine(h, m.cols());
}

std::uint64_t checksum(std::span<const double> v) {
    return fnv1a64(v.data(), v.size() * sizeof(double));
}

void fill_uniform(Matrix& m, SplitMix64& rng, double scale) {
    for (std::size_t i = 0; i < m.size(); ++i)
        m.data()[i] = rng.uniform(-scale, scale);
}

Matrix sinusoidal_positions(std::size_t length, std::size_t dim) {
    Matrix pe(length, dim);
    for (std::size_t p = 0; p < length; ++p) {
        for (std::size_t i = 0; i < dim; i += 2) {
            const double angle =
                static_cast<double>(p) /
                std::pow(10000.0, static_cast<double>(i) / static_cast<double>(dim));
            pe(p, i) = std::sin(angle);
            if (i + 1 < dim) pe(p, i + 1) = std::cos(angle);
        }
    }
    return pe;
}

}  // namespace memcap
