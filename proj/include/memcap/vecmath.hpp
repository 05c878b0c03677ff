#pragma once

// Dense-vector primitives for the retrieval path: cosine similarity,
// mean pooling and L2 norms over single-precision storage with
// double-precision accumulation.

#include <cstddef>
#include <span>
#include <vector>

#include "memcap/common.hpp"

namespace memcap {

// A finite real vector. Entries are validated at construction; NaN/Inf
// never enter the store.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::vector<float> values);

    std::size_t dim() const { return values_.size(); }
    const float* data() const { return values_.data(); }
    float operator[](std::size_t i) const { return values_[i]; }
    const std::vector<float>& values() const { return values_; }
    std::span<const float> span() const { return {values_.data(), values_.size()}; }

private:
    std::vector<float> values_;
};

// R x D row-major block of finite floats. R = 32 for visual features;
// arbitrary for raw per-image embeddings.
class FeatureBlock {
public:
    FeatureBlock() = default;
    FeatureBlock(std::size_t rows, std::size_t dim, std::vector<float> data);

    static FeatureBlock from_rows(const std::vector<std::vector<float>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t dim() const { return dim_; }
    std::span<const float> row(std::size_t r) const {
        return {data_.data() + r * dim_, dim_};
    }
    Vec row_vec(std::size_t r) const;
    const std::vector<float>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t dim_ = 0;
    std::vector<float> data_;
};

// Euclidean norm, accumulated in double.
double l2_norm(std::span<const float> v);
inline double l2_norm(const Vec& v) { return l2_norm(v.span()); }

// q.k / (|q||k|), clamped to [-1, 1]. Throws ZeroVectorError when either
// operand has zero norm and DimensionMismatchError on length mismatch.
double cosine_sim(std::span<const float> q, std::span<const float> k);
inline double cosine_sim(const Vec& q, const Vec& k) {
    return cosine_sim(q.span(), k.span());
}

// Element-wise arithmetic mean over rows. Throws EmptyBlockError when the
// block has no rows.
Vec mean_embed(const FeatureBlock& block);

}  // namespace memcap
