#include "memcap/vecmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace memcap {

namespace {

void check_finite(std::span<const float> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(std::string(what) + ": non-finite entry at index " +
                        std::to_string(i));
        }
    }
}

}  // namespace

Vec::Vec(std::vector<float> values) : values_(std::move(values)) {
    check_finite(values_, "Vec");
}

FeatureBlock::FeatureBlock(std::size_t rows, std::size_t dim, std::vector<float> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
    if (rows_ == 0) throw EmptyBlockError("FeatureBlock: zero rows");
    if (data_.size() != rows_ * dim_) {
        throw ShapeMismatchError("FeatureBlock: data size " + std::to_string(data_.size()) +
                                 " does not match " + std::to_string(rows_) + "x" +
                                 std::to_string(dim_));
    }
    check_finite(data_, "FeatureBlock");
}

FeatureBlock FeatureBlock::from_rows(const std::vector<std::vector<float>>& rows) {
    if (rows.empty()) throw EmptyBlockError("FeatureBlock: zero rows");
    const std::size_t dim = rows.front().size();
    std::vector<float> data;
    data.reserve(rows.size() * dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != dim) {
            throw DimensionMismatchError("FeatureBlock: row " + std::to_string(r) +
                                         " has dim " + std::to_string(rows[r].size()) +
                                         ", expected " + std::to_string(dim));
        }
        data.insert(data.end(), rows[r].begin(), rows[r].end());
    }
    return FeatureBlock(rows.size(), dim, std::move(data));
}

Vec FeatureBlock::row_vec(std::size_t r) const {
    const auto view = row(r);
    return Vec(std::vector<float>(view.begin(), view.end()));
}

double l2_norm(std::span<const float> v) {
    double acc = 0.0;
    for (const float x : v) acc += static_cast<double>(x) * static_cast<double>(x);
    return std::sqrt(acc);
}

double cosine_sim(std::span<const float> q, std::span<const float> k) {
    if (q.size() != k.size()) {
        throw DimensionMismatchError("cosine_sim: dim " + std::to_string(q.size()) +
                                     " vs " + std::to_string(k.size()));
    }
    double dot = 0.0, qq = 0.0, kk = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double a = q[i];
        const double b = k[i];
        dot += a * b;
        qq += a * a;
        kk += b * b;
    }
    if (qq == 0.0) throw ZeroVectorError("cosine_sim: left operand has zero norm");
    if (kk == 0.0) throw ZeroVectorError("cosine_sim: right operand has zero norm");
    const double sim = dot / (std::sqrt(qq) * std::sqrt(kk));
    return std::clamp(sim, -1.0, 1.0);
}

Vec mean_embed(const FeatureBlock& block) {
    if (block.rows() == 0) throw EmptyBlockError("mean_embed: empty block");
    const std::size_t dim = block.dim();
    std::vector<double> acc(dim, 0.0);
    for (std::size_t r = 0; r < block.rows(); ++r) {
        const auto row = block.row(r);
        for (std::size_t c = 0; c < dim; ++c) acc[c] += row[c];
    }
    std::vector<float> mean(dim);
    const double inv = 1.0 / static_cast<double>(block.rows());
    for (std::size_t c = 0; c < dim; ++c) mean[c] = static_cast<float>(acc[c] * inv);
    return Vec(std::move(mean));
}

}  // namespace memcap
