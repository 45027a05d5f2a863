#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fefs/data.hpp"

namespace fefs {

enum class MeanKind { arithmetic, geometric, harmonic };

std::string_view to_string(MeanKind kind) noexcept;
/// Accepts "arithmetic", "geometric", "harmonic" or their initials.
MeanKind parse_mean_kind(std::string_view text);

/// Arithmetic, geometric (as exp of mean log) or harmonic mean of `values`.
/// Zeros are passed through: the geometric and harmonic means become 0.
double mean(std::span<const double> values, MeanKind kind);

/// One prototype per class; row k is the mean of class k's training samples.
struct IdealVectorSet {
    Matrix vectors;
    std::vector<std::string> class_order;
    MeanKind mean_kind = MeanKind::arithmetic;
};

IdealVectorSet ideal_vector_set(const Dataset& train, MeanKind kind);

/// Generalized Lukasiewicz similarity (1 - |x^p - v^p|)^(1/p) of two
/// memberships in [0, 1].
double lukasiewicz_similarity(double x, double v, double p);

/// Per-feature similarities of every sample against every class prototype.
/// Row r = i * N + k holds sample i against class k.
struct SimilarityMatrix {
    Matrix entries;
    std::vector<std::pair<std::size_t, std::size_t>> row_index;
    double p = 1.0;

    [[nodiscard]] std::size_t rows() const noexcept { return entries.rows(); }
    [[nodiscard]] std::size_t features() const noexcept { return entries.cols(); }
};

SimilarityMatrix similarity_matrix(const Dataset& samples, const IdealVectorSet& ideals, double p);

/// CSV with `sample_index,class_index` followed by one column per feature.
void write_similarity_csv(std::ostream& out, const SimilarityMatrix& matrix,
                          std::span<const std::string> feature_names);

}  // namespace fefs
