#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fefs/fuzzy.hpp"

namespace fefs {

struct ClassifierConfig {
    /// How per-feature similarities are combined into one class score.
    MeanKind mean_kind = MeanKind::geometric;
    double p = 2.0;
    std::vector<std::size_t> feature_subset;
};

struct Prediction {
    std::size_t sample_index = 0;
    std::size_t predicted_class = 0;
    std::vector<double> class_scores;
};

/// Mean of per-feature similarities. Values are floored at
/// normalization_floor so the geometric and harmonic forms stay finite.
double aggregate(std::span<const double> similarities, MeanKind kind);

double aggregate_similarity(std::span<const double> x, std::span<const double> v, const ClassifierConfig& config);

/// Index of the largest score; the lowest index wins ties.
std::size_t argmax(std::span<const double> scores);

std::vector<Prediction> classify(const Dataset& test, const IdealVectorSet& ideals, const ClassifierConfig& config);

double accuracy(std::span<const Prediction> predictions, std::span<const std::size_t> truth);

/// Per-feature similarities of every test sample against every prototype,
/// computed once so that many feature subsets can be scored cheaply.
/// Results match classify() exactly.
class SimilarityCache {
public:
    SimilarityCache(const Dataset& test, const IdealVectorSet& ideals, double p);

    [[nodiscard]] std::size_t samples() const noexcept { return samples_; }
    [[nodiscard]] std::size_t classes() const noexcept { return classes_; }
    [[nodiscard]] std::size_t features() const noexcept { return features_; }

    /// Predicted class index per sample using only `subset`.
    [[nodiscard]] std::vector<std::size_t> predict(std::span<const std::size_t> subset, MeanKind kind) const;

private:
    std::size_t samples_;
    std::size_t classes_;
    std::size_t features_;
    std::vector<double> sims_;  // [sample][class][feature]
};

/// CSV `sample_index,true_label,predicted_label,score_<class>...`.
void write_predictions_csv(std::ostream& out, std::span<const Prediction> predictions, const Dataset& test,
                           const IdealVectorSet& ideals);

}  // namespace fefs
