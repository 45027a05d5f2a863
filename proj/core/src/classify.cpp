#include "fefs/classify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fefs/error.hpp"

namespace fefs {

namespace {

std::vector<std::size_t> canonical_subset(std::span<const std::size_t> subset, std::size_t d) {
    if (subset.empty()) throw error(errc::empty_subset, "classifier feature subset is empty");
    std::vector<std::size_t> out(subset.begin(), subset.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.back() >= d)
        throw error(errc::dimension_mismatch, fmt::format("feature {} out of range ({} features)", out.back(), d));
    return out;
}

}  // namespace

double aggregate(std::span<const double> similarities, MeanKind kind) {
    if (similarities.empty()) throw error(errc::empty_subset, "aggregate over an empty feature subset");
    const auto n = static_cast<double>(similarities.size());
    double acc = 0.0;
    switch (kind) {
        case MeanKind::arithmetic:
            for (double s : similarities) acc += s;
            return acc / n;
        case MeanKind::geometric:
            for (double s : similarities) acc += std::log(std::max(s, normalization_floor));
            return std::exp(acc / n);
        case MeanKind::harmonic:
            for (double s : similarities) acc += 1.0 / std::max(s, normalization_floor);
            return n / acc;
    }
    return 0.0;
}

double aggregate_similarity(std::span<const double> x, std::span<const double> v, const ClassifierConfig& config) {
    if (x.size() != v.size())
        throw error(errc::dimension_mismatch, fmt::format("sample has {} features, ideal vector {}", x.size(), v.size()));
    const auto subset = canonical_subset(config.feature_subset, x.size());
    std::vector<double> sims(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) sims[i] = lukasiewicz_similarity(x[subset[i]], v[subset[i]], config.p);
    return aggregate(sims, config.mean_kind);
}

std::size_t argmax(std::span<const double> scores) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k) {
        if (scores[k] > scores[best]) best = k;
    }
    return best;
}

std::vector<Prediction> classify(const Dataset& test, const IdealVectorSet& ideals, const ClassifierConfig& config) {
    if (test.features() != ideals.vectors.cols())
        throw error(errc::dimension_mismatch,
                    fmt::format("test data has {} features, ideal vectors {}", test.features(), ideals.vectors.cols()));
    if (!(config.p > 0.0)) throw error(errc::domain_error, fmt::format("similarity exponent p = {} must be > 0", config.p));

    ClassifierConfig canonical = config;
    canonical.feature_subset = canonical_subset(config.feature_subset, test.features());

    std::vector<Prediction> out(test.samples());
    for (std::size_t i = 0; i < test.samples(); ++i) {
        auto& pred = out[i];
        pred.sample_index = i;
        pred.class_scores.resize(ideals.vectors.rows());
        for (std::size_t k = 0; k < ideals.vectors.rows(); ++k)
            pred.class_scores[k] = aggregate_similarity(test.values.row(i), ideals.vectors.row(k), canonical);
        pred.predicted_class = argmax(pred.class_scores);
    }
    return out;
}

double accuracy(std::span<const Prediction> predictions, std::span<const std::size_t> truth) {
    if (predictions.size() != truth.size())
        throw error(errc::length_mismatch,
                    fmt::format("{} predictions for {} labels", predictions.size(), truth.size()));
    if (truth.empty()) throw error(errc::length_mismatch, "accuracy of an empty prediction set");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += predictions[i].predicted_class == truth[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

SimilarityCache::SimilarityCache(const Dataset& test, const IdealVectorSet& ideals, double p)
    : samples_(test.samples()), classes_(ideals.vectors.rows()), features_(test.features()) {
    if (test.features() != ideals.vectors.cols())
        throw error(errc::dimension_mismatch,
                    fmt::format("test data has {} features, ideal vectors {}", test.features(), ideals.vectors.cols()));
    sims_.resize(samples_ * classes_ * features_);
    auto* dst = sims_.data();
    for (std::size_t i = 0; i < samples_; ++i) {
        const auto x = test.values.row(i);
        for (std::size_t k = 0; k < classes_; ++k) {
            const auto v = ideals.vectors.row(k);
            for (std::size_t j = 0; j < features_; ++j) *dst++ = lukasiewicz_similarity(x[j], v[j], p);
        }
    }
}

std::vector<std::size_t> SimilarityCache::predict(std::span<const std::size_t> subset, MeanKind kind) const {
    const auto cols = canonical_subset(subset, features_);
    std::vector<double> picked(cols.size());
    std::vector<double> scores(classes_);
    std::vector<std::size_t> out(samples_);
    for (std::size_t i = 0; i < samples_; ++i) {
        for (std::size_t k = 0; k < classes_; ++k) {
            const double* row = sims_.data() + (i * classes_ + k) * features_;
            for (std::size_t c = 0; c < cols.size(); ++c) picked[c] = row[cols[c]];
            scores[k] = aggregate(picked, kind);
        }
        out[i] = argmax(scores);
    }
    return out;
}

void write_predictions_csv(std::ostream& out, std::span<const Prediction> predictions, const Dataset& test,
                           const IdealVectorSet& ideals) {
    fmt::print(out, "sample_index,true_label,predicted_label");
    for (const auto& c : ideals.class_order) fmt::print(out, ",score_{}", c);
    fmt::print(out, "\n");
    for (const auto& p : predictions) {
        fmt::print(out, "{},{},{}", p.sample_index, test.class_names.at(test.labels.at(p.sample_index)),
                   ideals.class_order.at(p.predicted_class));
        for (double s : p.class_scores) fmt::print(out, ",{:.6g}", s);
        fmt::print(out, "\n");
    }
}

}  // namespace fefs
