#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fefs/fuzzy.hpp"

namespace fefs {

/// De Luca-Termini, Parkash and Kosko fuzzy entropies.
enum class EntropyKind { luca, parkash, kosko };

std::string_view to_string(EntropyKind kind) noexcept;
EntropyKind parse_entropy_kind(std::string_view text);

enum class ScoreDirection { lower_is_better, higher_is_better };

/// Which end of the score scale is eliminated first.
enum class RemovalOrder { lowest_first, highest_first };

std::string_view to_string(RemovalOrder order) noexcept;
/// Accepts "lowest-first" / "highest-first".
RemovalOrder parse_removal_order(std::string_view text);

/// Scores indexed by original feature position, plus the feature indices in
/// preferred order (best first under `direction`, ties by ascending index).
struct FeatureRanking {
    std::vector<std::size_t> order;
    std::vector<double> scores;
    ScoreDirection direction = ScoreDirection::lower_is_better;
};

FeatureRanking make_ranking(std::vector<double> scores, ScoreDirection direction);

double fuzzy_entropy(std::span<const double> memberships, EntropyKind kind);

/// Entropy of every column of the similarity matrix; lower is better.
FeatureRanking rank_features(const SimilarityMatrix& matrix, EntropyKind kind);

/// Feature indices in the order they get removed: element t is removed at
/// step t + 1. Ties go to the lower original index.
std::vector<std::size_t> elimination_order(const FeatureRanking& ranking, RemovalOrder order);

/// Element t is the ascending set of surviving features after t removals,
/// for t = 0 .. D-1.
std::vector<std::vector<std::size_t>> removal_sequence(const FeatureRanking& ranking, RemovalOrder order);

/// CSV `feature_index,feature_name,score,rank`, prefixed with a `method`
/// column when `method` is given. Rank 1 is order[0].
void write_ranking_csv(std::ostream& out, const FeatureRanking& ranking, std::span<const std::string> feature_names,
                       std::optional<std::string_view> method = std::nullopt);

}  // namespace fefs
