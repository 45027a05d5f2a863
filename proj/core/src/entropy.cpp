#include "fefs/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fefs/error.hpp"

namespace fefs {

std::string_view to_string(EntropyKind kind) noexcept {
    switch (kind) {
        case EntropyKind::luca: return "luca";
        case EntropyKind::parkash: return "parkash";
        case EntropyKind::kosko: return "kosko";
    }
    return "?";
}

EntropyKind parse_entropy_kind(std::string_view text) {
    if (text == "luca") return EntropyKind::luca;
    if (text == "parkash") return EntropyKind::parkash;
    if (text == "kosko") return EntropyKind::kosko;
    throw error(errc::invalid_config, fmt::format("unknown entropy kind '{}'", text));
}

std::string_view to_string(RemovalOrder order) noexcept {
    return order == RemovalOrder::lowest_first ? "lowest-first" : "highest-first";
}

RemovalOrder parse_removal_order(std::string_view text) {
    if (text == "lowest-first") return RemovalOrder::lowest_first;
    if (text == "highest-first") return RemovalOrder::highest_first;
    throw error(errc::invalid_config, fmt::format("unknown removal order '{}'", text));
}

FeatureRanking make_ranking(std::vector<double> scores, ScoreDirection direction) {
    FeatureRanking out;
    out.order.resize(scores.size());
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
        return direction == ScoreDirection::lower_is_better ? scores[a] < scores[b] : scores[a] > scores[b];
    });
    out.scores = std::move(scores);
    out.direction = direction;
    return out;
}

double fuzzy_entropy(std::span<const double> memberships, EntropyKind kind) {
    if (memberships.empty()) throw error(errc::empty_column, "fuzzy entropy of an empty column");
    for (double m : memberships) {
        if (!(m >= 0.0 && m <= 1.0)) throw error(errc::domain_error, fmt::format("membership {} outside [0, 1]", m));
    }

    switch (kind) {
        case EntropyKind::luca: {
            // 0 log 0 := 0
            auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
            double acc = 0.0;
            for (double m : memberships) acc += xlogx(m) + xlogx(1.0 - m);
            return -acc;
        }
        case EntropyKind::parkash: {
            constexpr double half_pi = std::numbers::pi / 2.0;
            double acc = 0.0;
            for (double m : memberships) acc += std::sin(half_pi * m) + std::sin(half_pi * (1.0 - m)) - 1.0;
            return acc;
        }
        case EntropyKind::kosko: {
            double overlap = 0.0;
            double underlap = 0.0;
            for (double m : memberships) {
                overlap += std::min(m, 1.0 - m);
                underlap += std::max(m, 1.0 - m);
            }
            return underlap > 0.0 ? overlap / underlap : 0.0;
        }
    }
    return 0.0;
}

FeatureRanking rank_features(const SimilarityMatrix& matrix, EntropyKind kind) {
    if (matrix.entries.empty()) throw error(errc::empty_column, "cannot rank features of an empty similarity matrix");
    std::vector<double> scores(matrix.features());
    for (std::size_t j = 0; j < matrix.features(); ++j) scores[j] = fuzzy_entropy(matrix.entries.column(j), kind);
    return make_ranking(std::move(scores), ScoreDirection::lower_is_better);
}

std::vector<std::size_t> elimination_order(const FeatureRanking& ranking, RemovalOrder order) {
    const auto& s = ranking.scores;
    std::vector<std::size_t> out(s.size());
    std::iota(out.begin(), out.end(), std::size_t{0});
    std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        return order == RemovalOrder::lowest_first ? s[a] < s[b] : s[a] > s[b];
    });
    return out;
}

std::vector<std::vector<std::size_t>> removal_sequence(const FeatureRanking& ranking, RemovalOrder order) {
    const std::size_t d = ranking.scores.size();
    std::vector<bool> alive(d, true);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(d);

    auto survivors = [&] {
        std::vector<std::size_t> s;
        for (std::size_t j = 0; j < d; ++j) {
            if (alive[j]) s.push_back(j);
        }
        return s;
    };

    // Greedy: drop the current extreme, one feature per step.
    for (std::size_t t = 0; t < d; ++t) {
        out.push_back(survivors());
        if (t + 1 == d) break;
        std::size_t pick = d;
        for (std::size_t j = 0; j < d; ++j) {
            if (!alive[j]) continue;
            if (pick == d) {
                pick = j;
                continue;
            }
            const bool better = order == RemovalOrder::lowest_first ? ranking.scores[j] < ranking.scores[pick]
                                                                    : ranking.scores[j] > ranking.scores[pick];
            if (better) pick = j;
        }
        alive[pick] = false;
    }
    return out;
}

void write_ranking_csv(std::ostream& out, const FeatureRanking& ranking, std::span<const std::string> feature_names,
                       std::optional<std::string_view> method) {
    std::vector<std::size_t> rank_of(ranking.order.size());
    for (std::size_t r = 0; r < ranking.order.size(); ++r) rank_of[ranking.order[r]] = r + 1;

    if (method) fmt::print(out, "method,");
    fmt::print(out, "feature_index,feature_name,score,rank\n");
    for (std::size_t r = 0; r < ranking.order.size(); ++r) {
        const auto j = ranking.order[r];
        if (method) fmt::print(out, "{},", *method);
        fmt::print(out, "{},{},{:.6g},{}\n", j, j < feature_names.size() ? feature_names[j] : fmt::format("f{}", j),
                   ranking.scores[j], rank_of[j]);
    }
}

}  // namespace fefs
