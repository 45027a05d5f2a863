#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fefs/baselines.hpp"
#include "fefs/classify.hpp"
#include "fefs/data.hpp"
#include "fefs/entropy.hpp"
#include "fefs/fuzzy.hpp"

namespace fefs {

/// Which partition the entropy ranker builds its similarity matrix from.
enum class MatrixSource { train, test };

std::string_view to_string(MatrixSource source) noexcept;
MatrixSource parse_matrix_source(std::string_view text);

/// Settings shared by every repeated-split experiment. Defaults are the
/// geometric/geometric, p = 2, Luca, lowest-first configuration.
struct ExperimentConfig {
    std::size_t repeats = 1000;
    std::uint64_t master_seed = 0;
    MeanKind ideal_mean = MeanKind::geometric;
    MeanKind classifier_mean = MeanKind::geometric;
    EntropyKind entropy_kind = EntropyKind::luca;
    double p = 2.0;
    RemovalOrder removal_order = RemovalOrder::lowest_first;
    MatrixSource matrix_source = MatrixSource::train;
    double clip_percentile = 0.0;
    double train_fraction = 0.5;
    bool stratified = false;
    /// Worker threads; 0 means one per hardware thread. Never affects results.
    std::size_t threads = 0;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// A normalized train/test partition for one repeat.
struct PreparedSplit {
    std::uint64_t seed = 0;
    /// Number of discarded draws (a class missing from train, a constant
    /// training feature, or an empty partition) before this one.
    std::size_t redraws = 0;
    Split rows;
    Dataset train;
    Dataset test;
};

/// Draws the split for `repeat_index`, re-drawing with the next derived seed
/// until the training half supports every pipeline stage.
PreparedSplit prepare_split(const Dataset& data, const ExperimentConfig& config, std::size_t repeat_index);

/// Classification results as features are removed one at a time.
struct RemovalEvaluation {
    std::vector<std::size_t> eliminated;  // eliminated[t] is removed at step t + 1
    std::vector<double> accuracy;         // accuracy[t] after t removals
    /// correct[t][i]: test sample i classified correctly after t removals.
    std::vector<std::vector<std::uint8_t>> correct;
};

RemovalEvaluation evaluate_removal(const SimilarityCache& cache, std::span<const std::size_t> truth,
                                   const FeatureRanking& ranking, RemovalOrder order, MeanKind classifier_mean);

struct RepeatRecord {
    std::size_t repeat_index = 0;
    std::uint64_t seed = 0;
    std::size_t redraws = 0;
    FeatureRanking ranking;
    RemovalEvaluation removal;
    std::vector<std::size_t> test_rows;
};

/// One full pass: normalize, build prototypes, rank by fuzzy entropy and
/// classify the test half after each removal count.
RepeatRecord run_repeat(const Dataset& data, const ExperimentConfig& config, std::size_t repeat_index);

struct AccuracyCurve {
    std::vector<double> x;
    std::vector<double> mean_accuracy;
    std::vector<double> std_accuracy;
    std::string tag;
};

/// Column-wise mean and sample standard deviation of `samples[point][repeat]`.
AccuracyCurve summarize(std::vector<double> x, std::span<const std::vector<double>> samples, std::string tag);

struct RemovalExperiment {
    AccuracyCurve curve;  // x = number of features removed
    std::vector<RepeatRecord> records;
};

RemovalExperiment removal_curve(const Dataset& data, const ExperimentConfig& config);

/// (ideal-vector mean, classifier mean) pair, named like "G-A".
struct MeanCombo {
    MeanKind ideal = MeanKind::geometric;
    MeanKind classifier = MeanKind::geometric;

    [[nodiscard]] std::string name() const;
    friend bool operator==(const MeanCombo&, const MeanCombo&) = default;
};

MeanCombo parse_combo(std::string_view name);
/// All nine combos, A-A through H-H.
std::vector<MeanCombo> all_combos();
/// 0.5, 1.0, ..., 6.0
std::vector<double> default_p_grid();

struct SweepResult {
    std::vector<MeanCombo> combos;
    std::vector<double> p_grid;
    std::vector<AccuracyCurve> curves;                      // one per combo, x = p
    std::vector<std::vector<std::vector<double>>> accuracy; // [combo][p][repeat]
};

/// Full-feature accuracy for every combo at every p. All combos and p values
/// share the same splits.
SweepResult sweep_p(const Dataset& data, const ExperimentConfig& config, std::span<const double> p_grid,
                    std::span<const MeanCombo> combos);

struct AgreementResult {
    std::vector<EntropyKind> kinds;
    /// Per kind, per feature: min-max normalized entropy averaged over repeats.
    std::vector<std::vector<double>> mean_normalized;
    /// Features sorted by descending mean normalized score of kinds[0].
    std::vector<std::size_t> reference_order;
    /// spearman[a][b] between the mean normalized scores of kinds a and b.
    std::vector<std::vector<double>> spearman;
};

AgreementResult ranking_agreement(const Dataset& data, const ExperimentConfig& config, std::span<const EntropyKind> kinds);

/// Average ranks, ties share the mean of their positions (1-based).
std::vector<double> average_ranks(std::span<const double> values);
double spearman_correlation(std::span<const double> a, std::span<const double> b);

enum class McNemarMethod { exact_binomial, chi_square_cc };

struct McNemarResult {
    std::size_t b = 0;  // A correct, B wrong
    std::size_t c = 0;  // A wrong, B correct
    /// Continuity-corrected chi-square (|b - c| - 1)^2 / (b + c); 0 when b + c = 0.
    double statistic = 0.0;
    double p_value = 1.0;
    McNemarMethod method = McNemarMethod::exact_binomial;
};

/// Below this many discordant pairs the exact binomial test is used.
inline constexpr std::size_t mcnemar_exact_threshold = 25;

/// Two-sided McNemar test on discordant counts. Without `method` the exact
/// test is used when b + c < mcnemar_exact_threshold.
McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c, std::optional<McNemarMethod> method = std::nullopt);

McNemarResult mcnemar(std::span<const std::uint8_t> correct_a, std::span<const std::uint8_t> correct_b);

struct MethodRow {
    std::string method;
    double accuracy = 0.0;
    std::size_t selected_features = 0;
    std::size_t removed_features = 0;
    /// Against the proposed method; absent on the proposed row.
    std::optional<McNemarResult> versus_proposed;
};

struct ComparisonReport {
    /// Feature count at which the proposed method peaks.
    std::size_t reference_features = 0;
    std::vector<MethodRow> rows;         // proposed first, then all_baselines order
    std::vector<AccuracyCurve> curves;   // same order, x = number of features removed
};

/// Fuzzy-entropy ranking against the six baselines on shared splits.
/// Baselines eliminate their lowest-scoring feature first and may use at most
/// as many features as the proposed method's best operating point.
ComparisonReport compare_methods(const Dataset& data, const ExperimentConfig& config, const DiscretizationSpec& disc = {});

}  // namespace fefs
