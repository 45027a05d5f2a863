#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fefs/data.hpp"
#include "fefs/entropy.hpp"

namespace fefs {

enum class BaselineMethod { chi_square, correlation, gain_ratio, info_gain, relieff, symmetrical_uncertainty };

inline constexpr BaselineMethod all_baselines[] = {
    BaselineMethod::chi_square, BaselineMethod::correlation, BaselineMethod::gain_ratio,
    BaselineMethod::info_gain,  BaselineMethod::relieff,     BaselineMethod::symmetrical_uncertainty,
};

std::string_view to_string(BaselineMethod method) noexcept;
BaselineMethod parse_baseline_method(std::string_view text);

enum class BinningStrategy { equal_width, equal_frequency };

struct DiscretizationSpec {
    std::size_t bins = 10;
    BinningStrategy strategy = BinningStrategy::equal_width;
};

/// Bin index per value. Equal-width puts the maximum in the last bin;
/// equal-frequency cuts at linear-interpolated quantiles with duplicate
/// cut points merged and each bin closed on its upper cut. A constant column
/// maps to bin 0.
std::vector<std::size_t> discretize(std::span<const double> column, const DiscretizationSpec& spec);

// Information-theoretic helpers over integer codes. Entropies are in bits.
double entropy_bits(std::span<const std::size_t> codes);
double joint_entropy_bits(std::span<const std::size_t> a, std::span<const std::size_t> b);
/// H(target | given)
double conditional_entropy_bits(std::span<const std::size_t> target, std::span<const std::size_t> given);
double info_gain(std::span<const std::size_t> feature_bins, std::span<const std::size_t> labels);
double gain_ratio(std::span<const std::size_t> feature_bins, std::span<const std::size_t> labels);
double symmetrical_uncertainty(std::span<const std::size_t> feature_bins, std::span<const std::size_t> labels);

/// Pearson chi-square statistic of the (bin x class) contingency table.
/// Empty rows and columns are ignored.
double chi_square(std::span<const std::size_t> feature_bins, std::span<const std::size_t> labels);

/// Pearson correlation; 0 when either side is constant.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

/// Multi-class ReliefF weights. Every sample is an anchor; `k` nearest hits
/// and `k` nearest misses per other class (fewer when a class is small) by
/// Manhattan distance on min-max scaled features, ties by sample index.
/// Misses are weighted by the prior of their class.
std::vector<double> relieff_weights(const Dataset& data, std::size_t k = 10);

/// Score every feature with `method`; higher is better.
FeatureRanking baseline_rank(const Dataset& train, BaselineMethod method, const DiscretizationSpec& disc = {});

}  // namespace fefs
