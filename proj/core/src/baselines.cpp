#include "fefs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "fefs/error.hpp"

namespace fefs {

std::string_view to_string(BaselineMethod method) noexcept {
    switch (method) {
        case BaselineMethod::chi_square: return "chi-square";
        case BaselineMethod::correlation: return "correlation";
        case BaselineMethod::gain_ratio: return "gain-ratio";
        case BaselineMethod::info_gain: return "info-gain";
        case BaselineMethod::relieff: return "relieff";
        case BaselineMethod::symmetrical_uncertainty: return "symmetrical-uncertainty";
    }
    return "?";
}

BaselineMethod parse_baseline_method(std::string_view text) {
    for (auto m : all_baselines) {
        if (to_string(m) == text) return m;
    }
    throw error(errc::invalid_config, fmt::format("unknown baseline method '{}'", text));
}

std::vector<std::size_t> discretize(std::span<const double> column, const DiscretizationSpec& spec) {
    if (spec.bins < 2) throw error(errc::invalid_config, fmt::format("discretization needs at least 2 bins, got {}", spec.bins));
    if (column.empty()) throw error(errc::empty_column, "cannot discretize an empty column");

    std::vector<std::size_t> out(column.size(), 0);
    const auto [mn, mx] = std::minmax_element(column.begin(), column.end());
    const double lo = *mn;
    const double hi = *mx;
    if (!(lo < hi)) return out;

    if (spec.strategy == BinningStrategy::equal_width) {
        const double width = (hi - lo) / static_cast<double>(spec.bins);
        for (std::size_t i = 0; i < column.size(); ++i) {
            const auto b = static_cast<std::size_t>(std::floor((column[i] - lo) / width));
            out[i] = std::min(b, spec.bins - 1);
        }
        return out;
    }

    std::vector<double> edges;
    for (std::size_t b = 1; b < spec.bins; ++b)
        edges.push_back(percentile(column, 100.0 * static_cast<double>(b) / static_cast<double>(spec.bins)));
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i < column.size(); ++i)
        out[i] = static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), column[i]) - edges.begin());
    return out;
}

namespace {

double entropy_of_counts(const std::map<std::size_t, std::size_t>& counts, std::size_t n) {
    double h = 0.0;
    for (const auto& [code, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log2(p);
    }
    return h;
}

void check_aligned(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.size() != b.size())
        throw error(errc::length_mismatch, fmt::format("sequences of length {} and {}", a.size(), b.size()));
    if (a.empty()) throw error(errc::empty_column, "empty sequence");
}

}  // namespace

double entropy_bits(std::span<const std::size_t> codes) {
    if (codes.empty()) throw error(errc::empty_column, "entropy of an empty sequence");
    std::map<std::size_t, std::size_t> counts;
    for (auto c : codes) ++counts[c];
    return entropy_of_counts(counts, codes.size());
}

double joint_entropy_bits(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    check_aligned(a, b);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
    for (std::size_t i = 0; i < a.size(); ++i) ++counts[{a[i], b[i]}];
    double h = 0.0;
    for (const auto& [key, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(a.size());
        h -= p * std::log2(p);
    }
    return h;
}

double conditional_entropy_bits(std::span<const std::size_t> target, std::span<const std::size_t> given) {
    check_aligned(target, given);
    std::map<std::size_t, std::map<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < target.size(); ++i) ++groups[given[i]][target[i]];
    double h = 0.0;
    for (const auto& [g, counts] : groups) {
        std::size_t n_g = 0;
        for (const auto& [t, c] : counts) n_g += c;
        h += static_cast<double>(n_g) / static_cast<double>(target.size()) * entropy_of_counts(counts, n_g);
    }
    return h;
}

double info_gain(std::span<const std::size_t> feature_bins, std::span<const std::size_t> labels) {
    return std::max(0.0, entropy_bits(labels) - conditional_entropy_bits(labels, feature_bins));
}

double gain_ratio(std::span<const std::size_t> feature_bins, std::span<const std::size_t> labels) {
    const double h_f = entropy_bits(feature_bins);
    return h_f > 0.0 ? info_gain(feature_bins, labels) / h_f : 0.0;
}

double symmetrical_uncertainty(std::span<const std::size_t> feature_bins, std::span<const std::size_t> labels) {
    const double denom = entropy_bits(labels) + entropy_bits(feature_bins);
    return denom > 0.0 ? 2.0 * info_gain(feature_bins, labels) / denom : 0.0;
}

double chi_square(std::span<const std::size_t> feature_bins, std::span<const std::size_t> labels) {
    check_aligned(feature_bins, labels);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> cells;
    std::map<std::size_t, std::size_t> rows;
    std::map<std::size_t, std::size_t> cols;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ++cells[{feature_bins[i], labels[i]}];
        ++rows[feature_bins[i]];
        ++cols[labels[i]];
    }
    const auto n = static_cast<double>(labels.size());
    double stat = 0.0;
    for (const auto& [r, rc] : rows) {
        for (const auto& [c, cc] : cols) {
            const double expected = static_cast<double>(rc) * static_cast<double>(cc) / n;
            const auto it = cells.find({r, c});
            const double observed = it == cells.end() ? 0.0 : static_cast<double>(it->second);
            stat += (observed - expected) * (observed - expected) / expected;
        }
    }
    return stat;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw error(errc::length_mismatch, fmt::format("sequences of length {} and {}", a.size(), b.size()));
    if (a.empty()) throw error(errc::empty_column, "correlation of empty sequences");
    const auto n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> relieff_weights(const Dataset& data, std::size_t k) {
    const std::size_t m = data.samples();
    const std::size_t d = data.features();
    const auto counts = data.class_counts();
    if (std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) < 2)
        throw error(errc::degenerate_input, "ReliefF needs samples from at least two classes");

    std::vector<double> range(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        const auto col = data.values.column(j);
        const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
        range[j] = *mx - *mn;
    }
    auto diff = [&](std::size_t j, std::size_t a, std::size_t b) {
        return range[j] > 0.0 ? std::abs(data.values(a, j) - data.values(b, j)) / range[j] : 0.0;
    };

    std::vector<double> dist(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += diff(j, a, b);
            dist[a * m + b] = s;
            dist[b * m + a] = s;
        }
    }

    std::vector<std::vector<std::size_t>> members(data.classes());
    for (std::size_t i = 0; i < m; ++i) members[data.labels[i]].push_back(i);
    std::vector<double> prior(data.classes());
    for (std::size_t c = 0; c < prior.size(); ++c) prior[c] = static_cast<double>(counts[c]) / static_cast<double>(m);

    std::vector<double> w(d, 0.0);
    const auto anchors = static_cast<double>(m);
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t own = data.labels[i];
        for (std::size_t c = 0; c < members.size(); ++c) {
            pool.clear();
            for (auto s : members[c]) {
                if (s != i) pool.push_back(s);
            }
            const std::size_t take = std::min(k, pool.size());
            if (take == 0) continue;
            std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                              [&](std::size_t a, std::size_t b) {
                                  const double da = dist[i * m + a];
                                  const double db = dist[i * m + b];
                                  return da < db || (da == db && a < b);
                              });
            const double scale = c == own ? -1.0 / (anchors * static_cast<double>(take))
                                          : prior[c] / (1.0 - prior[own]) / (anchors * static_cast<double>(take));
            for (std::size_t j = 0; j < d; ++j) {
                double s = 0.0;
                for (std::size_t n = 0; n < take; ++n) s += diff(j, i, pool[n]);
                w[j] += scale * s;
            }
        }
    }
    return w;
}

FeatureRanking baseline_rank(const Dataset& train, BaselineMethod method, const DiscretizationSpec& disc) {
    if (train.samples() == 0) throw error(errc::empty_dataset, "cannot rank features of an empty dataset");
    const auto counts = train.class_counts();
    if (std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) < 2)
        throw error(errc::degenerate_input, fmt::format("{} needs samples from at least two classes", to_string(method)));

    if (method == BaselineMethod::relieff)
        return make_ranking(relieff_weights(train), ScoreDirection::higher_is_better);

    const std::size_t d = train.features();
    std::vector<double> scores(d, 0.0);
    std::vector<double> class_codes(train.labels.begin(), train.labels.end());
    for (std::size_t j = 0; j < d; ++j) {
        const auto col = train.values.column(j);
        if (method == BaselineMethod::correlation) {
            scores[j] = std::abs(pearson_correlation(col, class_codes));
            continue;
        }
        const auto bins = discretize(col, disc);
        switch (method) {
            case BaselineMethod::chi_square: scores[j] = chi_square(bins, train.labels); break;
            case BaselineMethod::info_gain: scores[j] = info_gain(bins, train.labels); break;
            case BaselineMethod::gain_ratio: scores[j] = gain_ratio(bins, train.labels); break;
            case BaselineMethod::symmetrical_uncertainty: scores[j] = symmetrical_uncertainty(bins, train.labels); break;
            default: break;
        }
    }
    return make_ranking(std::move(scores), ScoreDirection::higher_is_better);
}

}  // namespace fefs
