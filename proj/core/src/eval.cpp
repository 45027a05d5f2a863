#include "fefs/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "fefs/error.hpp"
#include "fefs/random.hpp"

namespace fefs {

namespace {

constexpr std::size_t max_split_attempts = 1000;

/// Runs fn(i) for i in [0, n). Each index writes only its own output slot,
/// so results do not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

void check_config(const ExperimentConfig& config) {
    if (config.repeats == 0) throw error(errc::invalid_config, "repeats must be at least 1");
    if (!(config.p > 0.0)) throw error(errc::invalid_config, fmt::format("p = {} must be > 0", config.p));
}

std::vector<std::size_t> all_features(std::size_t d) {
    std::vector<std::size_t> out(d);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

double fraction_correct(std::span<const std::size_t> predicted, std::span<const std::size_t> truth,
                        std::vector<std::uint8_t>* correct) {
    std::size_t hits = 0;
    if (correct) correct->resize(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool ok = predicted[i] == truth[i];
        hits += ok ? 1 : 0;
        if (correct) (*correct)[i] = ok ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::string config_tag(const ExperimentConfig& c) {
    return fmt::format("{}/{}/{}/p={}", MeanCombo{c.ideal_mean, c.classifier_mean}.name(), to_string(c.entropy_kind),
                       to_string(c.removal_order), c.p);
}

}  // namespace

std::string_view to_string(MatrixSource source) noexcept { return source == MatrixSource::train ? "train" : "test"; }

MatrixSource parse_matrix_source(std::string_view text) {
    if (text == "train") return MatrixSource::train;
    if (text == "test") return MatrixSource::test;
    throw error(errc::invalid_config, fmt::format("unknown matrix source '{}'", text));
}

PreparedSplit prepare_split(const Dataset& data, const ExperimentConfig& config, std::size_t repeat_index) {
    for (std::size_t attempt = 0; attempt < max_split_attempts; ++attempt) {
        PreparedSplit out;
        out.seed = derive_seed(config.master_seed, repeat_index, attempt);
        out.redraws = attempt;
        try {
            out.rows = split_indices(data, SplitSpec{out.seed, config.train_fraction, config.stratified});
        } catch (const error& e) {
            if (e.code() == errc::degenerate_split && config.stratified) throw;
            continue;
        }
        auto train = data.select_rows(out.rows.train_rows);
        const auto counts = train.class_counts();
        if (std::find(counts.begin(), counts.end(), std::size_t{0}) != counts.end()) continue;
        try {
            const auto params = fit_normalization(train, config.clip_percentile);
            out.train = apply_normalization(params, train);
            out.test = apply_normalization(params, data.select_rows(out.rows.test_rows));
        } catch (const error& e) {
            if (e.code() != errc::constant_feature) throw;
            continue;
        }
        return out;
    }
    throw error(errc::degenerate_split, fmt::format("no usable split for repeat {} after {} attempts", repeat_index,
                                                    max_split_attempts));
}

RemovalEvaluation evaluate_removal(const SimilarityCache& cache, std::span<const std::size_t> truth,
                                   const FeatureRanking& ranking, RemovalOrder order, MeanKind classifier_mean) {
    const std::size_t d = cache.features();
    if (ranking.scores.size() != d)
        throw error(errc::dimension_mismatch, fmt::format("ranking covers {} features, data has {}", ranking.scores.size(), d));
    if (truth.size() != cache.samples())
        throw error(errc::length_mismatch, fmt::format("{} labels for {} test samples", truth.size(), cache.samples()));

    RemovalEvaluation out;
    out.eliminated = elimination_order(ranking, order);
    out.accuracy.resize(d);
    out.correct.resize(d);
    std::vector<bool> alive(d, true);
    std::vector<std::size_t> subset;
    for (std::size_t t = 0; t < d; ++t) {
        if (t > 0) alive[out.eliminated[t - 1]] = false;
        subset.clear();
        for (std::size_t j = 0; j < d; ++j) {
            if (alive[j]) subset.push_back(j);
        }
        const auto predicted = cache.predict(subset, classifier_mean);
        out.accuracy[t] = fraction_correct(predicted, truth, &out.correct[t]);
    }
    return out;
}

RepeatRecord run_repeat(const Dataset& data, const ExperimentConfig& config, std::size_t repeat_index) {
    check_config(config);
    auto prepared = prepare_split(data, config, repeat_index);
    const auto ideals = ideal_vector_set(prepared.train, config.ideal_mean);
    const auto& source = config.matrix_source == MatrixSource::train ? prepared.train : prepared.test;
    const auto matrix = similarity_matrix(source, ideals, config.p);

    RepeatRecord rec;
    rec.repeat_index = repeat_index;
    rec.seed = prepared.seed;
    rec.redraws = prepared.redraws;
    rec.ranking = rank_features(matrix, config.entropy_kind);
    const SimilarityCache cache(prepared.test, ideals, config.p);
    rec.removal = evaluate_removal(cache, prepared.test.labels, rec.ranking, config.removal_order, config.classifier_mean);
    rec.test_rows = std::move(prepared.rows.test_rows);
    return rec;
}

AccuracyCurve summarize(std::vector<double> x, std::span<const std::vector<double>> samples, std::string tag) {
    if (x.size() != samples.size())
        throw error(errc::length_mismatch, fmt::format("{} grid points for {} sample columns", x.size(), samples.size()));
    AccuracyCurve out;
    out.x = std::move(x);
    out.tag = std::move(tag);
    for (const auto& s : samples) {
        const auto n = static_cast<double>(s.size());
        double m = 0.0;
        for (double v : s) m += v;
        m /= n;
        double ss = 0.0;
        for (double v : s) ss += (v - m) * (v - m);
        out.mean_accuracy.push_back(m);
        out.std_accuracy.push_back(s.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0);
    }
    return out;
}

RemovalExperiment removal_curve(const Dataset& data, const ExperimentConfig& config) {
    check_config(config);
    RemovalExperiment out;
    out.records.resize(config.repeats);
    parallel_for(config.repeats, config.threads, [&](std::size_t r) { out.records[r] = run_repeat(data, config, r); });

    const std::size_t d = data.features();
    std::vector<std::vector<double>> samples(d, std::vector<double>(config.repeats));
    for (std::size_t r = 0; r < config.repeats; ++r) {
        for (std::size_t t = 0; t < d; ++t) samples[t][r] = out.records[r].removal.accuracy[t];
    }
    std::vector<double> x(d);
    std::iota(x.begin(), x.end(), 0.0);
    out.curve = summarize(std::move(x), samples, config_tag(config));
    return out;
}

std::string MeanCombo::name() const {
    auto letter = [](MeanKind k) {
        switch (k) {
            case MeanKind::arithmetic: return 'A';
            case MeanKind::geometric: return 'G';
            case MeanKind::harmonic: return 'H';
        }
        return '?';
    };
    return fmt::format("{}-{}", letter(ideal), letter(classifier));
}

MeanCombo parse_combo(std::string_view name) {
    for (const auto& c : all_combos()) {
        if (c.name() == name) return c;
    }
    throw error(errc::invalid_config, fmt::format("unknown combination '{}' (expected A-A ... H-H)", name));
}

std::vector<MeanCombo> all_combos() {
    std::vector<MeanCombo> out;
    for (auto ideal : {MeanKind::arithmetic, MeanKind::geometric, MeanKind::harmonic}) {
        for (auto cls : {MeanKind::arithmetic, MeanKind::geometric, MeanKind::harmonic}) out.push_back({ideal, cls});
    }
    return out;
}

std::vector<double> default_p_grid() {
    std::vector<double> out;
    for (int i = 1; i <= 12; ++i) out.push_back(0.5 * i);
    return out;
}

SweepResult sweep_p(const Dataset& data, const ExperimentConfig& config, std::span<const double> p_grid,
                    std::span<const MeanCombo> combos) {
    check_config(config);
    if (p_grid.empty()) throw error(errc::invalid_config, "p grid is empty");
    if (combos.empty()) throw error(errc::invalid_config, "no combinations to sweep");
    for (double p : p_grid) {
        if (!(p > 0.0)) throw error(errc::invalid_config, fmt::format("p = {} must be > 0", p));
    }

    SweepResult out;
    out.combos.assign(combos.begin(), combos.end());
    out.p_grid.assign(p_grid.begin(), p_grid.end());
    out.accuracy.assign(combos.size(),
                        std::vector<std::vector<double>>(p_grid.size(), std::vector<double>(config.repeats)));

    const auto everything = all_features(data.features());
    parallel_for(config.repeats, config.threads, [&](std::size_t r) {
        const auto prepared = prepare_split(data, config, r);
        for (auto ideal_kind : {MeanKind::arithmetic, MeanKind::geometric, MeanKind::harmonic}) {
            if (std::none_of(combos.begin(), combos.end(), [&](const MeanCombo& c) { return c.ideal == ideal_kind; }))
                continue;
            const auto ideals = ideal_vector_set(prepared.train, ideal_kind);
            for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
                const SimilarityCache cache(prepared.test, ideals, p_grid[pi]);
                for (std::size_t ci = 0; ci < combos.size(); ++ci) {
                    if (combos[ci].ideal != ideal_kind) continue;
                    const auto predicted = cache.predict(everything, combos[ci].classifier);
                    out.accuracy[ci][pi][r] = fraction_correct(predicted, prepared.test.labels, nullptr);
                }
            }
        }
    });

    for (std::size_t ci = 0; ci < combos.size(); ++ci)
        out.curves.push_back(summarize(out.p_grid, out.accuracy[ci], combos[ci].name()));
    return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double spearman_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw error(errc::length_mismatch, fmt::format("sequences of length {} and {}", a.size(), b.size()));
    if (a.empty()) throw error(errc::empty_column, "rank correlation of empty sequences");
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const auto n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0) return saa == sbb ? 1.0 : 0.0;
    return sab / std::sqrt(saa * sbb);
}

AgreementResult ranking_agreement(const Dataset& data, const ExperimentConfig& config, std::span<const EntropyKind> kinds) {
    check_config(config);
    if (kinds.empty()) throw error(errc::invalid_config, "no entropy kinds to compare");
    const std::size_t d = data.features();

    // per_repeat[r][kind][feature]
    std::vector<std::vector<std::vector<double>>> per_repeat(config.repeats);
    parallel_for(config.repeats, config.threads, [&](std::size_t r) {
        const auto prepared = prepare_split(data, config, r);
        const auto ideals = ideal_vector_set(prepared.train, config.ideal_mean);
        const auto& source = config.matrix_source == MatrixSource::train ? prepared.train : prepared.test;
        const auto matrix = similarity_matrix(source, ideals, config.p);
        auto& slot = per_repeat[r];
        for (auto kind : kinds) {
            auto scores = rank_features(matrix, kind).scores;
            const auto [mn, mx] = std::minmax_element(scores.begin(), scores.end());
            const double lo = *mn;
            const double span = *mx - lo;
            for (double& s : scores) s = span > 0.0 ? (s - lo) / span : 0.0;
            slot.push_back(std::move(scores));
        }
    });

    AgreementResult out;
    out.kinds.assign(kinds.begin(), kinds.end());
    out.mean_normalized.assign(kinds.size(), std::vector<double>(d, 0.0));
    for (std::size_t r = 0; r < config.repeats; ++r) {
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            for (std::size_t j = 0; j < d; ++j) out.mean_normalized[k][j] += per_repeat[r][k][j];
        }
    }
    for (auto& row : out.mean_normalized) {
        for (double& v : row) v /= static_cast<double>(config.repeats);
    }

    out.reference_order = make_ranking(out.mean_normalized[0], ScoreDirection::higher_is_better).order;
    out.spearman.assign(kinds.size(), std::vector<double>(kinds.size(), 1.0));
    for (std::size_t a = 0; a < kinds.size(); ++a) {
        for (std::size_t b = 0; b < kinds.size(); ++b) {
            if (a != b) out.spearman[a][b] = spearman_correlation(out.mean_normalized[a], out.mean_normalized[b]);
        }
    }
    return out;
}

McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c, std::optional<McNemarMethod> method) {
    McNemarResult out;
    out.b = b;
    out.c = c;
    const std::size_t n = b + c;
    if (n > 0) {
        const double diff = std::abs(static_cast<double>(b) - static_cast<double>(c)) - 1.0;
        out.statistic = std::max(diff, 0.0) * std::max(diff, 0.0) / static_cast<double>(n);
    }
    out.method = method.value_or(n < mcnemar_exact_threshold ? McNemarMethod::exact_binomial : McNemarMethod::chi_square_cc);
    if (n == 0) {
        out.p_value = 1.0;
        return out;
    }

    if (out.method == McNemarMethod::exact_binomial) {
        // 2 * P(X <= min(b, c)) for X ~ Binomial(n, 1/2), summed in log space
        const std::size_t k = std::min(b, c);
        const double log_half_n = static_cast<double>(n) * std::log(0.5);
        const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
        double tail = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            const double log_term = lg_n - std::lgamma(static_cast<double>(i) + 1.0) -
                                    std::lgamma(static_cast<double>(n - i) + 1.0) + log_half_n;
            tail += std::exp(log_term);
        }
        out.p_value = std::min(1.0, 2.0 * tail);
    } else {
        // chi-square with one degree of freedom: P(X > s) = erfc(sqrt(s / 2))
        out.p_value = std::min(1.0, std::erfc(std::sqrt(out.statistic / 2.0)));
    }
    return out;
}

McNemarResult mcnemar(std::span<const std::uint8_t> correct_a, std::span<const std::uint8_t> correct_b) {
    if (correct_a.size() != correct_b.size())
        throw error(errc::length_mismatch,
                    fmt::format("correctness sequences of length {} and {}", correct_a.size(), correct_b.size()));
    std::size_t b = 0;
    std::size_t c = 0;
    for (std::size_t i = 0; i < correct_a.size(); ++i) {
        if (correct_a[i] && !correct_b[i]) ++b;
        if (!correct_a[i] && correct_b[i]) ++c;
    }
    return mcnemar_from_counts(b, c);
}

ComparisonReport compare_methods(const Dataset& data, const ExperimentConfig& config, const DiscretizationSpec& disc) {
    check_config(config);
    const std::size_t d = data.features();
    constexpr std::size_t n_methods = 1 + std::size(all_baselines);

    // evals[r][method]
    std::vector<std::vector<RemovalEvaluation>> evals(config.repeats);
    parallel_for(config.repeats, config.threads, [&](std::size_t r) {
        const auto prepared = prepare_split(data, config, r);
        const auto ideals = ideal_vector_set(prepared.train, config.ideal_mean);
        const auto& source = config.matrix_source == MatrixSource::train ? prepared.train : prepared.test;
        const auto fuzzy_ranking = rank_features(similarity_matrix(source, ideals, config.p), config.entropy_kind);
        const SimilarityCache cache(prepared.test, ideals, config.p);

        auto& slot = evals[r];
        slot.reserve(n_methods);
        slot.push_back(evaluate_removal(cache, prepared.test.labels, fuzzy_ranking, config.removal_order,
                                        config.classifier_mean));
        for (auto method : all_baselines) {
            const auto ranking = baseline_rank(prepared.train, method, disc);
            slot.push_back(evaluate_removal(cache, prepared.test.labels, ranking, RemovalOrder::lowest_first,
                                            config.classifier_mean));
        }
    });

    ComparisonReport out;
    std::vector<double> x(d);
    std::iota(x.begin(), x.end(), 0.0);
    for (std::size_t m = 0; m < n_methods; ++m) {
        std::vector<std::vector<double>> samples(d, std::vector<double>(config.repeats));
        for (std::size_t r = 0; r < config.repeats; ++r) {
            for (std::size_t t = 0; t < d; ++t) samples[t][r] = evals[r][m].accuracy[t];
        }
        out.curves.push_back(summarize(x, samples, m == 0 ? "proposed" : std::string(to_string(all_baselines[m - 1]))));
    }

    // Best removal count within [first_t, d); ties prefer more removals.
    auto best_t = [&](const AccuracyCurve& curve, std::size_t first_t) {
        std::size_t best = first_t;
        for (std::size_t t = first_t; t < d; ++t) {
            if (curve.mean_accuracy[t] >= curve.mean_accuracy[best]) best = t;
        }
        return best;
    };

    auto pooled = [&](std::size_t method, std::size_t t) {
        std::vector<std::uint8_t> all;
        for (std::size_t r = 0; r < config.repeats; ++r) {
            const auto& c = evals[r][method].correct[t];
            all.insert(all.end(), c.begin(), c.end());
        }
        return all;
    };

    const std::size_t proposed_t = best_t(out.curves[0], 0);
    out.reference_features = d - proposed_t;
    const auto proposed_correct = pooled(0, proposed_t);
    out.rows.push_back({"proposed", out.curves[0].mean_accuracy[proposed_t], d - proposed_t, proposed_t, std::nullopt});

    for (std::size_t m = 1; m < n_methods; ++m) {
        const std::size_t t = best_t(out.curves[m], proposed_t);
        out.rows.push_back({out.curves[m].tag, out.curves[m].mean_accuracy[t], d - t, t,
                            mcnemar(proposed_correct, pooled(m, t))});
    }
    return out;
}

}  // namespace fefs
