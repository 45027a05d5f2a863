// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Datasets are read from FEFS_DATA_DIR (override with the first argument).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fefs/fefs.hpp"

namespace fs = std::filesystem;
using namespace fefs;

namespace {

constexpr std::size_t repeats = 1000;

struct DatasetSpec {
    std::string key;
    std::string file;
    std::string label;
    std::string drop;
};

const std::vector<DatasetSpec> dataset_specs{
    {"WBC", "wbc.csv", "class", "id"},
    {"WDBC", "wdbc.csv", "diagnosis", "id"},
    {"Parkinsons", "parkinsons.csv", "status", "name"},
};

class Criterion {
public:
    explicit Criterion(std::string title) : title_(std::move(title)) {}

    void check(bool ok, const std::string& detail) {
        ok_ = ok_ && ok;
        details_.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", detail));
    }

    bool report(int number) const {
        fmt::print("CRITERION {}: {}  {}\n", number, ok_ ? "PASS" : "FAIL", title_);
        for (const auto& d : details_) fmt::print("    {}\n", d);
        std::fflush(stdout);
        return ok_;
    }

private:
    std::string title_;
    bool ok_ = true;
    std::vector<std::string> details_;
};

ExperimentConfig defaults() {
    ExperimentConfig c;
    c.repeats = repeats;
    c.master_seed = 0;
    return c;
}

double variance(const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

std::size_t argmax_first(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// Curves are computed once and shared between criteria.
struct DatasetResults {
    std::optional<Dataset> data;
    std::string load_error;
    std::optional<AccuracyCurve> lowest;
    std::optional<AccuracyCurve> highest;
};

bool criterion1(std::map<std::string, DatasetResults>& all) {
    Criterion c("best mean accuracy, lowest-first removal, G-G, p=2, Luca");
    const std::map<std::string, std::pair<double, double>> targets{
        {"WBC", {0.9697, 0.010}}, {"WDBC", {0.9486, 0.015}}, {"Parkinsons", {0.7823, 0.025}}};
    for (const auto& spec : dataset_specs) {
        auto& r = all[spec.key];
        const auto [target, tol] = targets.at(spec.key);
        if (!r.data) {
            c.check(false, fmt::format("{}: dataset unavailable ({})", spec.key, r.load_error));
            continue;
        }
        const auto& curve = *r.lowest;
        // ties go to the smaller feature set
        std::size_t t = 0;
        for (std::size_t i = 0; i < curve.mean_accuracy.size(); ++i)
            if (curve.mean_accuracy[i] >= curve.mean_accuracy[t]) t = i;
        const double best = curve.mean_accuracy[t];
        c.check(std::abs(best - target) <= tol,
                fmt::format("{}: best {:.2f}% at S={} features (target {:.2f} +/- {:.1f})", spec.key, 100 * best,
                            r.data->features() - t, 100 * target, 100 * tol));
    }
    return c.report(1);
}

bool criterion2(std::map<std::string, DatasetResults>& all) {
    Criterion c("p sweep: geometric-ideal peaks in [1.5, 3]; WBC harmonic-ideal variance for p > 5");
    const auto grid = default_p_grid();
    const auto combos = all_combos();
    for (const auto& spec : dataset_specs) {
        auto& r = all[spec.key];
        if (!r.data) {
            c.check(false, fmt::format("{}: dataset unavailable ({})", spec.key, r.load_error));
            continue;
        }
        const auto sweep = sweep_p(*r.data, defaults(), grid, combos);
        for (std::size_t k = 0; k < combos.size(); ++k) {
            if (combos[k].ideal != MeanKind::geometric) continue;
            const auto& curve = sweep.curves[k];
            const double peak_p = grid[argmax_first(curve.mean_accuracy)];
            c.check(peak_p >= 1.5 && peak_p <= 3.0,
                    fmt::format("{} {}: peak {:.2f}% at p={}", spec.key, combos[k].name(),
                                100 * curve.mean_accuracy[argmax_first(curve.mean_accuracy)], peak_p));
        }
        if (spec.key != "WBC") continue;
        double harmonic_min = INFINITY, other_max = 0.0;
        std::string line;
        for (std::size_t k = 0; k < combos.size(); ++k) {
            std::vector<double> tail;
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (grid[i] > 5.0) tail.push_back(sweep.curves[k].mean_accuracy[i]);
            const double v = variance(tail);
            line += fmt::format(" {}={:.2e}", combos[k].name(), v);
            if (combos[k].ideal == MeanKind::harmonic)
                harmonic_min = std::min(harmonic_min, v);
            else
                other_max = std::max(other_max, v);
        }
        c.check(harmonic_min > other_max, "WBC variance over p > 5:" + line);
    }
    return c.report(2);
}

bool criterion3(std::map<std::string, DatasetResults>& all) {
    Criterion c("removal order: lowest-first beats highest-first by >= 2 points; highest-first drops >= 2 points");
    std::size_t drops = 0;
    for (const auto& spec : dataset_specs) {
        auto& r = all[spec.key];
        if (!r.data) {
            c.check(false, fmt::format("{}: dataset unavailable ({})", spec.key, r.load_error));
            continue;
        }
        const std::size_t d = r.data->features();
        const std::size_t half = (d + 1) / 2;
        double gap = 0.0;
        for (std::size_t t = 1; t <= half && t < d; ++t)
            gap += r.lowest->mean_accuracy[t] - r.highest->mean_accuracy[t];
        gap /= static_cast<double>(std::min(half, d - 1));
        c.check(gap >= 0.02, fmt::format("{}: mean gap over t=1..{} is {:.2f} points", spec.key, half, 100 * gap));
        const double drop = r.highest->mean_accuracy[0] - r.highest->mean_accuracy[1];
        if (drop >= 0.02) ++drops;
        c.check(true, fmt::format("{}: highest-first drop after one removal {:.2f} points", spec.key, 100 * drop));
    }
    c.check(drops >= 2, fmt::format("{} of 3 datasets drop >= 2 points after the first removal", drops));
    return c.report(3);
}

bool criterion4(std::map<std::string, DatasetResults>& all) {
    Criterion c("entropy agreement: Spearman(Luca, Parkash) >= 0.9; Kosko-Luca lowest on Parkinsons");
    const std::vector<EntropyKind> kinds{EntropyKind::luca, EntropyKind::parkash, EntropyKind::kosko};
    std::map<std::string, double> kosko;
    for (const auto& spec : dataset_specs) {
        auto& r = all[spec.key];
        if (!r.data) {
            c.check(false, fmt::format("{}: dataset unavailable ({})", spec.key, r.load_error));
            continue;
        }
        const auto a = ranking_agreement(*r.data, defaults(), kinds);
        c.check(a.spearman[0][1] >= 0.9, fmt::format("{}: Luca-Parkash {:.4f}, Luca-Kosko {:.4f}", spec.key,
                                                     a.spearman[0][1], a.spearman[0][2]));
        kosko[spec.key] = a.spearman[0][2];
    }
    if (!kosko.count("Parkinsons")) {
        c.check(false, "Kosko ordering needs Parkinsons");
    } else {
        bool lowest = true;
        for (const auto& [key, v] : kosko)
            if (key != "Parkinsons" && v <= kosko["Parkinsons"]) lowest = false;
        c.check(lowest, "Kosko-Luca correlation lowest on Parkinsons");
    }
    return c.report(4);
}

bool criterion5(std::map<std::string, DatasetResults>& all) {
    Criterion c("WBC McNemar: p >= 0.05 vs correlation and ReliefF, p < 0.01 vs the other four");
    auto& r = all["WBC"];
    if (!r.data) {
        c.check(false, "WBC unavailable (" + r.load_error + ")");
        return c.report(5);
    }
    const auto report = compare_methods(*r.data, defaults());
    c.check(true, fmt::format("proposed {:.2f}% with S={} features", 100 * report.rows[0].accuracy,
                              report.reference_features));
    for (std::size_t m = 1; m < report.rows.size(); ++m) {
        const auto& row = report.rows[m];
        const auto& test = *row.versus_proposed;
        const bool expect_similar = row.method == "correlation" || row.method == "relieff";
        const bool ok = expect_similar ? test.p_value >= 0.05 : test.p_value < 0.01;
        c.check(ok, fmt::format("{}: {:.2f}% with {} features, b={} c={} p={:.3g} (expected {})", row.method,
                                100 * row.accuracy, row.selected_features, test.b, test.c, test.p_value,
                                expect_similar ? "p >= 0.05" : "p < 0.01"));
    }
    return c.report(5);
}

// Compact re-run of the property suites so the gate stands alone.
bool criterion6() {
    Criterion c("property suites");
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> up(0.1, 8.0);

    bool sim = true;
    for (int i = 0; i < 20000; ++i) {
        const double x = u(gen), v = u(gen), p = up(gen);
        const double s = lukasiewicz_similarity(x, v, p);
        sim = sim && s >= 0 && s <= 1 && s == lukasiewicz_similarity(v, x, p) && lukasiewicz_similarity(x, x, p) == 1.0 &&
              (x == v || s < 1.0);
    }
    c.check(sim, "similarity bounds, reflexivity, symmetry (20000 draws)");

    bool ent = true;
    const double ln2 = std::log(2.0), sq = std::sqrt(2.0) - 1;
    for (int i = 0; i < 2000; ++i) {
        const std::size_t r = 1 + static_cast<std::size_t>(i % 31);
        std::vector<double> col(r), comp(r);
        for (std::size_t k = 0; k < r; ++k) col[k] = u(gen), comp[k] = 1 - col[k];
        auto perm = col;
        std::shuffle(perm.begin(), perm.end(), gen);
        const double rr = static_cast<double>(r);
        const double bound[] = {rr * ln2, rr * sq, 1.0};
        const EntropyKind kinds[] = {EntropyKind::luca, EntropyKind::parkash, EntropyKind::kosko};
        for (int k = 0; k < 3; ++k) {
            const double h = fuzzy_entropy(col, kinds[k]);
            ent = ent && h >= 0 && h <= bound[k] * (1 + 1e-12) &&
                  std::abs(fuzzy_entropy(comp, kinds[k]) - h) <= 1e-9 * std::max(1.0, h) &&
                  std::abs(fuzzy_entropy(perm, kinds[k]) - h) <= 1e-12 * std::max(1.0, h);
        }
        std::vector<double> crisp(r);
        for (auto& e : crisp) e = u(gen) < 0.5 ? 0.0 : 1.0;
        for (auto k : kinds) ent = ent && fuzzy_entropy(crisp, k) == 0.0;
    }
    c.check(ent, "entropy bounds, crisp zero, complement symmetry, row permutation (2000 columns)");

    bool means = true;
    for (int i = 0; i < 2000; ++i) {
        std::vector<double> v(1 + static_cast<std::size_t>(i % 12));
        for (auto& e : v) e = 1e-3 + u(gen);
        std::vector<double> s = v;
        for (auto& e : s) e = std::min(e, 1.0);
        const double a = mean(v, MeanKind::arithmetic), g = mean(v, MeanKind::geometric), h = mean(v, MeanKind::harmonic);
        const double sa = aggregate(s, MeanKind::arithmetic), sg = aggregate(s, MeanKind::geometric),
                     sh = aggregate(s, MeanKind::harmonic);
        means = means && h <= g * (1 + 1e-12) && g <= a * (1 + 1e-12) && sh <= sg * (1 + 1e-12) && sg <= sa * (1 + 1e-12);
    }
    c.check(means, "AM >= GM >= HM for ideal means and aggregates");

    bool removal = true;
    std::uniform_int_distribution<int> coarse(0, 3);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t d = 1 + static_cast<std::size_t>(i % 10);
        std::vector<double> scores(d);
        for (auto& e : scores) e = coarse(gen);
        const auto ranking = make_ranking(scores, ScoreDirection::lower_is_better);
        for (auto order : {RemovalOrder::lowest_first, RemovalOrder::highest_first}) {
            std::vector<std::size_t> idx(d);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return order == RemovalOrder::lowest_first ? scores[a] < scores[b] : scores[a] > scores[b];
            });
            const auto seq = removal_sequence(ranking, order);
            for (std::size_t t = 0; t < d; ++t) {
                std::vector<std::size_t> expect(idx.begin() + static_cast<std::ptrdiff_t>(t), idx.end());
                std::sort(expect.begin(), expect.end());
                removal = removal && seq[t] == expect;
            }
        }
    }
    c.check(removal, "removal sequence equals the sort oracle (2000 rankings)");

    bool subset = true;
    for (int i = 0; i < 200; ++i) {
        Dataset d;
        d.values = Matrix(12, 5);
        for (std::size_t r = 0; r < 12; ++r)
            for (std::size_t j = 0; j < 5; ++j) d.values(r, j) = 1e-6 + u(gen) * (1 - 1e-6);
        for (std::size_t r = 0; r < 12; ++r) d.labels.push_back(r % 3);
        d.class_names = {"a", "b", "c"};
        d.feature_names = {"0", "1", "2", "3", "4"};
        const std::vector<std::size_t> keep{1, 4};
        for (auto k : {MeanKind::arithmetic, MeanKind::geometric, MeanKind::harmonic}) {
            const auto full = ideal_vector_set(d, k);
            const auto proj = ideal_vector_set(d.select_features(keep), k);
            for (std::size_t cl = 0; cl < 3; ++cl)
                for (std::size_t j = 0; j < keep.size(); ++j) subset = subset && full.vectors(cl, keep[j]) == proj.vectors(cl, j);
        }
    }
    c.check(subset, "subset ideal vectors equal recomputed ideal vectors");

    const auto m0 = mcnemar_from_counts(0, 0);
    const auto m10 = mcnemar_from_counts(10, 0);
    c.check(m0.p_value == 1.0 && std::abs(m10.p_value - 0.001953) < 5e-6,
            fmt::format("McNemar b=c=0 -> {}, b=10,c=0 -> {:.6f}", m0.p_value, m10.p_value));

    Dataset syn;
    syn.values = Matrix(40, 3);
    for (std::size_t r = 0; r < 40; ++r) {
        syn.labels.push_back(r % 2);
        for (std::size_t j = 0; j < 3; ++j) syn.values(r, j) = u(gen) + (j == 0 ? static_cast<double>(r % 2) : 0.0);
    }
    syn.class_names = {"a", "b"};
    syn.feature_names = {"0", "1", "2"};
    ExperimentConfig cfg;
    cfg.repeats = 6;
    cfg.master_seed = 17;
    const auto s1 = split_indices(syn, {5, 0.5, false});
    const auto s2 = split_indices(syn, {5, 0.5, false});
    const auto r1 = removal_curve(syn, cfg);
    cfg.threads = 3;
    const auto r2 = removal_curve(syn, cfg);
    c.check(s1.train_rows == s2.train_rows && s1.test_rows == s2.test_rows &&
                r1.curve.mean_accuracy == r2.curve.mean_accuracy && r1.curve.std_accuracy == r2.curve.std_accuracy,
            "split and full-run determinism across calls and worker counts");
    return c.report(6);
}

bool criterion7() {
    Criterion c("synthetic oracle: fuzzy survivor and every baseline's top feature are the informative one");
    const std::size_t m = 200, noise = 5, seeds = 20;
    std::size_t fuzzy_hits = 0;
    std::map<BaselineMethod, std::size_t> baseline_hits;
    for (std::size_t seed = 0; seed < seeds; ++seed) {
        // feature 0 is the class indicator with Gaussian jitter, the rest
        // are Gaussian noise independent of the class
        std::mt19937_64 gen(seed);
        std::normal_distribution<double> jitter(0.0, 0.15);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Dataset d;
        d.values = Matrix(m, 1 + noise);
        for (std::size_t i = 0; i < m; ++i) {
            const auto label = i % 2;
            d.labels.push_back(label);
            d.values(i, 0) = static_cast<double>(label) + jitter(gen);
            for (std::size_t j = 1; j <= noise; ++j) d.values(i, j) = gauss(gen);
        }
        d.class_names = {"neg", "pos"};
        for (std::size_t j = 0; j <= noise; ++j) d.feature_names.push_back(fmt::format("f{}", j));

        const auto normalized = apply_normalization(fit_normalization(d), d);
        const auto ideals = ideal_vector_set(normalized, MeanKind::geometric);
        const auto ranking = rank_features(similarity_matrix(normalized, ideals, 2.0), EntropyKind::luca);
        const auto survivors = removal_sequence(ranking, RemovalOrder::lowest_first).back();
        if (survivors == std::vector<std::size_t>{0}) ++fuzzy_hits;
        for (auto method : all_baselines) {
            if (baseline_rank(d, method).order.front() == 0) ++baseline_hits[method];
        }
    }
    c.check(fuzzy_hits == seeds, fmt::format("fuzzy survivor after {} lowest-first removals is the informative "
                                             "feature in {} of {} datasets", noise, fuzzy_hits, seeds));
    for (auto method : all_baselines) {
        c.check(baseline_hits[method] == seeds,
                fmt::format("{} ranks it first in {} of {} datasets", to_string(method), baseline_hits[method], seeds));
    }
    return c.report(7);
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path data_dir = argc > 1 ? fs::path(argv[1]) : fs::path(FEFS_DATA_DIR);
    std::map<std::string, DatasetResults> all;
    for (const auto& spec : dataset_specs) {
        auto& r = all[spec.key];
        try {
            r.data = load_csv(data_dir / spec.file, {spec.label, {spec.drop}});
        } catch (const error& e) {
            r.load_error = e.what();
            continue;
        }
        auto cfg = defaults();
        r.lowest = removal_curve(*r.data, cfg).curve;
        cfg.removal_order = RemovalOrder::highest_first;
        r.highest = removal_curve(*r.data, cfg).curve;
    }

    bool ok = true;
    ok = criterion1(all) && ok;
    ok = criterion2(all) && ok;
    ok = criterion3(all) && ok;
    ok = criterion4(all) && ok;
    ok = criterion5(all) && ok;
    ok = criterion6() && ok;
    ok = criterion7() && ok;
    fmt::print("ACCEPTANCE: {}\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}
