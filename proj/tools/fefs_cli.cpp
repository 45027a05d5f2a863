// fefs: fuzzy-entropy feature selection experiments from the command line.
//
//   fefs rank    --data wbc.csv --label-col class --drop-cols id
//   fefs sweep   --data wbc.csv --label-col class --drop-cols id --repeats 1000
//   fefs ablate  ... --order highest-first
//   fefs agree   ...
//   fefs compare ...
//
// Exit codes: 0 success, 1 data error, 2 configuration error.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fefs/fefs.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string data;
    std::string label_col = "0";
    std::vector<std::string> drop_cols;
    std::string ideal_mean = "geometric";
    std::string classifier_mean = "geometric";
    std::string entropy = "luca";
    double p = 2.0;
    std::size_t repeats = 1000;
    std::uint64_t seed = 0;
    std::string order = "lowest-first";
    std::string matrix_source = "train";
    double clip_percentile = 0.0;
    std::size_t threads = 0;
    std::string out = ".";
};

void add_common(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--data", o.data, "CSV file")->required();
    cmd.add_option("--label-col", o.label_col, "label column name, or zero-based index when numeric");
    cmd.add_option("--drop-cols", o.drop_cols, "columns to ignore (comma separated)")->delimiter(',');
    cmd.add_option("--ideal-mean", o.ideal_mean, "arithmetic|geometric|harmonic");
    cmd.add_option("--classifier-mean", o.classifier_mean, "arithmetic|geometric|harmonic");
    cmd.add_option("--entropy", o.entropy, "luca|parkash|kosko");
    cmd.add_option("--p", o.p, "similarity exponent");
    cmd.add_option("--repeats", o.repeats, "number of random half splits");
    cmd.add_option("--seed", o.seed, "master seed");
    cmd.add_option("--order", o.order, "lowest-first|highest-first");
    cmd.add_option("--matrix-source", o.matrix_source, "train|test: partition used for the entropy ranking");
    cmd.add_option("--clip-percentile", o.clip_percentile, "symmetric percentile clip for min-max fitting, in [0, 50)");
    cmd.add_option("--threads", o.threads, "worker threads (0 = all cores); does not change results");
    cmd.add_option("--out", o.out, "output directory");
}

fefs::ExperimentConfig to_config(const CommonOptions& o) {
    fefs::ExperimentConfig c;
    c.repeats = o.repeats;
    c.master_seed = o.seed;
    c.ideal_mean = fefs::parse_mean_kind(o.ideal_mean);
    c.classifier_mean = fefs::parse_mean_kind(o.classifier_mean);
    c.entropy_kind = fefs::parse_entropy_kind(o.entropy);
    c.p = o.p;
    c.removal_order = fefs::parse_removal_order(o.order);
    c.matrix_source = fefs::parse_matrix_source(o.matrix_source);
    c.clip_percentile = o.clip_percentile;
    c.threads = o.threads;
    if (!(c.p > 0.0)) throw fefs::error(fefs::errc::invalid_config, fmt::format("--p {} must be > 0", c.p));
    if (c.repeats == 0) throw fefs::error(fefs::errc::invalid_config, "--repeats must be at least 1");
    if (!(c.clip_percentile >= 0.0 && c.clip_percentile < 50.0))
        throw fefs::error(fefs::errc::invalid_config, fmt::format("--clip-percentile {} outside [0, 50)", c.clip_percentile));
    return c;
}

fefs::Dataset load(const CommonOptions& o) {
    fefs::CsvOptions csv;
    const bool numeric = !o.label_col.empty() &&
                         std::all_of(o.label_col.begin(), o.label_col.end(), [](unsigned char ch) { return std::isdigit(ch); });
    if (numeric)
        csv.label_column = static_cast<std::size_t>(std::stoull(o.label_col));
    else
        csv.label_column = o.label_col;
    csv.drop_columns.insert(o.drop_cols.begin(), o.drop_cols.end());
    return fefs::load_csv(o.data, csv);
}

fs::path prepare_out(const CommonOptions& o) {
    fs::path dir(o.out);
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fefs::error(fefs::errc::invalid_config, fmt::format("cannot write '{}'", path.string()));
    return out;
}

void write_manifest(const fs::path& path, const std::string& command_line, const CommonOptions& o,
                    const fefs::ExperimentConfig& config, std::map<std::string, std::string> params) {
    fefs::RunManifest m;
    m.command_line = command_line;
    m.config = config;
    params.emplace("data", o.data);
    params.emplace("label_col", o.label_col);
    std::string drops;
    for (const auto& d : o.drop_cols) drops += (drops.empty() ? "" : ",") + d;
    params.emplace("drop_cols", drops);
    m.parameters = std::move(params);
    m.dataset_fingerprint = fefs::file_fingerprint(o.data);
    m.tool_version = std::string(fefs::tool_version());
    m.timestamp = fefs::utc_timestamp();
    open_out(path) << fefs::to_json(m);
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : std::string(1, sep)) + p;
    return out;
}

int cmd_rank(const CommonOptions& o, std::size_t keep, const std::string& command_line) {
    const auto config = to_config(o);
    const auto data = load(o);
    const auto prepared = fefs::prepare_split(data, config, 0);
    const auto ideals = fefs::ideal_vector_set(prepared.train, config.ideal_mean);
    const auto& source = config.matrix_source == fefs::MatrixSource::train ? prepared.train : prepared.test;
    const auto matrix = fefs::similarity_matrix(source, ideals, config.p);
    const auto ranking = fefs::rank_features(matrix, config.entropy_kind);

    const std::size_t d = data.features();
    if (keep == 0 || keep > d) keep = d;
    const auto survivors = fefs::removal_sequence(ranking, config.removal_order)[d - keep];
    const auto preds = fefs::classify(prepared.test, ideals, {config.classifier_mean, config.p, survivors});

    const auto dir = prepare_out(o);
    {
        auto f = open_out(dir / "rank_ranking.csv");
        fefs::write_ranking_csv(f, ranking, data.feature_names);
    }
    {
        auto f = open_out(dir / "rank_similarity.csv");
        fefs::write_similarity_csv(f, matrix, data.feature_names);
    }
    {
        auto f = open_out(dir / "rank_predictions.csv");
        fefs::write_predictions_csv(f, preds, prepared.test, ideals);
    }
    write_manifest(dir / "rank_manifest.json", command_line, o, config,
                   {{"keep", std::to_string(keep)}, {"split_seed", std::to_string(prepared.seed)}});
    fmt::print("ranked {} features of {} ({} train / {} test samples); accuracy with {} kept: {:.4f}\n", d,
               data.name, prepared.train.samples(), prepared.test.samples(), keep,
               fefs::accuracy(preds, prepared.test.labels));
    return 0;
}

int cmd_sweep(const CommonOptions& o, const std::vector<std::string>& combo_names, std::vector<double> grid,
              const std::string& command_line) {
    const auto config = to_config(o);
    std::vector<fefs::MeanCombo> combos;
    for (const auto& name : combo_names) combos.push_back(fefs::parse_combo(name));
    if (combos.empty()) combos = fefs::all_combos();
    if (grid.empty()) grid = fefs::default_p_grid();
    const auto data = load(o);

    const auto sweep = fefs::sweep_p(data, config, grid, combos);
    const auto dir = prepare_out(o);
    {
        auto f = open_out(dir / "sweep_curves.csv");
        fefs::write_curves_csv(f, sweep.curves, "p");
    }
    {
        auto f = open_out(dir / "sweep_records.csv");
        fefs::write_sweep_records_csv(f, sweep);
    }
    std::vector<std::string> names;
    for (const auto& c : combos) names.push_back(c.name());
    std::vector<std::string> grid_text;
    for (double p : grid) grid_text.push_back(fmt::format("{}", p));
    write_manifest(dir / "sweep_manifest.json", command_line, o, config,
                   {{"combos", join(names, ',')}, {"p_grid", join(grid_text, ',')}});
    for (const auto& c : sweep.curves) {
        const auto best = static_cast<std::size_t>(
            std::max_element(c.mean_accuracy.begin(), c.mean_accuracy.end()) - c.mean_accuracy.begin());
        fmt::print("{}: best mean accuracy {:.4f} at p = {}\n", c.tag, c.mean_accuracy[best], c.x[best]);
    }
    return 0;
}

int cmd_ablate(const CommonOptions& o, const std::string& command_line) {
    const auto config = to_config(o);
    const auto data = load(o);
    const auto result = fefs::removal_curve(data, config);
    const auto dir = prepare_out(o);
    const auto stem = fmt::format("ablate_{}", fefs::to_string(config.removal_order));
    {
        auto f = open_out(dir / (stem + "_curve.csv"));
        fefs::write_curves_csv(f, std::span(&result.curve, 1), "removed");
    }
    {
        auto f = open_out(dir / (stem + "_records.csv"));
        fefs::write_removal_records_csv(f, result.records);
    }
    write_manifest(dir / (stem + "_manifest.json"), command_line, o, config, {});
    for (std::size_t t = 0; t < result.curve.x.size(); ++t)
        fmt::print("removed {:>3}: {:.4f} (sd {:.4f})\n", t, result.curve.mean_accuracy[t], result.curve.std_accuracy[t]);
    return 0;
}

int cmd_agree(const CommonOptions& o, const std::vector<std::string>& kind_names, const std::string& command_line) {
    const auto config = to_config(o);
    std::vector<fefs::EntropyKind> kinds;
    for (const auto& k : kind_names) kinds.push_back(fefs::parse_entropy_kind(k));
    const auto data = load(o);
    const auto result = fefs::ranking_agreement(data, config, kinds);
    const auto dir = prepare_out(o);
    {
        auto f = open_out(dir / "agree_scores.csv");
        fefs::write_agreement_csv(f, result, data.feature_names);
    }
    {
        auto f = open_out(dir / "agree_spearman.csv");
        fefs::write_spearman_csv(f, result);
    }
    write_manifest(dir / "agree_manifest.json", command_line, o, config, {{"kinds", join(kind_names, ',')}});
    fefs::write_spearman_csv(std::cout, result);
    return 0;
}

int cmd_compare(const CommonOptions& o, std::size_t bins, const std::string& binning, const std::string& command_line) {
    const auto config = to_config(o);
    fefs::DiscretizationSpec disc;
    disc.bins = bins;
    if (binning == "equal-width")
        disc.strategy = fefs::BinningStrategy::equal_width;
    else if (binning == "equal-frequency")
        disc.strategy = fefs::BinningStrategy::equal_frequency;
    else
        throw fefs::error(fefs::errc::invalid_config, fmt::format("--binning '{}' (expected equal-width|equal-frequency)", binning));
    if (bins < 2) throw fefs::error(fefs::errc::invalid_config, "--bins must be at least 2");

    const auto data = load(o);
    const auto report = fefs::compare_methods(data, config, disc);
    const auto dir = prepare_out(o);
    {
        auto f = open_out(dir / "compare_table.csv");
        fefs::write_comparison_csv(f, report);
    }
    {
        auto f = open_out(dir / "compare_curves.csv");
        fefs::write_curves_csv(f, report.curves, "removed");
    }
    write_manifest(dir / "compare_manifest.json", command_line, o, config,
                   {{"bins", std::to_string(bins)}, {"binning", binning}});
    fmt::print("reference feature count S = {}\n", report.reference_features);
    fefs::write_comparison_csv(std::cout, report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy-entropy feature selection and maximal-similarity classification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fefs::tool_version()));

    std::string command_line;
    for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

    CommonOptions rank_o, sweep_o, ablate_o, agree_o, compare_o;
    std::size_t keep = 0;
    std::vector<std::string> combos;
    std::vector<double> grid;
    std::vector<std::string> kinds{"luca", "parkash", "kosko"};
    std::size_t bins = 10;
    std::string binning = "equal-width";

    auto* rank = app.add_subcommand("rank", "rank features on one split and classify its test half");
    add_common(*rank, rank_o);
    rank->add_option("--keep", keep, "features kept for the prediction export (default: all)");

    auto* sweep = app.add_subcommand("sweep", "accuracy over a p grid for ideal/classifier mean combinations");
    add_common(*sweep, sweep_o);
    sweep->add_option("--combos", combos, "subset of A-A,A-G,...,H-H")->delimiter(',');
    sweep->add_option("--p-grid", grid, "comma-separated p values")->delimiter(',');

    auto* ablate = app.add_subcommand("ablate", "accuracy as features are removed in entropy order");
    add_common(*ablate, ablate_o);

    auto* agree = app.add_subcommand("agree", "agreement of entropy rankings");
    add_common(*agree, agree_o);
    agree->add_option("--kinds", kinds, "entropy kinds, first is the reference")->delimiter(',');

    auto* compare = app.add_subcommand("compare", "fuzzy-entropy ranking against six filter baselines");
    add_common(*compare, compare_o);
    compare->add_option("--bins", bins, "bins for discretizing baselines");
    compare->add_option("--binning", binning, "equal-width|equal-frequency");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rank->parsed()) return cmd_rank(rank_o, keep, command_line);
        if (sweep->parsed()) return cmd_sweep(sweep_o, combos, grid, command_line);
        if (ablate->parsed()) return cmd_ablate(ablate_o, command_line);
        if (agree->parsed()) return cmd_agree(agree_o, kinds, command_line);
        if (compare->parsed()) return cmd_compare(compare_o, bins, binning, command_line);
    } catch (const fefs::error& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return fefs::is_config_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
