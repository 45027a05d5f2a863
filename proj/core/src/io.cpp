#include "fefs/io.hpp"

#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace fefs {

void write_curves_csv(std::ostream& out, std::span<const AccuracyCurve> curves, std::string_view x_label) {
    fmt::print(out, "tag,{},mean_accuracy,std_accuracy\n", x_label);
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.x.size(); ++i)
            fmt::print(out, "{},{:.6g},{:.6g},{:.6g}\n", c.tag, c.x[i], c.mean_accuracy[i], c.std_accuracy[i]);
    }
}

void write_removal_records_csv(std::ostream& out, std::span<const RepeatRecord> records) {
    fmt::print(out, "repeat,seed,redraws,removed,n_features,eliminated_feature,accuracy\n");
    for (const auto& rec : records) {
        const auto d = rec.removal.accuracy.size();
        for (std::size_t t = 0; t < d; ++t) {
            // the feature removed to get from t to t + 1; none after the last step
            const std::string next = t + 1 < d ? std::to_string(rec.removal.eliminated[t]) : std::string();
            fmt::print(out, "{},{},{},{},{},{},{:.17g}\n", rec.repeat_index, rec.seed, rec.redraws, t, d - t, next,
                       rec.removal.accuracy[t]);
        }
    }
}

void write_sweep_records_csv(std::ostream& out, const SweepResult& sweep) {
    fmt::print(out, "repeat,combo,p,accuracy\n");
    if (sweep.accuracy.empty() || sweep.accuracy[0].empty()) return;
    const std::size_t repeats = sweep.accuracy[0][0].size();
    for (std::size_t r = 0; r < repeats; ++r) {
        for (std::size_t c = 0; c < sweep.combos.size(); ++c) {
            for (std::size_t p = 0; p < sweep.p_grid.size(); ++p)
                fmt::print(out, "{},{},{:.17g},{:.17g}\n", r, sweep.combos[c].name(), sweep.p_grid[p],
                           sweep.accuracy[c][p][r]);
        }
    }
}

void write_agreement_csv(std::ostream& out, const AgreementResult& agreement, std::span<const std::string> feature_names) {
    fmt::print(out, "kind,position,feature_index,feature_name,mean_normalized_score\n");
    for (std::size_t k = 0; k < agreement.kinds.size(); ++k) {
        for (std::size_t pos = 0; pos < agreement.reference_order.size(); ++pos) {
            const auto j = agreement.reference_order[pos];
            fmt::print(out, "{},{},{},{},{:.6g}\n", to_string(agreement.kinds[k]), pos + 1, j,
                       j < feature_names.size() ? feature_names[j] : fmt::format("f{}", j),
                       agreement.mean_normalized[k][j]);
        }
    }
}

void write_spearman_csv(std::ostream& out, const AgreementResult& agreement) {
    fmt::print(out, "kind");
    for (auto k : agreement.kinds) fmt::print(out, ",{}", to_string(k));
    fmt::print(out, "\n");
    for (std::size_t a = 0; a < agreement.kinds.size(); ++a) {
        fmt::print(out, "{}", to_string(agreement.kinds[a]));
        for (double v : agreement.spearman[a]) fmt::print(out, ",{:.6g}", v);
        fmt::print(out, "\n");
    }
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
    fmt::print(out, "method,accuracy,selected_features,removed_features,mcnemar_b,mcnemar_c,statistic,p_value,test\n");
    for (const auto& row : report.rows) {
        fmt::print(out, "{},{:.6g},{},{}", row.method, row.accuracy, row.selected_features, row.removed_features);
        if (row.versus_proposed) {
            const auto& m = *row.versus_proposed;
            fmt::print(out, ",{},{},{:.6g},{:.6g},{}\n", m.b, m.c, m.statistic, m.p_value,
                       m.method == McNemarMethod::exact_binomial ? "exact" : "chi2-cc");
        } else {
            fmt::print(out, ",,,,,\n");
        }
    }
}

}  // namespace fefs
