#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "fefs/eval.hpp"

namespace fefs {

// Aggregated outputs use 6 significant digits; raw per-repeat files use
// round-trip precision.

/// `tag,<x_label>,mean_accuracy,std_accuracy`, one row per curve point.
void write_curves_csv(std::ostream& out, std::span<const AccuracyCurve> curves, std::string_view x_label);

/// `repeat,seed,redraws,removed,n_features,eliminated_feature,accuracy`.
void write_removal_records_csv(std::ostream& out, std::span<const RepeatRecord> records);

/// `repeat,combo,p,accuracy`.
void write_sweep_records_csv(std::ostream& out, const SweepResult& sweep);

/// `kind,position,feature_index,feature_name,mean_normalized_score`, features
/// in reference order.
void write_agreement_csv(std::ostream& out, const AgreementResult& agreement, std::span<const std::string> feature_names);

/// Square matrix of Spearman correlations with a `kind` header column.
void write_spearman_csv(std::ostream& out, const AgreementResult& agreement);

/// `method,accuracy,selected_features,removed_features,mcnemar_b,mcnemar_c,statistic,p_value,test`.
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);

}  // namespace fefs
