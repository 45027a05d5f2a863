#include "fefs/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <string_view>

#include <fmt/format.h>

#include "fefs/error.hpp"
#include "fefs/random.hpp"

namespace fefs {

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
    Dataset out;
    out.values = Matrix(rows.size(), features());
    out.labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto src = values.row(rows[i]);
        std::copy(src.begin(), src.end(), out.values.row(i).begin());
        out.labels.push_back(labels[rows[i]]);
    }
    out.class_names = class_names;
    out.feature_names = feature_names;
    out.name = name;
    return out;
}

Dataset Dataset::select_features(std::span<const std::size_t> cols) const {
    Dataset out;
    out.values = Matrix(samples(), cols.size());
    for (std::size_t r = 0; r < samples(); ++r) {
        for (std::size_t j = 0; j < cols.size(); ++j) out.values(r, j) = values(r, cols[j]);
    }
    out.labels = labels;
    out.class_names = class_names;
    out.feature_names.reserve(cols.size());
    for (auto c : cols) out.feature_names.push_back(feature_names.at(c));
    out.name = name;
    return out;
}

std::vector<std::size_t> Dataset::class_counts() const {
    std::vector<std::size_t> counts(classes(), 0);
    for (auto l : labels) ++counts[l];
    return counts;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto piece = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        fields.emplace_back(trim(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool is_missing(std::string_view cell) { return cell.empty() || cell == "?"; }

std::optional<double> parse_real(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw error(errc::file_not_found, fmt::format("cannot open '{}'", path.string()));

    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (trim(line).empty()) continue;
        rows.emplace_back(line_no, split_fields(line));
    }
    if (rows.empty()) throw error(errc::empty_dataset, fmt::format("'{}' contains no rows", path.string()));

    const std::size_t width = rows.front().second.size();
    const auto& first = rows.front().second;

    // A header is any first row whose cells are not all numeric or missing.
    // A named label column always implies a header.
    bool has_header = std::holds_alternative<std::string>(options.label_column);
    if (!has_header) {
        const auto label_pos = std::get<std::size_t>(options.label_column);
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_pos) continue;
            if (!is_missing(first[c]) && !parse_real(first[c])) {
                has_header = true;
                break;
            }
        }
    }

    std::vector<std::string> column_names(width);
    for (std::size_t c = 0; c < width; ++c) column_names[c] = has_header ? first[c] : std::to_string(c);

    std::size_t label_pos = 0;
    if (const auto* name = std::get_if<std::string>(&options.label_column)) {
        const auto it = std::find(column_names.begin(), column_names.end(), *name);
        if (it == column_names.end())
            throw error(errc::column_not_found, fmt::format("label column '{}' not found in '{}'", *name, path.string()));
        label_pos = static_cast<std::size_t>(it - column_names.begin());
    } else {
        label_pos = std::get<std::size_t>(options.label_column);
        if (label_pos >= width)
            throw error(errc::column_not_found,
                        fmt::format("label column {} out of range ({} columns)", label_pos, width));
    }

    std::vector<bool> dropped(width, false);
    for (const auto& name : options.drop_columns) {
        const auto it = std::find(column_names.begin(), column_names.end(), name);
        if (it == column_names.end())
            throw error(errc::column_not_found, fmt::format("drop column '{}' not found in '{}'", name, path.string()));
        dropped[static_cast<std::size_t>(it - column_names.begin())] = true;
    }
    if (dropped[label_pos])
        throw error(errc::invalid_config, fmt::format("label column '{}' is also dropped", column_names[label_pos]));

    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < width; ++c) {
        if (c != label_pos && !dropped[c]) feature_cols.push_back(c);
    }
    if (feature_cols.empty()) throw error(errc::empty_dataset, fmt::format("'{}' has no feature columns", path.string()));

    Dataset out;
    out.name = path.stem().string();
    for (auto c : feature_cols) out.feature_names.push_back(column_names[c]);

    std::vector<double> values;
    std::vector<double> row_values(feature_cols.size());
    for (std::size_t r = has_header ? 1 : 0; r < rows.size(); ++r) {
        const auto& [line_no, fields] = rows[r];
        if (fields.size() != width)
            throw error(errc::malformed_row,
                        fmt::format("line {}: expected {} fields, found {}", line_no, width, fields.size()));
        bool missing = is_missing(fields[label_pos]);
        for (std::size_t j = 0; j < feature_cols.size(); ++j) {
            const auto& cell = fields[feature_cols[j]];
            if (is_missing(cell)) {
                missing = true;
                continue;
            }
            const auto value = parse_real(cell);
            if (!value)
                throw error(errc::malformed_row, fmt::format("line {}: column '{}' holds non-numeric value '{}'",
                                                             line_no, column_names[feature_cols[j]], cell));
            row_values[j] = *value;
        }
        if (missing) continue;

        const auto& label = fields[label_pos];
        auto it = std::find(out.class_names.begin(), out.class_names.end(), label);
        if (it == out.class_names.end()) {
            out.class_names.push_back(label);
            it = out.class_names.end() - 1;
        }
        out.labels.push_back(static_cast<std::size_t>(it - out.class_names.begin()));
        values.insert(values.end(), row_values.begin(), row_values.end());
    }

    if (out.labels.empty())
        throw error(errc::empty_dataset, fmt::format("no complete rows remain in '{}'", path.string()));

    out.values = Matrix(out.labels.size(), feature_cols.size());
    for (std::size_t r = 0; r < out.labels.size(); ++r) {
        std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(r * feature_cols.size()), feature_cols.size(),
                    out.values.row(r).begin());
    }
    return out;
}

double percentile(std::span<const double> values, double q) {
    if (values.empty()) throw error(errc::empty_column, "percentile of an empty sequence");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

NormalizationParams fit_normalization(const Dataset& train, double clip_percentile) {
    if (train.samples() == 0) throw error(errc::empty_dataset, "cannot fit normalization on an empty dataset");
    if (!(clip_percentile >= 0.0 && clip_percentile < 50.0))
        throw error(errc::invalid_config, fmt::format("clip percentile {} outside [0, 50)", clip_percentile));

    NormalizationParams params;
    params.clip_percentile = clip_percentile;
    for (std::size_t j = 0; j < train.features(); ++j) {
        const auto col = train.values.column(j);
        double lo = 0.0;
        double hi = 0.0;
        if (clip_percentile == 0.0) {
            const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
            lo = *mn;
            hi = *mx;
        } else {
            lo = percentile(col, clip_percentile);
            hi = percentile(col, 100.0 - clip_percentile);
        }
        if (!(lo < hi)) {
            const auto& name = j < train.feature_names.size() ? train.feature_names[j] : std::to_string(j);
            throw error(errc::constant_feature, fmt::format("feature {} ('{}') is constant on the training data", j, name));
        }
        params.per_feature_min.push_back(lo);
        params.per_feature_max.push_back(hi);
    }
    return params;
}

Dataset apply_normalization(const NormalizationParams& params, const Dataset& data) {
    if (params.per_feature_min.size() != data.features() || params.per_feature_max.size() != data.features())
        throw error(errc::dimension_mismatch, fmt::format("normalization fitted on {} features, data has {}",
                                                          params.per_feature_min.size(), data.features()));
    Dataset out = data;
    for (std::size_t r = 0; r < out.samples(); ++r) {
        auto row = out.values.row(r);
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double lo = params.per_feature_min[j];
            const double scaled = (row[j] - lo) / (params.per_feature_max[j] - lo);
            row[j] = std::clamp(scaled, normalization_floor, 1.0);
        }
    }
    return out;
}

Split split_indices(const Dataset& data, const SplitSpec& spec) {
    const std::size_t m = data.samples();
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw error(errc::invalid_config, fmt::format("train fraction {} outside (0, 1)", spec.train_fraction));
    if (m < 2) throw error(errc::degenerate_split, "need at least two samples to split");

    std::mt19937_64 gen(spec.seed);
    Split out;
    auto take = [&](std::vector<std::size_t> pool) {
        const auto n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(pool.size())));
        shuffle(pool, gen);
        out.train_rows.insert(out.train_rows.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_train));
        out.test_rows.insert(out.test_rows.end(), pool.begin() + static_cast<std::ptrdiff_t>(n_train), pool.end());
        return n_train;
    };

    if (spec.stratified) {
        std::vector<std::vector<std::size_t>> by_class(data.classes());
        for (std::size_t i = 0; i < m; ++i) by_class[data.labels[i]].push_back(i);
        for (std::size_t k = 0; k < by_class.size(); ++k) {
            const auto n = by_class[k].size();
            const auto n_train = take(by_class[k]);
            if (n_train == 0 || n_train == n)
                throw error(errc::degenerate_split,
                            fmt::format("class '{}' ({} samples) would be empty in one partition", data.class_names[k], n));
        }
    } else {
        std::vector<std::size_t> all(m);
        for (std::size_t i = 0; i < m; ++i) all[i] = i;
        take(std::move(all));
    }

    if (out.train_rows.empty() || out.test_rows.empty())
        throw error(errc::degenerate_split, fmt::format("fraction {} leaves a partition of {} samples empty",
                                                        spec.train_fraction, m));
    std::sort(out.train_rows.begin(), out.train_rows.end());
    std::sort(out.test_rows.begin(), out.test_rows.end());
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec) {
    const auto s = split_indices(data, spec);
    return {data.select_rows(s.train_rows), data.select_rows(s.test_rows)};
}

}  // namespace fefs
