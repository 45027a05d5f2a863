#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fefs {

/// Lower clamp applied after normalization. Keeps geometric and harmonic
/// means away from log(0) and 1/0.
inline constexpr double normalization_floor = 1e-6;

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

    [[nodiscard]] std::vector<double> column(std::size_t c) const;

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Labelled tabular data. Labels are stored as indices into `class_names`,
/// assigned in order of first appearance in the source file. Row subsets keep
/// the full class list so train/test halves share one class indexing.
struct Dataset {
    Matrix values;
    std::vector<std::size_t> labels;
    std::vector<std::string> class_names;
    std::vector<std::string> feature_names;
    std::string name;

    [[nodiscard]] std::size_t samples() const noexcept { return values.rows(); }
    [[nodiscard]] std::size_t features() const noexcept { return values.cols(); }
    [[nodiscard]] std::size_t classes() const noexcept { return class_names.size(); }

    [[nodiscard]] Dataset select_rows(std::span<const std::size_t> rows) const;
    [[nodiscard]] Dataset select_features(std::span<const std::size_t> features) const;
    [[nodiscard]] std::vector<std::size_t> class_counts() const;
};

/// Label column given either by header name or by zero-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

struct CsvOptions {
    ColumnRef label_column = std::size_t{0};
    std::set<std::string> drop_columns;
};

/// Reads a comma-separated file. The first row is treated as a header when
/// any of its non-label cells is not numeric. Rows holding a missing marker
/// ("?" or an empty cell) are dropped.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options);

struct NormalizationParams {
    std::vector<double> per_feature_min;
    std::vector<double> per_feature_max;
    double clip_percentile = 0.0;
};

/// Linear-interpolated percentile of `values` (need not be sorted), q in [0, 100].
double percentile(std::span<const double> values, double q);

NormalizationParams fit_normalization(const Dataset& train, double clip_percentile = 0.0);

/// Min-max maps every value and clamps it into [normalization_floor, 1].
Dataset apply_normalization(const NormalizationParams& params, const Dataset& data);

struct SplitSpec {
    std::uint64_t seed = 0;
    double train_fraction = 0.5;
    bool stratified = false;
};

struct Split {
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

/// Row indices of a random train/test partition, each half in ascending order.
Split split_indices(const Dataset& data, const SplitSpec& spec);

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

}  // namespace fefs
