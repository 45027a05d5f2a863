#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "fefs/data.hpp"

namespace fefs::test {

inline Dataset make_dataset(const std::vector<std::vector<double>>& rows, const std::vector<std::size_t>& labels,
                            std::size_t n_classes = 0) {
    Dataset d;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    d.values = Matrix(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) d.values(r, c) = rows[r][c];
    }
    d.labels = labels;
    std::size_t n = n_classes;
    for (auto l : labels) n = std::max(n, l + 1);
    for (std::size_t k = 0; k < n; ++k) d.class_names.push_back("c" + std::to_string(k));
    for (std::size_t c = 0; c < cols; ++c) d.feature_names.push_back("f" + std::to_string(c));
    d.name = "synthetic";
    return d;
}

/// Values uniform in [lo, hi], labels cycling through the classes so every
/// class is populated.
inline Dataset random_dataset(std::mt19937_64& gen, std::size_t m, std::size_t d, std::size_t n_classes,
                              double lo = normalization_floor, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<std::vector<double>> rows(m, std::vector<double>(d));
    std::vector<std::size_t> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (auto& v : rows[i]) v = u(gen);
        labels[i] = i % n_classes;
    }
    return make_dataset(rows, labels, n_classes);
}

/// Class indicator in feature 0, uniform noise elsewhere.
inline Dataset indicator_dataset(std::mt19937_64& gen, std::size_t m, std::size_t noise_features) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> rows(m, std::vector<double>(1 + noise_features));
    std::vector<std::size_t> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
        labels[i] = i % 2;
        rows[i][0] = static_cast<double>(labels[i]);
        for (std::size_t j = 1; j <= noise_features; ++j) rows[i][j] = u(gen);
    }
    return make_dataset(rows, labels, 2);
}

class TempFile {
public:
    explicit TempFile(const std::string& contents, const std::string& name = "fefs_test.csv") {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() / (std::to_string(::getpid()) + "_" + std::to_string(++counter) + "_" + name);
        std::ofstream(path_) << contents;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace fefs::test
