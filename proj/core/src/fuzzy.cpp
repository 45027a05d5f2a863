#include "fefs/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fefs/error.hpp"

namespace fefs {

std::string_view to_string(MeanKind kind) noexcept {
    switch (kind) {
        case MeanKind::arithmetic: return "arithmetic";
        case MeanKind::geometric: return "geometric";
        case MeanKind::harmonic: return "harmonic";
    }
    return "?";
}

MeanKind parse_mean_kind(std::string_view text) {
    if (text == "arithmetic" || text == "A" || text == "a") return MeanKind::arithmetic;
    if (text == "geometric" || text == "G" || text == "g") return MeanKind::geometric;
    if (text == "harmonic" || text == "H" || text == "h") return MeanKind::harmonic;
    throw error(errc::invalid_config, fmt::format("unknown mean kind '{}'", text));
}

double mean(std::span<const double> values, MeanKind kind) {
    if (values.empty()) throw error(errc::empty_column, "mean of an empty sequence");
    const auto n = static_cast<double>(values.size());
    double acc = 0.0;
    switch (kind) {
        case MeanKind::arithmetic:
            for (double v : values) acc += v;
            return acc / n;
        case MeanKind::geometric:
            for (double v : values) acc += std::log(v);
            return std::exp(acc / n);
        case MeanKind::harmonic:
            for (double v : values) acc += 1.0 / v;
            return n / acc;
    }
    return 0.0;
}

IdealVectorSet ideal_vector_set(const Dataset& train, MeanKind kind) {
    const std::size_t n_classes = train.classes();
    const std::size_t d = train.features();

    std::vector<std::vector<std::size_t>> members(n_classes);
    for (std::size_t i = 0; i < train.samples(); ++i) members[train.labels[i]].push_back(i);

    IdealVectorSet out;
    out.vectors = Matrix(n_classes, d);
    out.class_order = train.class_names;
    out.mean_kind = kind;

    std::vector<double> buffer;
    for (std::size_t k = 0; k < n_classes; ++k) {
        if (members[k].empty())
            throw error(errc::empty_class, fmt::format("class {} ('{}') has no training samples", k, train.class_names[k]));
        buffer.resize(members[k].size());
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < members[k].size(); ++i) {
                const double x = train.values(members[k][i], j);
                if (!(x >= 0.0 && x <= 1.0))
                    throw error(errc::domain_error, fmt::format("value {} of feature {} outside [0, 1]", x, j));
                buffer[i] = x;
            }
            out.vectors(k, j) = mean(buffer, kind);
        }
    }
    return out;
}

double lukasiewicz_similarity(double x, double v, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw error(errc::domain_error, fmt::format("similarity exponent p = {} must be > 0", p));
    if (!(x >= 0.0 && x <= 1.0) || !(v >= 0.0 && v <= 1.0))
        throw error(errc::domain_error, fmt::format("similarity arguments ({}, {}) outside [0, 1]", x, v));
    const double radicand = std::clamp(1.0 - std::abs(std::pow(x, p) - std::pow(v, p)), 0.0, 1.0);
    return std::pow(radicand, 1.0 / p);
}

SimilarityMatrix similarity_matrix(const Dataset& samples, const IdealVectorSet& ideals, double p) {
    if (samples.features() != ideals.vectors.cols())
        throw error(errc::dimension_mismatch, fmt::format("samples have {} features, ideal vectors {}",
                                                          samples.features(), ideals.vectors.cols()));
    const std::size_t n = ideals.vectors.rows();
    const std::size_t d = samples.features();

    SimilarityMatrix out;
    out.p = p;
    out.entries = Matrix(samples.samples() * n, d);
    out.row_index.reserve(samples.samples() * n);
    for (std::size_t i = 0; i < samples.samples(); ++i) {
        const auto x = samples.values.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = ideals.vectors.row(k);
            auto dst = out.entries.row(i * n + k);
            for (std::size_t j = 0; j < d; ++j) dst[j] = lukasiewicz_similarity(x[j], v[j], p);
            out.row_index.emplace_back(i, k);
        }
    }
    return out;
}

void write_similarity_csv(std::ostream& out, const SimilarityMatrix& matrix, std::span<const std::string> feature_names) {
    fmt::print(out, "sample_index,class_index");
    for (std::size_t j = 0; j < matrix.features(); ++j)
        fmt::print(out, ",{}", j < feature_names.size() ? feature_names[j] : fmt::format("f{}", j));
    fmt::print(out, "\n");
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        fmt::print(out, "{},{}", matrix.row_index[r].first, matrix.row_index[r].second);
        for (double v : matrix.entries.row(r)) fmt::print(out, ",{:.6g}", v);
        fmt::print(out, "\n");
    }
}

}  // namespace fefs
