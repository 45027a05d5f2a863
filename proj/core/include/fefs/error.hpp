#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fefs {

/// Failure categories raised by the library. The CLI maps these onto exit
/// codes, so every throw site picks the most specific one.
enum class errc {
    file_not_found,
    malformed_row,
    empty_dataset,
    column_not_found,
    constant_feature,
    dimension_mismatch,
    degenerate_split,
    empty_class,
    domain_error,
    empty_column,
    empty_subset,
    length_mismatch,
    degenerate_input,
    invalid_config,
};

std::string_view to_string(errc code) noexcept;

/// True for errors caused by how the tool was invoked (bad flag, bad column
/// name) rather than by the content of the data.
bool is_config_error(errc code) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace fefs
