#include "fefs/error.hpp"

namespace fefs {

std::string_view to_string(errc code) noexcept {
    switch (code) {
        case errc::file_not_found: return "file not found";
        case errc::malformed_row: return "malformed row";
        case errc::empty_dataset: return "empty dataset";
        case errc::column_not_found: return "column not found";
        case errc::constant_feature: return "constant feature";
        case errc::dimension_mismatch: return "dimension mismatch";
        case errc::degenerate_split: return "degenerate split";
        case errc::empty_class: return "empty class";
        case errc::domain_error: return "domain error";
        case errc::empty_column: return "empty column";
        case errc::empty_subset: return "empty feature subset";
        case errc::length_mismatch: return "length mismatch";
        case errc::degenerate_input: return "degenerate input";
        case errc::invalid_config: return "invalid configuration";
    }
    return "unknown error";
}

bool is_config_error(errc code) noexcept {
    return code == errc::column_not_found || code == errc::invalid_config;
}

}  // namespace fefs
