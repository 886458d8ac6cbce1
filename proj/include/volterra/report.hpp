#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "volterra/process.hpp"

namespace volterra {

/// Decimal rendering of a double with 17 significant digits
/// (locale-independent, lossless round trip).
std::string format_number(double x);

/// Serializes a JSON document with format_number applied to every floating
/// value and 2-space indentation. Re-parsing and re-rendering a document
/// produced here yields byte-identical output.
std::string render_json(const nlohmann::ordered_json& doc);

/// RFC-4180 style CSV: header row, LF line endings, minimal quoting.
std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

nlohmann::ordered_json spec_to_json(const ProcessSpec& spec);

/// Standard report envelope: keys spec, regime, rho_lower, rho_upper,
/// values, errors, provenance, in that order.
nlohmann::ordered_json make_report(const ProcessSpec& spec,
                                   nlohmann::ordered_json values,
                                   nlohmann::ordered_json errors,
                                   const std::string& provenance);

}  // namespace volterra
