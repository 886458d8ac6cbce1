#include "volterra/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "volterra/errors.hpp"

namespace volterra {

std::string format_number(double x) {
  if (!std::isfinite(x))
    throw ValidationError("format_number: non-finite values are not representable");
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                       std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, end);
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof(esc), "\\u%04x", c);
          out += esc;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void render(std::string& out, const nlohmann::ordered_json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        render(out, it.value(), depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        render(out, v, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::string:
      append_escaped(out, j.get<std::string>());
      return;
    case nlohmann::json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case nlohmann::json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case nlohmann::json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case nlohmann::json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    case nlohmann::json::value_t::null:
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string render_json(const nlohmann::ordered_json& doc) {
  std::string out;
  render(out, doc, 0);
  out += "\n";
  return out;
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += "\"\"";
      else quoted.push_back(c);
    }
    quoted += "\"";
    return quoted;
  };
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out.push_back(',');
    out += field(header[i]);
  }
  out.push_back('\n');
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += field(row[i]);
    }
    out.push_back('\n');
  }
  return out;
}

nlohmann::ordered_json spec_to_json(const ProcessSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["alpha"] = spec.alpha;
  j["gamma"] = spec.gamma;
  j["lambda"] = spec.lambda;
  return j;
}

nlohmann::ordered_json make_report(const ProcessSpec& spec,
                                   nlohmann::ordered_json values,
                                   nlohmann::ordered_json errors,
                                   const std::string& provenance) {
  nlohmann::ordered_json j;
  j["spec"] = spec_to_json(spec);
  j["regime"] = nullptr;
  j["rho_lower"] = nullptr;
  j["rho_upper"] = nullptr;
  j["values"] = std::move(values);
  j["errors"] = std::move(errors);
  j["provenance"] = provenance;
  return j;
}

}  // namespace volterra
