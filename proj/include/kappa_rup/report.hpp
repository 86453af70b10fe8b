#pragma once

// Byte-stable text emitters: every float is printed with 17 significant
// digits through std::to_chars (locale independent, '.' separator), objects
// keep sorted keys, lines end in '\n'.

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kappa_rup::report {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Shortest round-trip form, for labels and identifiers.
inline std::string format_short(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline void write_string(std::string& out, const std::string& s) {
  // nlohmann's escaping is already deterministic.
  out += nlohmann::json(s).dump();
}

inline void write_json(std::string& out, const nlohmann::json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, it.key());
        out += indent < 0 ? ":" : ": ";
        write_json(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_json(out, v, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// JSON text with 17-digit floats. indent < 0 gives a single line.
inline std::string to_json_text(const nlohmann::json& j, int indent = 2) {
  std::string out;
  detail::write_json(out, j, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

/// Self-describing CSV: '#'-prefixed metadata JSON line, header line, rows.
class CsvTable {
 public:
  CsvTable(nlohmann::json metadata, std::vector<std::string> columns)
      : metadata_(std::move(metadata)), columns_(std::move(columns)) {}

  /// Cells are pre-formatted strings; use `cell` for numbers.
  void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  static std::string cell(double v) {
    return std::isfinite(v) ? format_double(v) : std::string();
  }

  std::string str() const {
    std::string out = "# " + to_json_text(metadata_, -1) + "\n";
    append_line(out, columns_);
    for (const auto& r : rows_) append_line(out, r);
    return out;
  }

 private:
  static void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  }

  nlohmann::json metadata_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace kappa_rup::report
