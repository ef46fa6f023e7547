#pragma once

// OutputRecord: the one payload every CLI subcommand emits, as CSV or JSON.
//
// Cells are strings so exact integers and rationals survive unchanged and
// floats keep the precision they were rendered with.
//
// CSV layout:
//   # schema=composition-runs/v1
//   # command=<name>
//   # param.<key>=<value>     (sorted by key)
//   # meta.<key>=<value>      (sorted by key)
//   <column>,<column>,...
//   <cell>,<cell>,...
//
// JSON layout: {"schema", "command", "params", "meta", "columns", "rows"}.

#include <comprun/error.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace comprun {

inline constexpr std::string_view kSchemaId = "composition-runs/v1";

struct OutputRecord {
  std::string command;
  std::map<std::string, std::string> params;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> meta;

  void add_row(std::vector<std::string> row) {
    require(row.size() == columns.size(), ErrorCode::invalid_argument,
            "row width " + std::to_string(row.size()) + " does not match " +
                std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
  }

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

inline nlohmann::json to_json(const OutputRecord& r) {
  nlohmann::json j;
  j["schema"] = kSchemaId;
  j["command"] = r.command;
  j["params"] = r.params;
  j["meta"] = r.meta;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  return j;
}

inline std::string emit_json(const OutputRecord& r) { return to_json(r).dump(2) + "\n"; }

inline OutputRecord parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
  require(j.value("schema", "") == kSchemaId, ErrorCode::parse_error,
          "unsupported or missing schema, expected " + std::string(kSchemaId));
  OutputRecord r;
  try {
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    r.meta = j.at("meta").get<std::map<std::string, std::string>>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    r.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed record: ") + e.what());
  }
  return r;
}

namespace detail {

inline std::string csv_cell(const std::string& cell) {
  // A leading '#' is quoted too so a data line never reads as metadata.
  if (cell.find_first_of(",\"\n\r") == std::string::npos && (cell.empty() || cell[0] != '#')) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  require(!quoted, ErrorCode::parse_error, "unterminated quoted CSV cell");
  cells.push_back(std::move(cell));
  return cells;
}

inline void require_single_line(const std::string& s) {
  require(s.find_first_of("\n\r") == std::string::npos, ErrorCode::invalid_argument,
          "CSV header values must not contain line breaks");
}

}  // namespace detail

inline std::string emit_csv(const OutputRecord& r) {
  std::ostringstream out;
  out << "# schema=" << kSchemaId << "\n";
  detail::require_single_line(r.command);
  out << "# command=" << r.command << "\n";
  for (const auto& [k, v] : r.params) {
    detail::require_single_line(k + v);
    out << "# param." << k << "=" << v << "\n";
  }
  for (const auto& [k, v] : r.meta) {
    detail::require_single_line(k + v);
    out << "# meta." << k << "=" << v << "\n";
  }
  auto write_line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << detail::csv_cell(cells[i]);
    }
    out << "\n";
  };
  write_line(r.columns);
  for (const auto& row : r.rows) write_line(row);
  return out.str();
}

inline OutputRecord parse_csv(std::string_view text) {
  OutputRecord r;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_schema = false;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      require(!have_header, ErrorCode::parse_error, "metadata line after the column header");
      const std::string body = line.substr(2);
      const auto eq = body.find('=');
      require(eq != std::string::npos, ErrorCode::parse_error, "metadata line without '=': " + line);
      const std::string key = body.substr(0, eq);
      const std::string value = body.substr(eq + 1);
      if (key == "schema") {
        require(value == kSchemaId, ErrorCode::parse_error, "unsupported schema " + value);
        have_schema = true;
      } else if (key == "command") {
        r.command = value;
      } else if (key.rfind("param.", 0) == 0) {
        r.params[key.substr(6)] = value;
      } else if (key.rfind("meta.", 0) == 0) {
        r.meta[key.substr(5)] = value;
      } else {
        throw Error(ErrorCode::parse_error, "unknown metadata key " + key);
      }
      continue;
    }
    // A quoted cell may span lines; an odd quote count means it is still open.
    std::string next;
    while (std::count(line.begin(), line.end(), '"') % 2 == 1 && std::getline(in, next)) {
      line += "\n" + next;
    }
    auto cells = detail::split_csv_line(line);
    if (!have_header) {
      r.columns = std::move(cells);
      have_header = true;
    } else {
      require(cells.size() == r.columns.size(), ErrorCode::parse_error, "ragged CSV row: " + line);
      r.rows.push_back(std::move(cells));
    }
  }
  require(have_schema, ErrorCode::parse_error, "missing schema line");
  require(have_header, ErrorCode::parse_error, "missing column header");
  return r;
}

enum class OutputFormat { csv, json };

inline std::string emit(const OutputRecord& r, OutputFormat f) {
  return f == OutputFormat::json ? emit_json(r) : emit_csv(r);
}

}  // namespace comprun
