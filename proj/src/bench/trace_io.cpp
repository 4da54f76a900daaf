#include "szoht/bench/trace_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace szoht::bench {

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

const char* extension(Format f) { return f == Format::csv ? ".csv" : ".json"; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string traces_to_csv(const std::vector<RunRecord>& runs) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto& run : runs) {
    for (const auto& p : run.trace) {
      out += fmt::format("{},{},{},{},{}\n", p.iteration, p.queries, format_number(p.value),
                         p.distance ? format_number(*p.distance) : std::string(), run.seed);
    }
  }
  return out;
}

std::string traces_to_json(const std::vector<RunRecord>& runs) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& run : runs) {
    nlohmann::ordered_json r;
    r["solver"] = run.solver;
    r["problem"] = run.problem;
    r["seed"] = run.seed;
    r["status"] = to_string(run.status);
    if (!run.diagnostic.empty()) r["diagnostic"] = run.diagnostic;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : run.config) cfg[k] = v;
    r["config"] = cfg;
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& p : run.trace) {
      nlohmann::ordered_json row;
      row["iter"] = p.iteration;
      row["queries"] = p.queries;
      row["f"] = p.value;
      row["dist_to_opt"] = p.distance ? nlohmann::ordered_json(*p.distance) : nullptr;
      trace.push_back(std::move(row));
    }
    r["trace"] = std::move(trace);
    doc.push_back(std::move(r));
  }
  return doc.dump(1) + "\n";
}

std::string render_traces(const std::vector<RunRecord>& runs, Format f) {
  return f == Format::csv ? traces_to_csv(runs) : traces_to_json(runs);
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out = fmt::format("{}\n", fmt::join(columns, ","));
  for (const auto& row : rows) out += fmt::format("{}\n", fmt::join(row, ","));
  return out;
}

std::string Table::to_json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < columns.size(); ++i) r[columns[i]] = row[i];
    doc.push_back(std::move(r));
  }
  return doc.dump(1) + "\n";
}

}  // namespace szoht::bench
