#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "szoht/solver.hpp"

namespace szoht::bench {

enum class Format { csv, json };

Format parse_format(std::string_view name);
const char* extension(Format f);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double v);

inline constexpr std::string_view kTraceHeader = "iter,queries,f,dist_to_opt,seed";

/// One row per logged iterate of every run, seeds in run order.
/// dist_to_opt is empty when x* is unknown.
std::string traces_to_csv(const std::vector<RunRecord>& runs);
std::string traces_to_json(const std::vector<RunRecord>& runs);
std::string render_traces(const std::vector<RunRecord>& runs, Format f);

/// Small column-oriented table for summaries (theory, comparisons, sweeps).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_csv() const;
  std::string to_json() const;
  std::string render(Format f) const { return f == Format::csv ? to_csv() : to_json(); }
};

}  // namespace szoht::bench
