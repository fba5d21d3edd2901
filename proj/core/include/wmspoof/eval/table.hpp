// Copyright 2026 The wmspoof Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wmspoof::eval {

// 100 * (eer_p - eer_0) / eer_0, unrounded. Throws UndefinedMetricError
// when eer_0 is zero and InvalidInputError for non-finite input.
double relative_degradation(double eer_p, double eer_0);

// Rounds halves away from zero at the given number of decimals. A 1e-9
// guard absorbs binary representation error (20.545 stays 20.55).
double round_half_up(double value, int decimals = 2);

// "%.2f" of round_half_up(value, 2).
std::string format_percent(double value);

// Watermark ratios, in percent, that may appear as columns.
inline constexpr int kTableRatios[] = {75, 50, 25, 0};

// EER cells keyed by (row, ratio percent). Rows keep insertion order.
class RatioTable {
 public:
  // Throws ValidationError for a ratio outside kTableRatios, a duplicate
  // cell, or a non-finite value.
  void add(const std::string& row, int ratio, double eer);

  const std::vector<std::string>& rows() const noexcept { return rows_; }
  // Ratios present in any row, descending.
  std::vector<int> ratios() const;
  std::optional<double> cell(const std::string& row, int ratio) const;

  // Relative degradation of the 75% cell against the 0% cell. Throws
  // ValidationError when either cell is missing.
  double delta(const std::string& row) const;

  friend bool operator==(const RatioTable&, const RatioTable&) = default;

 private:
  std::vector<std::string> rows_;
  std::map<std::pair<std::string, int>, double> cells_;
};

struct EmittedTable {
  std::string text;
  std::string csv;
};

// Aligned plain text (two decimals) and CSV (round-trip precision for EER
// cells, two decimals for the delta). Header names the first column
// `row_label`. With `with_delta`, every row needs its 75% and 0% cells.
EmittedTable emit_ratio_table(const RatioTable& table, bool with_delta, std::string_view row_label = "Dataset");

// Parses the CSV produced above. Returns the cells and, when present, the
// delta column keyed by row.
struct ParsedTable {
  RatioTable table;
  std::map<std::string, double> delta;
};
ParsedTable parse_ratio_table_csv(std::string_view csv);

}  // namespace wmspoof::eval
