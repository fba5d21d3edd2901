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

#include "wmspoof/eval/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "util/text.hpp"
#include "wmspoof/error.hpp"

namespace wmspoof::eval {

double relative_degradation(double eer_p, double eer_0) {
  if (!std::isfinite(eer_p) || !std::isfinite(eer_0)) throw InvalidInputError("EER values must be finite");
  if (eer_0 == 0.0) throw UndefinedMetricError("relative degradation is undefined for a 0% reference EER");
  return 100.0 * (eer_p - eer_0) / eer_0;
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double magnitude = std::floor(std::abs(value) * scale + 0.5 + 1e-9) / scale;
  return std::copysign(magnitude, value);
}

std::string format_percent(double value) {
  char buf[64];
  double r = round_half_up(value, 2);
  if (r == 0.0) r = 0.0;  // no "-0.00"
  std::snprintf(buf, sizeof buf, "%.2f", r);
  return buf;
}

void RatioTable::add(const std::string& row, int ratio, double eer) {
  if (std::find(std::begin(kTableRatios), std::end(kTableRatios), ratio) == std::end(kTableRatios)) {
    throw ValidationError("ratio " + std::to_string(ratio) + "% is not one of 75, 50, 25, 0");
  }
  if (!std::isfinite(eer)) throw ValidationError("non-finite EER for '" + row + "'");
  if (row.empty()) throw ValidationError("empty row name");
  if (!cells_.emplace(std::pair{row, ratio}, eer).second) {
    throw ValidationError("duplicate cell (" + row + ", " + std::to_string(ratio) + "%)");
  }
  if (std::find(rows_.begin(), rows_.end(), row) == rows_.end()) rows_.push_back(row);
}

std::vector<int> RatioTable::ratios() const {
  std::set<int, std::greater<>> present;
  for (const auto& [key, _] : cells_) present.insert(key.second);
  return {present.begin(), present.end()};
}

std::optional<double> RatioTable::cell(const std::string& row, int ratio) const {
  const auto it = cells_.find({row, ratio});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

double RatioTable::delta(const std::string& row) const {
  const auto hi = cell(row, 75);
  const auto base = cell(row, 0);
  if (!base) throw ValidationError("row '" + row + "' has no 0% cell; cannot compute the delta");
  if (!hi) throw ValidationError("row '" + row + "' has no 75% cell; cannot compute the delta");
  return relative_degradation(*hi, *base);
}

EmittedTable emit_ratio_table(const RatioTable& table, bool with_delta, std::string_view row_label) {
  const auto ratios = table.ratios();
  std::vector<std::vector<std::string>> text_rows;
  std::string csv(row_label);

  std::vector<std::string> header{std::string(row_label)};
  for (int r : ratios) {
    header.push_back(std::to_string(r) + "%");
    csv += "," + std::to_string(r);
  }
  if (with_delta) {
    header.push_back("75% Delta(%)");
    csv += ",delta75";
  }
  csv += "\n";
  text_rows.push_back(header);

  for (const auto& row : table.rows()) {
    std::vector<std::string> cols{row};
    csv += row;
    for (int r : ratios) {
      const auto v = table.cell(row, r);
      cols.push_back(v ? format_percent(*v) : "-");
      csv += "," + (v ? detail::format_double(*v) : std::string());
    }
    if (with_delta) {
      const auto d = format_percent(table.delta(row));
      cols.push_back(d);
      csv += "," + d;
    }
    csv += "\n";
    text_rows.push_back(std::move(cols));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& cols : text_rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) width[c] = std::max(width[c], cols[c].size());
  }
  std::string text;
  for (const auto& cols : text_rows) {
    std::string line;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c == 0) {
        line += cols[c] + std::string(width[c] - cols[c].size(), ' ');
      } else {
        line += "  " + std::string(width[c] - cols[c].size(), ' ') + cols[c];
      }
    }
    text += line + "\n";
  }
  return {std::move(text), std::move(csv)};
}

ParsedTable parse_ratio_table_csv(std::string_view csv) {
  ParsedTable out;
  std::vector<std::optional<int>> column_ratio;
  std::optional<std::size_t> delta_col;
  bool header = true;
  detail::for_each_line(csv, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    const auto cols = detail::split(line, ',');
    if (header) {
      header = false;
      for (std::size_t c = 1; c < cols.size(); ++c) {
        if (cols[c] == "delta75") {
          delta_col = c;
          column_ratio.emplace_back();
          continue;
        }
        const auto r = detail::parse_u64(cols[c]);
        if (!r) throw ParseError("<csv>", line_no, "bad ratio column '" + std::string(cols[c]) + "'");
        column_ratio.emplace_back(static_cast<int>(*r));
      }
      return;
    }
    if (cols.size() != column_ratio.size() + 1) throw ParseError("<csv>", line_no, "column count mismatch");
    const std::string row(cols[0]);
    for (std::size_t c = 1; c < cols.size(); ++c) {
      if (cols[c].empty()) continue;
      const auto v = detail::parse_double(cols[c]);
      if (!v) throw ParseError("<csv>", line_no, "bad number '" + std::string(cols[c]) + "'");
      if (delta_col && c == *delta_col) {
        out.delta[row] = *v;
      } else {
        out.table.add(row, *column_ratio[c - 1], *v);
      }
    }
  });
  return out;
}

}  // namespace wmspoof::eval
