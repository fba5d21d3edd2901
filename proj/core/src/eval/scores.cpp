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

#include "wmspoof/eval/scores.hpp"

#include <cmath>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "util/text.hpp"
#include "wmspoof/error.hpp"

namespace wmspoof::eval {

std::size_t ScoreSet::count(Label label) const {
  std::size_t n = 0;
  for (const auto& t : trials) n += t.label == label;
  return n;
}

std::vector<double> ScoreSet::scores(Label label) const {
  std::vector<double> out;
  for (const auto& t : trials) {
    if (t.label == label) out.push_back(t.score);
  }
  return out;
}

namespace {

ScoreSet parse_impl(std::string_view text, const std::vector<corpus::UtteranceRecord>* sidecar,
                    std::string_view source) {
  const std::string src(source);
  std::unordered_map<std::string_view, Label> side;
  if (sidecar) {
    for (const auto& r : *sidecar) {
      if (!side.emplace(r.utt_id, r.label).second) {
        throw ValidationError(src + ": duplicate id '" + r.utt_id + "' in label sidecar");
      }
    }
  }

  ScoreSet set;
  std::unordered_set<std::string> seen;
  std::optional<std::size_t> columns;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (detail::is_blank_or_comment(line)) return;
    const auto cols = detail::split_whitespace(line);
    if (cols.size() != 2 && cols.size() != 3) {
      throw ParseError(src, line_no, "expected 'utt_id score [label]', got " + std::to_string(cols.size()) + " columns");
    }
    if (columns && *columns != cols.size()) throw ParseError(src, line_no, "inconsistent column count");
    columns = cols.size();

    const auto score = detail::parse_double(cols[1]);
    if (!score) throw ParseError(src, line_no, "non-numeric score '" + std::string(cols[1]) + "'");
    if (!std::isfinite(*score)) throw ParseError(src, line_no, "non-finite score '" + std::string(cols[1]) + "'");

    std::optional<Label> label;
    if (cols.size() == 3) {
      label = parse_label(cols[2]);
      if (!label) {
        throw ValidationError(src + ":" + std::to_string(line_no) + ": unknown label '" + std::string(cols[2]) + "'");
      }
    }
    if (sidecar) {
      const auto it = side.find(cols[0]);
      if (it == side.end()) {
        throw ValidationError(src + ":" + std::to_string(line_no) + ": id '" + std::string(cols[0]) +
                              "' has no entry in the label sidecar");
      }
      if (label && *label != it->second) {
        throw ValidationError(src + ":" + std::to_string(line_no) + ": label disagrees with sidecar for '" +
                              std::string(cols[0]) + "'");
      }
      label = it->second;
    }
    if (!label) throw ParseError(src, line_no, "two-column score line needs a label sidecar");

    std::string id(cols[0]);
    if (!seen.insert(id).second) {
      throw ValidationError(src + ":" + std::to_string(line_no) + ": duplicate id '" + id + "'");
    }
    set.trials.push_back({std::move(id), *score, *label});
  });

  if (sidecar) {
    for (const auto& r : *sidecar) {
      if (!seen.contains(r.utt_id)) {
        throw ValidationError(src + ": sidecar id '" + r.utt_id + "' has no score");
      }
    }
  }
  return set;
}

}  // namespace

ScoreSet parse_scores_text(std::string_view text, std::string_view source) {
  return parse_impl(text, nullptr, source);
}

ScoreSet parse_scores_text(std::string_view text, const std::vector<corpus::UtteranceRecord>& labels,
                           std::string_view source) {
  return parse_impl(text, &labels, source);
}

ScoreSet parse_scores(const std::filesystem::path& path) {
  return parse_impl(detail::read_text_file(path), nullptr, path.string());
}

ScoreSet parse_scores(const std::filesystem::path& path, const std::vector<corpus::UtteranceRecord>& labels) {
  return parse_impl(detail::read_text_file(path), &labels, path.string());
}

std::string format_scores(const ScoreSet& scores) {
  std::string out;
  for (const auto& t : scores.trials) {
    out += t.utt_id + " " + detail::format_double(t.score) + " " + std::string(to_string(t.label)) + "\n";
  }
  return out;
}

void write_scores(const ScoreSet& scores, const std::filesystem::path& path) {
  detail::write_text_file(path, format_scores(scores));
}

}  // namespace wmspoof::eval
