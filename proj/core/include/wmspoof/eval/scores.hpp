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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wmspoof/corpus/manifest.hpp"
#include "wmspoof/label.hpp"

namespace wmspoof::eval {

// Higher score means more bonafide.
struct Trial {
  std::string utt_id;
  double score = 0.0;
  Label label = Label::kBonafide;

  friend bool operator==(const Trial&, const Trial&) = default;
};

struct ScoreSet {
  std::vector<Trial> trials;

  std::size_t count(Label label) const;
  std::vector<double> scores(Label label) const;

  friend bool operator==(const ScoreSet&, const ScoreSet&) = default;
};

// Lines of "utt_id score label", or "utt_id score" when labels come from a
// sidecar manifest. Columns are whitespace-separated; blank and '#' lines
// are skipped. Non-numeric or non-finite scores raise ParseError with the
// line number. Ids present on only one side of the join, duplicate ids, and
// label disagreements raise ValidationError.
ScoreSet parse_scores_text(std::string_view text, std::string_view source = "<scores>");
ScoreSet parse_scores_text(std::string_view text, const std::vector<corpus::UtteranceRecord>& labels,
                           std::string_view source = "<scores>");
ScoreSet parse_scores(const std::filesystem::path& path);
ScoreSet parse_scores(const std::filesystem::path& path, const std::vector<corpus::UtteranceRecord>& labels);

// Three-column form with round-trip precision.
std::string format_scores(const ScoreSet& scores);
void write_scores(const ScoreSet& scores, const std::filesystem::path& path);

}  // namespace wmspoof::eval
