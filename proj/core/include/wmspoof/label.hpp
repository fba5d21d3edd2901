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

#include <optional>
#include <string>
#include <string_view>

namespace wmspoof {

// Trial class. Scores follow the higher-is-bonafide convention everywhere.
enum class Label { kBonafide, kSpoof };

inline std::string_view to_string(Label label) {
  return label == Label::kBonafide ? "bonafide" : "spoof";
}

// Strict vocabulary: only "bonafide" and "spoof" are accepted.
inline std::optional<Label> parse_label(std::string_view token) {
  if (token == "bonafide") return Label::kBonafide;
  if (token == "spoof") return Label::kSpoof;
  return std::nullopt;
}

}  // namespace wmspoof
