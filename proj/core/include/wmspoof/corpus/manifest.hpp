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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmspoof/label.hpp"

namespace wmspoof::corpus {

struct UtteranceRecord {
  std::string utt_id;
  // Relative to the audio root.
  std::string path;
  Label label = Label::kBonafide;

  friend bool operator==(const UtteranceRecord&, const UtteranceRecord&) = default;
};

enum class ManifestFormat {
  // utt_id<TAB>path<TAB>label
  kNativeTsv,
  // ASVspoof CM protocol: five whitespace-separated columns, utt_id in the
  // second and the label in the fifth. The path becomes "<utt_id>.wav".
  kAsvspoofCm,
};

std::optional<ManifestFormat> parse_manifest_format(std::string_view name);

// Throws ParseError for malformed lines and ValidationError for duplicate
// ids or labels outside {bonafide, spoof}. Blank lines and lines starting
// with '#' are skipped.
std::vector<UtteranceRecord> parse_manifest(const std::filesystem::path& path, ManifestFormat format);
std::vector<UtteranceRecord> parse_manifest_text(std::string_view text, ManifestFormat format,
                                                 std::string_view source = "<manifest>");

std::string format_manifest(const std::vector<UtteranceRecord>& records);
void write_manifest(const std::filesystem::path& path, const std::vector<UtteranceRecord>& records);

}  // namespace wmspoof::corpus
