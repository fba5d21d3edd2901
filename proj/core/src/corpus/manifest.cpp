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

#include "wmspoof/corpus/manifest.hpp"

#include <unordered_map>

#include "util/text.hpp"
#include "wmspoof/error.hpp"

namespace wmspoof::corpus {

std::optional<ManifestFormat> parse_manifest_format(std::string_view name) {
  if (name == "native_tsv" || name == "native") return ManifestFormat::kNativeTsv;
  if (name == "asvspoof_cm" || name == "asvspoof") return ManifestFormat::kAsvspoofCm;
  return std::nullopt;
}

std::vector<UtteranceRecord> parse_manifest_text(std::string_view text, ManifestFormat format,
                                                 std::string_view source) {
  const std::string src(source);
  std::vector<UtteranceRecord> records;
  std::unordered_map<std::string, std::size_t> seen;

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (detail::is_blank_or_comment(line)) return;
    std::string_view id, path, label_token;
    std::string derived_path;
    if (format == ManifestFormat::kNativeTsv) {
      const auto cols = detail::split(line, '\t');
      if (cols.size() != 3) {
        throw ParseError(src, line_no, "expected 3 tab-separated columns, got " + std::to_string(cols.size()));
      }
      id = detail::trim(cols[0]);
      path = detail::trim(cols[1]);
      label_token = detail::trim(cols[2]);
    } else {
      const auto cols = detail::split_whitespace(line);
      if (cols.size() != 5) {
        throw ParseError(src, line_no, "expected 5 whitespace-separated columns, got " + std::to_string(cols.size()));
      }
      id = cols[1];
      derived_path = std::string(id) + ".wav";
      path = derived_path;
      label_token = cols[4];
    }
    if (id.empty()) throw ParseError(src, line_no, "empty utterance id");
    if (path.empty()) throw ParseError(src, line_no, "empty path");

    const auto label = parse_label(label_token);
    if (!label) {
      throw ValidationError(src + ":" + std::to_string(line_no) + ": unknown label '" + std::string(label_token) +
                            "' (expected bonafide or spoof)");
    }
    auto [it, inserted] = seen.emplace(std::string(id), line_no);
    if (!inserted) {
      throw ValidationError(src + ": duplicate utterance id '" + it->first + "' on lines " +
                            std::to_string(it->second) + " and " + std::to_string(line_no));
    }
    records.push_back({std::string(id), std::string(path), *label});
  });
  return records;
}

std::vector<UtteranceRecord> parse_manifest(const std::filesystem::path& path, ManifestFormat format) {
  return parse_manifest_text(detail::read_text_file(path), format, path.string());
}

std::string format_manifest(const std::vector<UtteranceRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.utt_id;
    out += '\t';
    out += r.path;
    out += '\t';
    out += to_string(r.label);
    out += '\n';
  }
  return out;
}

void write_manifest(const std::filesystem::path& path, const std::vector<UtteranceRecord>& records) {
  detail::write_text_file(path, format_manifest(records));
}

}  // namespace wmspoof::corpus
