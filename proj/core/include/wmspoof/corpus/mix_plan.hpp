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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmspoof/corpus/manifest.hpp"
#include "wmspoof/wm/codec.hpp"
#include "wmspoof/wm/payload.hpp"

namespace wmspoof::corpus {

// One member of a codec group. A slot without a config is external: its
// audio comes pre-watermarked from <external_root>/<slot>/<path>, where
// <slot> is the name with any "ext:" prefix removed.
struct CodecSlot {
  std::string name;
  std::optional<wm::CodecConfig> config;

  bool external() const noexcept { return !config.has_value(); }

  friend bool operator==(const CodecSlot&, const CodecSlot&) = default;
};

struct CodecGroup {
  std::string name;
  std::vector<CodecSlot> members;

  friend bool operator==(const CodecGroup&, const CodecGroup&) = default;
};

// Exactly two groups; watermarked utterances are split between them 1:1
// (up to parity).
struct Roster {
  std::array<CodecGroup, 2> groups;

  friend bool operator==(const Roster&, const Roster&) = default;
};

// "handcrafted": the six built-in schemes with keys derived from `key`.
// "dnn": external slots ext:wavmark, ext:timbre, ext:audioseal.
Roster default_roster(std::uint64_t key = 0);

// Throws ConfigError on empty groups, duplicate or reserved slot names,
// names containing whitespace, or invalid codec configs.
void validate(const Roster& roster);

struct Assignment {
  static constexpr int kClean = -1;
  int group = kClean;
  int member = kClean;

  bool clean() const noexcept { return group == kClean; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct MixPlan {
  double ratio = 0.0;
  std::uint64_t seed = 0;
  std::size_t payload_bits = 16;
  // When set, the watermarked sets for ratios 0.25 < 0.5 < 0.75 built from
  // the same seed are nested.
  bool nested = false;
  Roster roster;
  // Sorted by utt_id; assignments[i] belongs to records[i].
  std::vector<UtteranceRecord> records;
  std::vector<Assignment> assignments;

  const CodecSlot& slot(const Assignment& a) const;
  // "clean" or the slot name.
  std::string_view assignment_name(std::size_t index) const;

  friend bool operator==(const MixPlan&, const MixPlan&) = default;
};

struct PlanOptions {
  std::size_t payload_bits = 16;
  bool nested = false;
};

// round_half_up(p * n).
std::size_t watermark_count(double ratio, std::size_t n);

// Throws ValidationError for an empty manifest or duplicate ids, ConfigError
// for a ratio outside [0, 1] or a bad roster.
MixPlan build_mix_plan(std::vector<UtteranceRecord> records, double ratio, std::uint64_t seed, const Roster& roster,
                       const PlanOptions& options = {});

struct PlanCounts {
  std::size_t total = 0;
  std::size_t watermarked = 0;
  std::array<std::size_t, 2> per_class_total{};        // indexed by Label
  std::array<std::size_t, 2> per_class_watermarked{};  // indexed by Label
  std::array<std::size_t, 2> per_group{};
  std::array<std::vector<std::size_t>, 2> per_member;
};

PlanCounts count_plan(const MixPlan& plan);

// Re-checks every count invariant. Throws ValidationError naming the first
// violated one.
void validate(const MixPlan& plan);

// Keyed-random payload for one utterance; depends only on plan.seed,
// plan.payload_bits and the id.
wm::WatermarkPayload payload_for(const MixPlan& plan, std::string_view utt_id);

// Text format: "WMPLAN v1" header, key/value header lines, a "records N"
// line, then utt_id<TAB>path<TAB>label<TAB>assignment per record.
std::string format_plan(const MixPlan& plan);
MixPlan parse_plan(std::string_view text, std::string_view source = "<plan>");
void serialize_plan(const MixPlan& plan, const std::filesystem::path& path);
MixPlan load_plan(const std::filesystem::path& path);

}  // namespace wmspoof::corpus
