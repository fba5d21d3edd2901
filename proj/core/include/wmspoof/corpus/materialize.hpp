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
#include <map>
#include <string>
#include <vector>

#include "wmspoof/corpus/mix_plan.hpp"

namespace wmspoof::corpus {

struct MaterializeOptions {
  std::filesystem::path audio_root;
  std::filesystem::path out_root;
  // Parent of one directory per external slot ("ext:wavmark" -> wavmark/).
  std::filesystem::path external_root;
  std::size_t jobs = 1;
};

struct SlotStats {
  std::size_t planned = 0;
  std::size_t written = 0;
  std::size_t failed = 0;
  // Segmental SNR against the resampled source, summed over records where
  // it is defined. External and clean records do not contribute.
  double snr_sum_db = 0.0;
  std::size_t snr_count = 0;

  double mean_snr_db() const;
};

struct MaterializeFailure {
  std::string utt_id;
  std::string slot;
  std::string reason;
};

struct MaterializeReport {
  // Keyed by "clean" or slot name.
  std::map<std::string, SlotStats> per_slot;
  // Sorted by utt_id.
  std::vector<MaterializeFailure> failures;

  std::size_t written() const;
  std::string to_tsv() const;
};

// Reads each record under audio_root (or the external slot directory),
// resamples to 16 kHz, embeds the record's payload when assigned to a
// built-in codec, and writes PCM-16 to out_root/<path>. Clean records take
// the same read/resample/write path. Per-record problems (missing audio,
// capacity, unsafe paths) become failure entries; the run continues.
MaterializeReport materialize(const MixPlan& plan, const MaterializeOptions& options);

}  // namespace wmspoof::corpus
