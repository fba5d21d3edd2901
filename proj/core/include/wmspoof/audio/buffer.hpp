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
#include <vector>

namespace wmspoof::audio {

// Mono PCM with amplitudes in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 16000;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  double duration_seconds() const noexcept {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;
};

// Throws InvalidInputError unless the rate is positive and every sample is
// finite and within [-1, 1].
void validate(const AudioBuffer& audio);

// Clamps each sample into [-1, 1] in place.
void clamp_unit(std::vector<double>& samples);

double mean_power(const std::vector<double>& samples);

double rms(const std::vector<double>& samples);

}  // namespace wmspoof::audio
