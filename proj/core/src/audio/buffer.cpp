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

#include "wmspoof/audio/buffer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wmspoof/error.hpp"

namespace wmspoof::audio {

void validate(const AudioBuffer& audio) {
  if (audio.sample_rate <= 0) {
    throw InvalidInputError("sample rate must be positive, got " + std::to_string(audio.sample_rate));
  }
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    const double s = audio.samples[i];
    if (!std::isfinite(s) || std::abs(s) > 1.0) {
      throw InvalidInputError("sample " + std::to_string(i) + " outside [-1, 1] or non-finite");
    }
  }
}

void clamp_unit(std::vector<double>& samples) {
  for (double& s : samples) s = std::clamp(s, -1.0, 1.0);
}

double mean_power(const std::vector<double>& samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : samples) acc += s * s;
  return acc / static_cast<double>(samples.size());
}

double rms(const std::vector<double>& samples) { return std::sqrt(mean_power(samples)); }

}  // namespace wmspoof::audio
