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

#include <cstdint>

#include "wmspoof/audio/buffer.hpp"

namespace wmspoof::audio {

// Parameters of the seeded noise-plus-tones test signal. Tone frequencies are
// drawn uniformly from [min_hz, max_hz] with random phases; tones are scaled
// jointly to tone_rms and white noise at noise_rms is added.
struct ToneNoiseSpec {
  double seconds = 4.0;
  int sample_rate = 16000;
  int tones = 3;
  double min_hz = 100.0;
  double max_hz = 800.0;
  double tone_rms = 0.064;
  double noise_rms = 0.01;
};

AudioBuffer make_tone_noise(std::uint64_t seed, const ToneNoiseSpec& spec = {});

AudioBuffer make_sine(double frequency_hz, double amplitude, int sample_rate, std::size_t length,
                      double phase = 0.0);

}  // namespace wmspoof::audio
