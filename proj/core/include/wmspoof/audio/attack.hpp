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
#include <variant>

#include "wmspoof/audio/buffer.hpp"

namespace wmspoof::audio {

// White Gaussian noise at an exact SNR relative to the input power.
struct AdditiveNoise {
  double snr_db = 40.0;
  std::uint64_t seed = 0;
};

// Resample to an intermediate rate and back to the original rate.
struct ResampleChain {
  int intermediate_rate = 8000;
};

// Multiply by gain, then clamp to [-1, 1].
struct AmplitudeScale {
  double gain = 1.0;
};

using Attack = std::variant<AdditiveNoise, ResampleChain, AmplitudeScale>;

AudioBuffer attack(const AudioBuffer& audio, const Attack& kind);

struct SnrRange {
  double low_db = 10.0;
  double high_db = 40.0;
};

// Stationary colored-noise augmentation: seeded white noise through a random
// 10-tap FIR, scaled to an SNR drawn uniformly from the range and added.
// A simplified stand-in for RawBoost's colored additive noise.
AudioBuffer colored_noise_augment(const AudioBuffer& audio, SnrRange range, std::uint64_t seed);

inline constexpr int kColoredNoiseTaps = 10;

}  // namespace wmspoof::audio
