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

#include "wmspoof/audio/buffer.hpp"

namespace wmspoof::audio {

inline constexpr int kTargetSampleRate = 16000;
inline constexpr std::size_t kTargetLength = 64600;
inline constexpr int kResampleTaps = 64;

// Windowed-sinc (Hann, 64 taps) band-limited resampler. Output length is
// round(n * target / source). Equal rates return the input unchanged.
AudioBuffer resample(const AudioBuffer& audio, int target_rate);

// Truncates to target_len, or tiles the input end-to-end and cuts.
AudioBuffer fix_length(const AudioBuffer& audio, std::size_t target_len);

}  // namespace wmspoof::audio
