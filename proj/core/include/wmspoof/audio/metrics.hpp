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

inline constexpr std::size_t kSnrSegment = 512;
inline constexpr double kSnrFloorDb = -10.0;
inline constexpr double kSnrCeilingDb = 80.0;
inline constexpr double kSilenceEnergy = 1e-10;

// Mean over segments of 10 log10(sum ref^2 / sum (ref - test)^2), each clamped
// to [-10, 80] dB. Segments with reference energy below 1e-10 are skipped;
// a trailing partial segment counts as a segment. Throws
// UndefinedMetricError when no segment qualifies.
double segmental_snr(const AudioBuffer& reference, const AudioBuffer& test,
                     std::size_t segment = kSnrSegment);

// Global 10 log10(P_ref / P_(test - ref)).
double global_snr(const AudioBuffer& reference, const AudioBuffer& test);

}  // namespace wmspoof::audio
