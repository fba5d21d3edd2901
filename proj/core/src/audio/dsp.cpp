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

#include "wmspoof/audio/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wmspoof/error.hpp"

namespace wmspoof::audio {
namespace {

// Passband edge as a fraction of the lower of the two Nyquist rates.
constexpr double kCutoffFraction = 0.95;

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

AudioBuffer resample(const AudioBuffer& audio, int target_rate) {
  if (target_rate <= 0) throw InvalidInputError("target rate must be positive");
  if (audio.sample_rate <= 0) throw InvalidInputError("source rate must be positive");
  if (target_rate == audio.sample_rate) return audio;

  const double step = static_cast<double>(audio.sample_rate) / target_rate;
  const double cutoff = kCutoffFraction * std::min(1.0, static_cast<double>(target_rate) / audio.sample_rate);
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(audio.size()) * target_rate / audio.sample_rate));

  constexpr int half = kResampleTaps / 2;
  const auto n = static_cast<long>(audio.size());

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.samples.resize(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    const double t = static_cast<double>(i) * step;
    const long base = static_cast<long>(std::floor(t));
    double acc = 0.0;
    double norm = 0.0;
    for (long k = base - half + 1; k <= base + half; ++k) {
      const double x = t - static_cast<double>(k);
      const double window = 0.5 * (1.0 + std::cos(std::numbers::pi * x / half));
      const double h = cutoff * sinc(cutoff * x) * window;
      norm += h;
      if (k >= 0 && k < n) acc += h * audio.samples[static_cast<std::size_t>(k)];
    }
    out.samples[i] = std::clamp(acc / norm, -1.0, 1.0);
  }
  return out;
}

AudioBuffer fix_length(const AudioBuffer& audio, std::size_t target_len) {
  if (audio.empty()) throw InvalidInputError("fix_length needs at least one sample");
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  if (audio.size() >= target_len) {
    out.samples.assign(audio.samples.begin(), audio.samples.begin() + static_cast<std::ptrdiff_t>(target_len));
    return out;
  }
  out.samples.reserve(target_len);
  while (out.samples.size() < target_len) {
    const std::size_t take = std::min(audio.size(), target_len - out.samples.size());
    out.samples.insert(out.samples.end(), audio.samples.begin(),
                       audio.samples.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

}  // namespace wmspoof::audio
