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

#include "wmspoof/audio/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "wmspoof/rng.hpp"

namespace wmspoof::audio {

AudioBuffer make_sine(double frequency_hz, double amplitude, int sample_rate, std::size_t length, double phase) {
  AudioBuffer out;
  out.sample_rate = sample_rate;
  out.samples.resize(length);
  const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate;
  for (std::size_t i = 0; i < length; ++i) out.samples[i] = amplitude * std::sin(w * static_cast<double>(i) + phase);
  return out;
}

AudioBuffer make_tone_noise(std::uint64_t seed, const ToneNoiseSpec& spec) {
  Rng rng(mix_seed(seed, 0x70E5));
  const auto length = static_cast<std::size_t>(std::llround(spec.seconds * spec.sample_rate));
  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(length, 0.0);

  for (int t = 0; t < spec.tones; ++t) {
    const double freq = spec.min_hz + (spec.max_hz - spec.min_hz) * uniform_unit(rng);
    const double amp = 0.5 + uniform_unit(rng);
    const double phase = 2.0 * std::numbers::pi * uniform_unit(rng);
    const double w = 2.0 * std::numbers::pi * freq / spec.sample_rate;
    for (std::size_t i = 0; i < length; ++i) out.samples[i] += amp * std::sin(w * static_cast<double>(i) + phase);
  }
  const double tone_rms = rms(out.samples);
  if (tone_rms > 0.0) {
    for (double& s : out.samples) s *= spec.tone_rms / tone_rms;
  }

  std::normal_distribution<double> gauss(0.0, spec.noise_rms);
  for (double& s : out.samples) s += gauss(rng);
  clamp_unit(out.samples);
  return out;
}

}  // namespace wmspoof::audio
