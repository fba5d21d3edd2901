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

#include "wmspoof/audio/attack.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "wmspoof/audio/dsp.hpp"
#include "wmspoof/error.hpp"
#include "wmspoof/rng.hpp"

namespace wmspoof::audio {
namespace {

// Adds `noise` scaled so that P_signal / P_noise hits snr_db on the realized
// noise vector. A silent signal gets no noise.
AudioBuffer add_scaled_noise(const AudioBuffer& audio, const std::vector<double>& noise, double snr_db) {
  AudioBuffer out = audio;
  const double signal_power = mean_power(audio.samples);
  const double noise_power = mean_power(noise);
  if (signal_power == 0.0 || noise_power == 0.0) return out;
  const double scale = std::sqrt(signal_power / (noise_power * std::pow(10.0, snr_db / 10.0)));
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += scale * noise[i];
  clamp_unit(out.samples);
  return out;
}

struct AttackVisitor {
  const AudioBuffer& audio;

  AudioBuffer operator()(const AdditiveNoise& a) const {
    if (!std::isfinite(a.snr_db)) throw InvalidInputError("additive_noise: non-finite SNR");
    Rng rng(mix_seed(a.seed, 0xA77AC4));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> noise(audio.size());
    for (double& v : noise) v = gauss(rng);
    return add_scaled_noise(audio, noise, a.snr_db);
  }

  AudioBuffer operator()(const ResampleChain& a) const {
    if (a.intermediate_rate <= 0) throw InvalidInputError("resample_chain: intermediate rate must be positive");
    AudioBuffer out = resample(resample(audio, a.intermediate_rate), audio.sample_rate);
    // Round-trip rounding can leave the length off by one.
    out.samples.resize(audio.size(), 0.0);
    return out;
  }

  AudioBuffer operator()(const AmplitudeScale& a) const {
    if (!std::isfinite(a.gain)) throw InvalidInputError("amplitude_scale: non-finite gain");
    AudioBuffer out = audio;
    for (double& s : out.samples) s *= a.gain;
    clamp_unit(out.samples);
    return out;
  }
};

}  // namespace

AudioBuffer attack(const AudioBuffer& audio, const Attack& kind) { return std::visit(AttackVisitor{audio}, kind); }

AudioBuffer colored_noise_augment(const AudioBuffer& audio, SnrRange range, std::uint64_t seed) {
  if (!std::isfinite(range.low_db) || !std::isfinite(range.high_db) || range.low_db > range.high_db) {
    throw InvalidInputError("colored_noise_augment: SNR range must be finite and non-empty");
  }
  Rng rng(mix_seed(seed, 0xC010AED));
  std::array<double, kColoredNoiseTaps> fir{};
  for (double& c : fir) c = 2.0 * uniform_unit(rng) - 1.0;
  const double snr_db = range.low_db + (range.high_db - range.low_db) * uniform_unit(rng);

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> white(audio.size());
  for (double& v : white) v = gauss(rng);
  std::vector<double> colored(audio.size(), 0.0);
  for (std::size_t i = 0; i < white.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < fir.size() && k <= i; ++k) acc += fir[k] * white[i - k];
    colored[i] = acc;
  }
  return add_scaled_noise(audio, colored, snr_db);
}

}  // namespace wmspoof::audio
