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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "schemes.hpp"
#include "wmspoof/audio/stft.hpp"

namespace wmspoof::wm::detail {
namespace {

constexpr std::uint64_t kTag = 0x9A5E;

// Phase coding over non-overlapping rectangular frames. Bits live in the
// phases of keyed mid-band bins of the first frame (+pi/2 for 1, -pi/2 for
// 0); every later frame is rotated by the same per-bin offset so the original
// inter-frame phase differences are kept.
class PhaseCodec final : public Codec {
 public:
  explicit PhaseCodec(const CodecConfig& c) : Codec(c) {}

  std::size_t capacity(const audio::AudioBuffer& audio) const override {
    return audio.size() >= frame() ? band_end() - band_begin() : 0;
  }

 protected:
  audio::AudioBuffer embed_bits(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const override {
    const std::size_t n = frame();
    auto frames = audio::stft(audio, n, n, audio::Window::kRectangular);
    const auto bins = keyed_bins(payload.size());

    // Weak bins get a magnitude floor so the phase survives requantization.
    double energy = 0.0;
    for (std::size_t k = 1; k + 1 < frames[0].magnitudes.size(); ++k) {
      energy += frames[0].magnitudes[k] * frames[0].magnitudes[k];
    }
    const double rms_mag = std::sqrt(energy / static_cast<double>(frames[0].magnitudes.size() - 2));
    const double floor_mag = std::max(config().strength * rms_mag, 4.0 * static_cast<double>(n) / 32768.0);

    for (std::size_t i = 0; i < payload.size(); ++i) {
      const std::size_t k = bins[i];
      const double target = payload.bits[i] ? std::numbers::pi / 2 : -std::numbers::pi / 2;
      const double offset = target - frames[0].phases[k];
      frames[0].magnitudes[k] = std::max(frames[0].magnitudes[k], floor_mag);
      frames[0].phases[k] = target;
      for (std::size_t f = 1; f < frames.size(); ++f) {
        frames[f].set_bin(k, std::polar(frames[f].magnitudes[k], frames[f].phases[k] + offset));
      }
    }

    audio::AudioBuffer out = audio;
    const std::size_t covered = frames.size() * n;
    const auto rebuilt = audio::istft(frames, covered, audio::Window::kRectangular);
    std::copy(rebuilt.begin(), rebuilt.end(), out.samples.begin());
    audio::clamp_unit(out.samples);
    return out;
  }

  DetectionResult detect_bits(const audio::AudioBuffer& audio, std::size_t payload_length) const override {
    const std::size_t n = frame();
    audio::AudioBuffer head;
    head.sample_rate = audio.sample_rate;
    head.samples.assign(audio.samples.begin(), audio.samples.begin() + static_cast<std::ptrdiff_t>(n));
    const auto frames = audio::stft(head, n, n, audio::Window::kRectangular);
    const auto bins = keyed_bins(payload_length);
    DetectionResult result;
    result.bits.bits.resize(payload_length);
    result.confidence.resize(payload_length);
    for (std::size_t i = 0; i < payload_length; ++i) {
      const double phase = frames[0].phases[bins[i]];
      result.bits.bits[i] = sign_bit(phase);
      result.confidence[i] = std::abs(std::sin(phase));
    }
    return result;
  }

 private:
  std::size_t frame() const { return config().segment; }
  std::size_t band_begin() const { return frame() / 8; }
  std::size_t band_end() const { return 3 * frame() / 8; }

  std::vector<std::size_t> keyed_bins(std::size_t count) const {
    auto bins = keyed_permutation(band_end() - band_begin(), count, mix_seed(config().key, kTag));
    for (auto& b : bins) b += band_begin();
    return bins;
  }
};

}  // namespace

std::unique_ptr<Codec> make_phase(const CodecConfig& config) { return std::make_unique<PhaseCodec>(config); }

}  // namespace wmspoof::wm::detail
