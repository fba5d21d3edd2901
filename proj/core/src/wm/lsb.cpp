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

#include "schemes.hpp"

namespace wmspoof::wm::detail {
namespace {

constexpr std::uint64_t kTag = 0x15B;

std::uint16_t quantize(double x) {
  const long q = std::clamp(std::lround(x * 32768.0), -32768L, 32767L);
  return static_cast<std::uint16_t>(static_cast<std::int16_t>(q));
}

double dequantize(std::uint16_t u) { return static_cast<std::int16_t>(u) / 32768.0; }

// Keyed sample positions, `spread` per bit group; each group carries one bit
// per plane. Detection is a majority vote over the group (ties -> 0).
class LsbCodec final : public Codec {
 public:
  explicit LsbCodec(const CodecConfig& c) : Codec(c) {}

  std::size_t capacity(const audio::AudioBuffer& audio) const override {
    return (audio.size() / config().segment) * planes();
  }

 protected:
  audio::AudioBuffer embed_bits(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const override {
    audio::AudioBuffer out = audio;
    const std::size_t spread = config().segment;
    const std::size_t groups = (payload.size() + planes() - 1) / planes();
    const auto positions = keyed_permutation(audio.size(), groups * spread, mix_seed(config().key, kTag));
    for (std::size_t i = 0; i < payload.size(); ++i) {
      const std::size_t group = i / planes();
      const auto plane = static_cast<unsigned>(i % planes());
      const auto mask = static_cast<std::uint16_t>(1u << plane);
      for (std::size_t j = 0; j < spread; ++j) {
        double& sample = out.samples[positions[group * spread + j]];
        std::uint16_t u = quantize(sample);
        u = static_cast<std::uint16_t>(payload.bits[i] ? (u | mask) : (u & ~mask));
        sample = dequantize(u);
      }
    }
    return out;
  }

  DetectionResult detect_bits(const audio::AudioBuffer& audio, std::size_t payload_length) const override {
    const std::size_t spread = config().segment;
    const std::size_t groups = (payload_length + planes() - 1) / planes();
    const auto positions = keyed_permutation(audio.size(), groups * spread, mix_seed(config().key, kTag));
    DetectionResult result;
    result.bits.bits.resize(payload_length);
    result.confidence.resize(payload_length);
    for (std::size_t i = 0; i < payload_length; ++i) {
      const std::size_t group = i / planes();
      const auto plane = static_cast<unsigned>(i % planes());
      std::size_t ones = 0;
      for (std::size_t j = 0; j < spread; ++j) {
        ones += (quantize(audio.samples[positions[group * spread + j]]) >> plane) & 1u;
      }
      result.bits.bits[i] = 2 * ones > spread ? 1 : 0;
      result.confidence[i] =
          std::abs(2.0 * static_cast<double>(ones) - static_cast<double>(spread)) / static_cast<double>(spread);
    }
    return result;
  }

 private:
  std::size_t planes() const { return static_cast<std::size_t>(config().strength); }
};

}  // namespace

std::unique_ptr<Codec> make_lsb(const CodecConfig& config) { return std::make_unique<LsbCodec>(config); }

}  // namespace wmspoof::wm::detail
