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

#include <cmath>

#include "schemes.hpp"

namespace wmspoof::wm::detail {
namespace {

constexpr std::uint64_t kTag = 0xD555;

class DsssCodec final : public Codec {
 public:
  explicit DsssCodec(const CodecConfig& c) : Codec(c) {}

  std::size_t capacity(const audio::AudioBuffer& audio) const override { return audio.size() / config().segment; }

 protected:
  audio::AudioBuffer embed_bits(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const override {
    audio::AudioBuffer out = audio;
    const std::size_t len = config().segment;
    const double alpha = config().strength;
    for (std::size_t s = 0; s < payload.size(); ++s) {
      const auto pn = chips(s);
      const double sign = payload.bits[s] ? 1.0 : -1.0;
      for (std::size_t i = 0; i < len; ++i) out.samples[s * len + i] += alpha * sign * pn[i];
    }
    audio::clamp_unit(out.samples);
    return out;
  }

  DetectionResult detect_bits(const audio::AudioBuffer& audio, std::size_t payload_length) const override {
    const std::size_t len = config().segment;
    DetectionResult result;
    result.bits.bits.resize(payload_length);
    result.confidence.resize(payload_length);
    for (std::size_t s = 0; s < payload_length; ++s) {
      const auto pn = chips(s);
      double corr = 0.0;
      double energy = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        const double y = audio.samples[s * len + i];
        corr += y * pn[i];
        energy += y * y;
      }
      const double normalized = energy > 0.0 ? corr / std::sqrt(energy * static_cast<double>(len)) : 0.0;
      result.bits.bits[s] = sign_bit(normalized);
      result.confidence[s] = std::abs(normalized);
    }
    return result;
  }

 private:
  // Keyed +/-1 chip sequence for one segment.
  std::vector<double> chips(std::size_t segment_index) const {
    Rng rng(mix_seed(config().key, kTag, segment_index));
    std::vector<double> pn(config().segment);
    for (double& c : pn) c = (rng() >> 63) ? 1.0 : -1.0;
    return pn;
  }
};

}  // namespace

std::unique_ptr<Codec> make_dsss(const CodecConfig& config) { return std::make_unique<DsssCodec>(config); }

}  // namespace wmspoof::wm::detail
