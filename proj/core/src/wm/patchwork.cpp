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

constexpr std::uint64_t kTag = 0xBA7C;

// Two keyed disjoint patches A and B per segment. Bit 1 raises A by d and
// lowers B by d; bit 0 does the opposite. Detection: sign of mean(A) - mean(B).
class PatchworkCodec final : public Codec {
 public:
  explicit PatchworkCodec(const CodecConfig& c) : Codec(c) {}

  std::size_t capacity(const audio::AudioBuffer& audio) const override { return audio.size() / config().segment; }

 protected:
  audio::AudioBuffer embed_bits(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const override {
    audio::AudioBuffer out = audio;
    const std::size_t len = config().segment;
    const std::size_t patch = config().subsize;
    const double d = config().strength;
    for (std::size_t s = 0; s < payload.size(); ++s) {
      const auto idx = patches(s);
      const double sign = payload.bits[s] ? 1.0 : -1.0;
      for (std::size_t i = 0; i < patch; ++i) {
        out.samples[s * len + idx[i]] += sign * d;
        out.samples[s * len + idx[patch + i]] -= sign * d;
      }
    }
    audio::clamp_unit(out.samples);
    return out;
  }

  DetectionResult detect_bits(const audio::AudioBuffer& audio, std::size_t payload_length) const override {
    const std::size_t len = config().segment;
    const std::size_t patch = config().subsize;
    DetectionResult result;
    result.bits.bits.resize(payload_length);
    result.confidence.resize(payload_length);
    for (std::size_t s = 0; s < payload_length; ++s) {
      const auto idx = patches(s);
      double a = 0.0;
      double b = 0.0;
      for (std::size_t i = 0; i < patch; ++i) {
        a += audio.samples[s * len + idx[i]];
        b += audio.samples[s * len + idx[patch + i]];
      }
      const double stat = (a - b) / static_cast<double>(patch);
      result.bits.bits[s] = sign_bit(stat);
      result.confidence[s] = std::abs(stat);
    }
    return result;
  }

 private:
  // Offsets within the segment: [0, patch) is A, [patch, 2 * patch) is B.
  std::vector<std::size_t> patches(std::size_t segment_index) const {
    return keyed_permutation(config().segment, 2 * config().subsize, mix_seed(config().key, kTag, segment_index));
  }
};

}  // namespace

std::unique_ptr<Codec> make_patchwork(const CodecConfig& config) { return std::make_unique<PatchworkCodec>(config); }

}  // namespace wmspoof::wm::detail
