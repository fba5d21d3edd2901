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

// Blocks with a norm below this carry no bit; embed and detect skip them alike.
constexpr double kZeroNorm = 1e-12;

double block_norm(const std::vector<double>& x, std::size_t begin, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = begin; i < begin + len; ++i) acc += x[i] * x[i];
  return std::sqrt(acc);
}

double block_peak(const std::vector<double>& x, std::size_t begin, std::size_t len) {
  double peak = 0.0;
  for (std::size_t i = begin; i < begin + len; ++i) peak = std::max(peak, std::abs(x[i]));
  return peak;
}

// QIM on the Euclidean norm of consecutive blocks: bit b moves the norm to the
// nearest positive point of {(2m + b) * step} by uniform scaling.
class NormSpaceCodec final : public Codec {
 public:
  explicit NormSpaceCodec(const CodecConfig& c) : Codec(c) {}

  std::size_t capacity(const audio::AudioBuffer& audio) const override {
    const std::size_t len = config().segment;
    std::size_t usable = 0;
    for (std::size_t begin = 0; begin + len <= audio.size(); begin += len) {
      usable += block_norm(audio.samples, begin, len) >= kZeroNorm;
    }
    return usable;
  }

 protected:
  audio::AudioBuffer embed_bits(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const override {
    audio::AudioBuffer out = audio;
    const std::size_t len = config().segment;
    const double step = config().strength;
    std::size_t bit = 0;
    for (std::size_t begin = 0; begin + len <= out.size() && bit < payload.size(); begin += len) {
      const double norm = block_norm(out.samples, begin, len);
      if (norm < kZeroNorm) continue;
      const double b = payload.bits[bit++];
      const double m = std::floor((norm / step - b) / 2.0);
      const double lower = (2.0 * m + b) * step;
      const double upper = lower + 2.0 * step;
      double target = (lower > 0.0 && norm - lower <= upper - norm) ? lower : upper;
      // Scaling up must not clip; fall back to the lower lattice point.
      if (target > norm && block_peak(out.samples, begin, len) * target / norm > 1.0 && lower > 0.0) {
        target = lower;
      }
      const double scale = target / norm;
      for (std::size_t i = begin; i < begin + len; ++i) out.samples[i] *= scale;
    }
    return out;
  }

  DetectionResult detect_bits(const audio::AudioBuffer& audio, std::size_t payload_length) const override {
    const std::size_t len = config().segment;
    const double step = config().strength;
    DetectionResult result;
    result.bits.bits.reserve(payload_length);
    result.confidence.reserve(payload_length);
    for (std::size_t begin = 0; begin + len <= audio.size() && result.bits.size() < payload_length; begin += len) {
      const double norm = block_norm(audio.samples, begin, len);
      if (norm < kZeroNorm) continue;
      const double q = norm / step;
      const double nearest = std::round(q);
      result.bits.bits.push_back(static_cast<std::uint8_t>(static_cast<long long>(nearest) & 1));
      result.confidence.push_back(1.0 - 2.0 * std::abs(q - nearest));
    }
    return result;
  }
};

}  // namespace

std::unique_ptr<Codec> make_norm_space(const CodecConfig& config) { return std::make_unique<NormSpaceCodec>(config); }

}  // namespace wmspoof::wm::detail
