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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmspoof/audio/buffer.hpp"
#include "wmspoof/wm/payload.hpp"

namespace wmspoof::wm {

enum class Scheme { kLsb, kPhase, kDsss, kSvdQim, kPatchwork, kNormSpace };

inline constexpr Scheme kAllSchemes[] = {Scheme::kLsb,     Scheme::kPhase,     Scheme::kDsss,
                                         Scheme::kSvdQim,  Scheme::kPatchwork, Scheme::kNormSpace};

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

// Per-scheme parameters. The meaning of `strength`, `segment` and `subsize`
// depends on the scheme:
//
//   scheme      strength                      segment               subsize
//   lsb         bit planes (integer, >= 1)    samples per bit       -
//   phase       min |X| / frame RMS |X|       frame length          -
//   dsss        chip amplitude                samples per bit       -
//   svd_qim     singular-value step           STFT frame length     block edge
//   patchwork   per-sample offset d           samples per bit       patch size
//   norm_space  norm step                     block length          -
struct CodecConfig {
  Scheme scheme = Scheme::kDsss;
  std::uint64_t key = 0;
  double strength = 0.0;
  std::size_t segment = 0;
  std::size_t subsize = 0;

  friend bool operator==(const CodecConfig&, const CodecConfig&) = default;
};

CodecConfig default_config(Scheme scheme, std::uint64_t key = 0);

// Throws ConfigError when a parameter is out of range for the scheme.
void validate(const CodecConfig& config);

// Flat "k=v" pairs separated by spaces:
//   scheme=dsss key=42 strength=0.005 segment=4000 subsize=0
std::string to_kv(const CodecConfig& config);
CodecConfig from_kv(std::string_view text);

struct DetectionResult {
  WatermarkPayload bits;
  // Magnitude of the per-bit decision statistic.
  std::vector<double> confidence;
};

// Uniform interface over the handcrafted schemes. Implementations are
// stateless; all randomness derives from config.key. The public calls check
// payload content and capacity, then dispatch to the scheme.
class Codec {
 public:
  virtual ~Codec() = default;

  const CodecConfig& config() const noexcept { return config_; }

  virtual std::size_t capacity(const audio::AudioBuffer& audio) const = 0;

  audio::AudioBuffer embed(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const;
  DetectionResult detect(const audio::AudioBuffer& audio, std::size_t payload_length) const;

 protected:
  explicit Codec(CodecConfig config) : config_(config) {}

  virtual audio::AudioBuffer embed_bits(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const = 0;
  virtual DetectionResult detect_bits(const audio::AudioBuffer& audio, std::size_t payload_length) const = 0;

 private:
  CodecConfig config_;
};

std::unique_ptr<Codec> make_codec(const CodecConfig& config);

// Free-function forms. embed/detect check capacity and payload content
// before dispatching.
std::size_t capacity(const audio::AudioBuffer& audio, const CodecConfig& config);
audio::AudioBuffer embed(const audio::AudioBuffer& audio, const WatermarkPayload& payload, const CodecConfig& config);
DetectionResult detect(const audio::AudioBuffer& audio, std::size_t payload_length, const CodecConfig& config);

}  // namespace wmspoof::wm
