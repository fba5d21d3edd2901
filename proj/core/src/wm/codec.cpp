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

#include "wmspoof/wm/codec.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "schemes.hpp"
#include "util/text.hpp"
#include "wmspoof/error.hpp"

namespace wmspoof::wm {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kLsb:
      return "lsb";
    case Scheme::kPhase:
      return "phase";
    case Scheme::kDsss:
      return "dsss";
    case Scheme::kSvdQim:
      return "svd_qim";
    case Scheme::kPatchwork:
      return "patchwork";
    case Scheme::kNormSpace:
      return "norm_space";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

CodecConfig default_config(Scheme scheme, std::uint64_t key) {
  CodecConfig c;
  c.scheme = scheme;
  c.key = key;
  switch (scheme) {
    case Scheme::kLsb:
      c.strength = 1.0;
      c.segment = 100;
      break;
    case Scheme::kPhase:
      c.strength = 0.25;
      c.segment = 1024;
      break;
    case Scheme::kDsss:
      c.strength = 0.005;
      c.segment = 4000;
      break;
    case Scheme::kSvdQim:
      c.strength = 4.0;
      c.segment = 1024;
      c.subsize = 32;
      break;
    case Scheme::kPatchwork:
      c.strength = 0.01;
      c.segment = 4000;
      c.subsize = 500;
      break;
    case Scheme::kNormSpace:
      c.strength = 0.05;
      c.segment = 1000;
      break;
  }
  return c;
}

void validate(const CodecConfig& c) {
  const std::string name(to_string(c.scheme));
  auto fail = [&](const std::string& what) { throw ConfigError(name + ": " + what); };
  if (!std::isfinite(c.strength) || c.strength < 0.0) fail("strength must be finite and non-negative");
  switch (c.scheme) {
    case Scheme::kLsb:
      if (c.strength < 1.0 || c.strength > 15.0 || c.strength != std::floor(c.strength)) {
        fail("bit-plane count must be an integer in [1, 15]");
      }
      if (c.segment < 1) fail("spread factor must be >= 1");
      break;
    case Scheme::kPhase:
      if (c.segment < 16 || c.segment % 8 != 0) fail("frame length must be a multiple of 8 and >= 16");
      break;
    case Scheme::kDsss:
      if (c.segment < 16) fail("segment must be >= 16 samples");
      break;
    case Scheme::kSvdQim:
      if (c.strength <= 0.0) fail("quantization step must be positive");
      if (c.segment < 16 || c.segment % 2 != 0) fail("frame length must be even and >= 16");
      if (c.subsize < 2 || c.subsize > c.segment / 2 + 1) fail("block edge must be in [2, frame/2 + 1]");
      break;
    case Scheme::kPatchwork:
      if (c.subsize < 1) fail("patch size must be >= 1");
      if (c.segment < 2 * c.subsize) fail("segment must hold two disjoint patches");
      break;
    case Scheme::kNormSpace:
      if (c.strength <= 0.0) fail("norm step must be positive");
      if (c.segment < 2) fail("block length must be >= 2");
      break;
  }
}

std::string to_kv(const CodecConfig& c) {
  std::ostringstream out;
  out << "scheme=" << to_string(c.scheme) << " key=" << c.key << " strength=" << wmspoof::detail::format_double(c.strength)
      << " segment=" << c.segment << " subsize=" << c.subsize;
  return out.str();
}

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace

CodecConfig from_kv(std::string_view text) {
  std::optional<Scheme> scheme;
  std::optional<std::uint64_t> key;
  std::optional<double> strength;
  std::optional<std::size_t> segment;
  std::optional<std::size_t> subsize;

  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(token) + "'");
    const auto k = token.substr(0, eq);
    const auto v = token.substr(eq + 1);
    if (k == "scheme") {
      scheme = parse_scheme(v);
      if (!scheme) throw ConfigError("unknown scheme '" + std::string(v) + "'");
    } else if (k == "key") {
      key = parse_number<std::uint64_t>(k, v);
    } else if (k == "strength") {
      strength = parse_number<double>(k, v);
    } else if (k == "segment") {
      segment = parse_number<std::size_t>(k, v);
    } else if (k == "subsize") {
      subsize = parse_number<std::size_t>(k, v);
    } else {
      throw ConfigError("unknown codec parameter '" + std::string(k) + "'");
    }
  }
  if (!scheme) throw ConfigError("codec config is missing 'scheme'");
  CodecConfig c = default_config(*scheme, key.value_or(0));
  if (strength) c.strength = *strength;
  if (segment) c.segment = *segment;
  if (subsize) c.subsize = *subsize;
  validate(c);
  return c;
}

audio::AudioBuffer Codec::embed(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const {
  if (payload.bits.empty()) throw InvalidInputError("payload must hold at least one bit");
  for (auto b : payload.bits) {
    if (b > 1) throw InvalidInputError("payload bits must be 0 or 1");
  }
  const std::size_t cap = capacity(audio);
  if (payload.size() > cap) {
    throw CapacityError(std::string(to_string(config_.scheme)) + ": payload of " + std::to_string(payload.size()) +
                        " bits exceeds capacity " + std::to_string(cap) + " for " + std::to_string(audio.size()) +
                        " samples");
  }
  return embed_bits(audio, payload);
}

DetectionResult Codec::detect(const audio::AudioBuffer& audio, std::size_t payload_length) const {
  if (payload_length == 0) throw InvalidInputError("payload length must be >= 1");
  const std::size_t cap = capacity(audio);
  if (payload_length > cap) {
    throw CapacityError(std::string(to_string(config_.scheme)) + ": audio of " + std::to_string(audio.size()) +
                        " samples holds " + std::to_string(cap) + " bits, " + std::to_string(payload_length) +
                        " requested");
  }
  return detect_bits(audio, payload_length);
}

std::unique_ptr<Codec> make_codec(const CodecConfig& config) {
  validate(config);
  switch (config.scheme) {
    case Scheme::kLsb:
      return detail::make_lsb(config);
    case Scheme::kPhase:
      return detail::make_phase(config);
    case Scheme::kDsss:
      return detail::make_dsss(config);
    case Scheme::kSvdQim:
      return detail::make_svd_qim(config);
    case Scheme::kPatchwork:
      return detail::make_patchwork(config);
    case Scheme::kNormSpace:
      return detail::make_norm_space(config);
  }
  throw ConfigError("unknown scheme");
}

std::size_t capacity(const audio::AudioBuffer& audio, const CodecConfig& config) {
  return make_codec(config)->capacity(audio);
}

audio::AudioBuffer embed(const audio::AudioBuffer& audio, const WatermarkPayload& payload, const CodecConfig& config) {
  return make_codec(config)->embed(audio, payload);
}

DetectionResult detect(const audio::AudioBuffer& audio, std::size_t payload_length, const CodecConfig& config) {
  return make_codec(config)->detect(audio, payload_length);
}

}  // namespace wmspoof::wm
