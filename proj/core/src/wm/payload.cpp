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

#include "wmspoof/wm/payload.hpp"

#include <cctype>
#include <string>

#include "wmspoof/error.hpp"

namespace wmspoof::wm {

WatermarkPayload WatermarkPayload::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw InvalidInputError("empty hex payload");
  WatermarkPayload p;
  p.bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw InvalidInputError(std::string("invalid hex digit '") + c + "'");
    }
    for (int b = 3; b >= 0; --b) p.bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  }
  return p;
}

WatermarkPayload WatermarkPayload::from_string(std::string_view binary) {
  WatermarkPayload p;
  for (char c : binary) {
    if (c != '0' && c != '1') throw InvalidInputError("binary payload may contain only 0 and 1");
    p.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return p;
}

WatermarkPayload WatermarkPayload::random(std::size_t length, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0xB175));
  WatermarkPayload p;
  p.bits.resize(length);
  for (auto& b : p.bits) b = static_cast<std::uint8_t>(rng() >> 63);
  return p;
}

std::string WatermarkPayload::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

double bit_error_rate(const WatermarkPayload& sent, const WatermarkPayload& received) {
  if (sent.size() != received.size()) {
    throw InvalidInputError("bit_error_rate: length mismatch (" + std::to_string(sent.size()) + " vs " +
                            std::to_string(received.size()) + ")");
  }
  if (sent.bits.empty()) throw InvalidInputError("bit_error_rate: empty payload");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < sent.size(); ++i) errors += (sent.bits[i] != 0) != (received.bits[i] != 0);
  return static_cast<double>(errors) / static_cast<double>(sent.size());
}

}  // namespace wmspoof::wm
