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
#include <string>
#include <string_view>
#include <vector>

#include "wmspoof/rng.hpp"

namespace wmspoof::wm {

// Ordered bits, each 0 or 1.
struct WatermarkPayload {
  std::vector<std::uint8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }

  // Most significant bit of each hex digit first; "A5" -> 10100101.
  static WatermarkPayload from_hex(std::string_view hex);
  static WatermarkPayload from_string(std::string_view binary);
  static WatermarkPayload random(std::size_t length, std::uint64_t seed);

  std::string to_string() const;

  friend bool operator==(const WatermarkPayload&, const WatermarkPayload&) = default;
};

// Hamming distance / length. Throws InvalidInputError on length mismatch or
// empty payloads.
double bit_error_rate(const WatermarkPayload& sent, const WatermarkPayload& received);

}  // namespace wmspoof::wm
