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
#include <memory>
#include <vector>

#include "wmspoof/rng.hpp"
#include "wmspoof/wm/codec.hpp"

namespace wmspoof::wm::detail {

std::unique_ptr<Codec> make_lsb(const CodecConfig& config);
std::unique_ptr<Codec> make_phase(const CodecConfig& config);
std::unique_ptr<Codec> make_dsss(const CodecConfig& config);
std::unique_ptr<Codec> make_svd_qim(const CodecConfig& config);
std::unique_ptr<Codec> make_patchwork(const CodecConfig& config);
std::unique_ptr<Codec> make_norm_space(const CodecConfig& config);

// First `take` entries of a keyed Fisher-Yates permutation of [0, n).
inline std::vector<std::size_t> keyed_permutation(std::size_t n, std::size_t take, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Rng rng(seed);
  take = take < n ? take : n;
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  return idx;
}

// Sign decision shared by the correlation-style detectors; exactly zero maps
// to bit 0.
inline std::uint8_t sign_bit(double statistic) { return statistic > 0.0 ? 1 : 0; }

}  // namespace wmspoof::wm::detail
