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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wmspoof/audio/buffer.hpp"

namespace wmspoof::audio {

enum class Window { kHann, kRectangular };

inline constexpr std::size_t kDefaultFrameLength = 1024;
inline constexpr std::size_t kDefaultHop = 512;

// One analysis frame: frame_length / 2 + 1 bins, phases in (-pi, pi].
struct SpectralFrame {
  std::vector<double> magnitudes;
  std::vector<double> phases;
  std::size_t frame_length = 0;
  std::size_t hop = 0;

  std::complex<double> bin(std::size_t k) const { return std::polar(magnitudes[k], phases[k]); }
  void set_bin(std::size_t k, std::complex<double> value);
};

// Frames start at sample 0 without padding: 1 + (n - frame_length) / hop of
// them. The periodic Hann window satisfies the overlap-add condition at
// hop = frame_length / 2.
std::vector<SpectralFrame> stft(const AudioBuffer& audio, std::size_t frame_length = kDefaultFrameLength,
                                std::size_t hop = kDefaultHop, Window window = Window::kHann);

// Weighted overlap-add inverse. Samples not covered by any frame, and samples
// whose summed squared window is below 1e-10, are zero.
std::vector<double> istft(std::span<const SpectralFrame> frames, std::size_t length,
                          Window window = Window::kHann);

std::vector<double> make_window(std::size_t length, Window window);

// Real forward/inverse DFT helpers (unnormalized forward, 1/n inverse).
std::vector<std::complex<double>> rfft(std::span<const double> input);
std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n);

}  // namespace wmspoof::audio
