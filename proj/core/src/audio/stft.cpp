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

#include "wmspoof/audio/stft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "wmspoof/error.hpp"

namespace wmspoof::audio {
namespace {

// FFTW's planner is not thread-safe; executing an existing plan is. Plans are
// created once per size under this lock and live for the process lifetime.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const int size = static_cast<int>(n);
  auto* real = fftw_alloc_real(n);
  auto* cplx = fftw_alloc_complex(n / 2 + 1);
  PlanPair pair;
  pair.forward = fftw_plan_dft_r2c_1d(size, real, cplx, FFTW_ESTIMATE | FFTW_UNALIGNED);
  pair.inverse = fftw_plan_dft_c2r_1d(size, cplx, real, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(real);
  fftw_free(cplx);
  return cache.emplace(n, pair).first->second;
}

double principal_phase(std::complex<double> z) {
  const double phase = std::arg(z);
  return phase <= -std::numbers::pi ? std::numbers::pi : phase;
}

}  // namespace

void SpectralFrame::set_bin(std::size_t k, std::complex<double> value) {
  magnitudes[k] = std::abs(value);
  phases[k] = principal_phase(value);
}

std::vector<double> make_window(std::size_t length, Window window) {
  std::vector<double> w(length, 1.0);
  if (window == Window::kHann) {
    for (std::size_t i = 0; i < length; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(length));
    }
  }
  return w;
}

std::vector<std::complex<double>> rfft(std::span<const double> input) {
  const std::size_t n = input.size();
  if (n == 0) return {};
  std::vector<double> in(input.begin(), input.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(plans_for(n).forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n) {
  if (n == 0) return {};
  if (spectrum.size() != n / 2 + 1) throw InvalidInputError("irfft: spectrum size does not match n");
  // c2r overwrites its input.
  std::vector<std::complex<double>> in(spectrum.begin(), spectrum.end());
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plans_for(n).inverse, reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

std::vector<SpectralFrame> stft(const AudioBuffer& audio, std::size_t frame_length, std::size_t hop,
                                Window window) {
  if (hop == 0 || hop > frame_length || frame_length > audio.size()) {
    throw InvalidInputError("stft requires 0 < hop <= frame_length <= length (hop=" + std::to_string(hop) +
                            ", frame=" + std::to_string(frame_length) +
                            ", length=" + std::to_string(audio.size()) + ")");
  }
  const auto w = make_window(frame_length, window);
  const std::size_t count = 1 + (audio.size() - frame_length) / hop;
  std::vector<SpectralFrame> frames(count);
  std::vector<double> buf(frame_length);
  for (std::size_t f = 0; f < count; ++f) {
    const std::size_t start = f * hop;
    for (std::size_t i = 0; i < frame_length; ++i) buf[i] = audio.samples[start + i] * w[i];
    const auto spectrum = rfft(buf);
    SpectralFrame& frame = frames[f];
    frame.frame_length = frame_length;
    frame.hop = hop;
    frame.magnitudes.resize(spectrum.size());
    frame.phases.resize(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) frame.set_bin(k, spectrum[k]);
  }
  return frames;
}

std::vector<double> istft(std::span<const SpectralFrame> frames, std::size_t length, Window window) {
  std::vector<double> out(length, 0.0);
  if (frames.empty()) return out;
  const std::size_t frame_length = frames.front().frame_length;
  const std::size_t hop = frames.front().hop;
  const auto w = make_window(frame_length, window);
  std::vector<double> weight(length, 0.0);
  std::vector<std::complex<double>> spectrum(frame_length / 2 + 1);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const SpectralFrame& frame = frames[f];
    if (frame.frame_length != frame_length || frame.hop != hop || frame.magnitudes.size() != spectrum.size() ||
        frame.phases.size() != spectrum.size()) {
      throw InvalidInputError("istft: inconsistent frame geometry at frame " + std::to_string(f));
    }
    for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] = frame.bin(k);
    const auto time = irfft(spectrum, frame_length);
    const std::size_t start = f * hop;
    for (std::size_t i = 0; i < frame_length && start + i < length; ++i) {
      out[start + i] += w[i] * time[i];
      weight[start + i] += w[i] * w[i];
    }
  }
  for (std::size_t i = 0; i < length; ++i) out[i] = weight[i] > 1e-10 ? out[i] / weight[i] : 0.0;
  return out;
}

}  // namespace wmspoof::audio
