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

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "schemes.hpp"
#include "wmspoof/audio/stft.hpp"

namespace wmspoof::wm::detail {
namespace {

constexpr std::uint64_t kTag = 0x5FD;
// Modified magnitudes are not a consistent STFT, so the resynthesized signal
// only moves part of the way. Embedding re-analyzes and corrects until every
// block sits within step / 8 of its target.
constexpr int kMaxPasses = 12;
constexpr double kSettleFraction = 0.125;

struct BlockSvd {
  double sigma = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

// QIM on the largest singular value of square blocks of the magnitude
// spectrogram (Hann STFT, hop = frame / 2). Phases are reused.
class SvdQimCodec final : public Codec {
 public:
  explicit SvdQimCodec(const CodecConfig& c) : Codec(c) {}

  std::size_t capacity(const audio::AudioBuffer& audio) const override {
    if (audio.size() < frame()) return 0;
    const std::size_t frames = 1 + (audio.size() - frame()) / hop();
    return (bins() / edge()) * (frames / edge());
  }

 protected:
  audio::AudioBuffer embed_bits(const audio::AudioBuffer& audio, const WatermarkPayload& payload) const override {
    const std::size_t n = audio.size();
    const auto blocks = keyed_blocks(audio, payload.size());
    const double step = config().strength;

    audio::AudioBuffer out = audio;
    std::vector<double> targets(payload.size());
    for (int pass = 0; pass < kMaxPasses; ++pass) {
      auto frames = audio::stft(out, frame(), hop(), audio::Window::kHann);
      std::vector<audio::SpectralFrame> delta = frames;
      for (auto& f : delta) std::fill(f.magnitudes.begin(), f.magnitudes.end(), 0.0);

      bool changed = false;
      for (std::size_t i = 0; i < payload.size(); ++i) {
        const auto [row, col] = blocks[i];
        const Eigen::MatrixXd m = block_matrix(frames, row, col);
        const BlockSvd svd = leading_triplet(m);
        if (pass == 0) targets[i] = lattice_target(svd.sigma, payload.bits[i], step);
        if (std::abs(svd.sigma - targets[i]) <= kSettleFraction * step) continue;
        changed = true;
        const Eigen::MatrixXd wanted =
            (m + (targets[i] - svd.sigma) * svd.u * svd.v.transpose()).cwiseMax(0.0);
        for (std::size_t r = 0; r < edge(); ++r) {
          for (std::size_t c = 0; c < edge(); ++c) {
            const std::size_t k = row * edge() + r;
            const std::size_t f = col * edge() + c;
            const double change = wanted(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -
                                  m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            delta[f].set_bin(k, std::polar(1.0, frames[f].phases[k]) * change);
          }
        }
      }
      if (!changed) break;
      const auto correction = audio::istft(delta, n, audio::Window::kHann);
      for (std::size_t i = 0; i < n; ++i) out.samples[i] += correction[i];
      audio::clamp_unit(out.samples);
    }
    return out;
  }

  DetectionResult detect_bits(const audio::AudioBuffer& audio, std::size_t payload_length) const override {
    const auto blocks = keyed_blocks(audio, payload_length);
    const auto frames = audio::stft(audio, frame(), hop(), audio::Window::kHann);
    const double step = config().strength;
    DetectionResult result;
    result.bits.bits.resize(payload_length);
    result.confidence.resize(payload_length);
    for (std::size_t i = 0; i < payload_length; ++i) {
      const double q = leading_triplet(block_matrix(frames, blocks[i].first, blocks[i].second)).sigma / step;
      const double nearest = std::round(q);
      result.bits.bits[i] = static_cast<std::uint8_t>(static_cast<long long>(nearest) & 1);
      result.confidence[i] = 1.0 - 2.0 * std::abs(q - nearest);
    }
    return result;
  }

 private:
  std::size_t frame() const { return config().segment; }
  std::size_t hop() const { return config().segment / 2; }
  std::size_t edge() const { return config().subsize; }
  std::size_t bins() const { return frame() / 2 + 1; }

  // Block (bin row, frame column) for each payload bit, in keyed order.
  std::vector<std::pair<std::size_t, std::size_t>> keyed_blocks(const audio::AudioBuffer& audio,
                                                                std::size_t count) const {
    const std::size_t frames = 1 + (audio.size() - frame()) / hop();
    const std::size_t rows = bins() / edge();
    const std::size_t cols = frames / edge();
    const auto order = keyed_permutation(rows * cols, count, mix_seed(config().key, kTag));
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(order.size());
    for (auto idx : order) out.emplace_back(idx % rows, idx / rows);
    return out;
  }

  Eigen::MatrixXd block_matrix(const std::vector<audio::SpectralFrame>& frames, std::size_t row,
                               std::size_t col) const {
    const auto e = static_cast<Eigen::Index>(edge());
    Eigen::MatrixXd m(e, e);
    for (Eigen::Index r = 0; r < e; ++r) {
      for (Eigen::Index c = 0; c < e; ++c) {
        m(r, c) = frames[col * edge() + static_cast<std::size_t>(c)].magnitudes[row * edge() + static_cast<std::size_t>(r)];
      }
    }
    return m;
  }

  static BlockSvd leading_triplet(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    BlockSvd out;
    out.sigma = svd.singularValues()(0);
    out.u = svd.matrixU().col(0);
    out.v = svd.matrixV().col(0);
    return out;
  }

  // Nearest strictly positive point of {(2m + bit) * step}.
  static double lattice_target(double sigma, std::uint8_t bit, double step) {
    const double b = bit;
    const double m = std::floor((sigma / step - b) / 2.0);
    const double lower = (2.0 * m + b) * step;
    const double upper = lower + 2.0 * step;
    return (lower > 0.0 && sigma - lower <= upper - sigma) ? lower : upper;
  }
};

}  // namespace

std::unique_ptr<Codec> make_svd_qim(const CodecConfig& config) { return std::make_unique<SvdQimCodec>(config); }

}  // namespace wmspoof::wm::detail
