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
#include <span>
#include <string>
#include <vector>

#include "wmspoof/eval/table.hpp"
#include "wmspoof/kpwl/model.hpp"
#include "wmspoof/kpwl/train.hpp"

namespace wmspoof::kpwl {

// Two Gaussian classes with identity covariance and means +/- separation * u
// (bonafide on the + side). The "watermark" is the affine map
//   x' = x + E x - along * u + across * v
// with u, v orthonormal and E a small random matrix.
struct SyntheticSpec {
  std::size_t dim = 16;
  double separation = 1.645;
  double bonafide_fraction = 0.3;
  double along = 1.2;
  double across = 3.0;
  // Entries of E are N(0, (mixing / sqrt(dim))^2).
  double mixing = 0.2;
};

class SyntheticDomain {
 public:
  SyntheticDomain(const SyntheticSpec& spec, std::uint64_t seed);

  const SyntheticSpec& spec() const noexcept { return spec_; }

  // n clean rows with ids "<prefix><index>".
  FeatureSet sample(std::size_t n, std::uint64_t seed, const std::string& prefix = "s") const;

  void shift_row(std::span<double> x) const;

  // Copy of `data` with round_half_up(fraction * n) seeded rows shifted.
  FeatureSet shifted(const FeatureSet& data, double fraction, std::uint64_t seed) const;

 private:
  SyntheticSpec spec_;
  std::vector<double> u_, v_, mixing_;
};

struct BenchmarkConfig {
  std::uint64_t seed = 0;
  SyntheticSpec spec;
  std::size_t train_size = 5000;
  std::size_t eval_size = 2000;
  double train_shift_fraction = 0.5;
  std::vector<std::size_t> widths{16, 32, 32, 2};
  TrainConfig pretrain{30, 32, 1e-2, 0};
  AdaptConfig adapt;
};

inline constexpr const char* kBaselineRow = "Baseline";
inline constexpr const char* kWatermarkedRow = "Watermarked";
inline constexpr const char* kKpwlRow = "KPWL";

struct BenchmarkResult {
  Mlp baseline;
  Mlp watermarked;
  Mlp kpwl;
  // Rows Baseline / Watermarked / KPWL, columns 75, 50, 25, 0 percent of
  // evaluation rows shifted. Every cell comes from score_dataset followed
  // by compute_eer.
  eval::RatioTable table;
};

// Baseline: phase 1 on clean training rows. Watermarked: phase 1 from the
// same initialisation on the partly shifted training rows. KPWL: the
// baseline with its ends frozen, adapted on the partly shifted rows.
BenchmarkResult run_benchmark(const BenchmarkConfig& config);

}  // namespace wmspoof::kpwl
