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

#include "wmspoof/kpwl/synthetic.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "wmspoof/corpus/mix_plan.hpp"
#include "wmspoof/error.hpp"
#include "wmspoof/eval/eer.hpp"
#include "wmspoof/rng.hpp"

namespace wmspoof::kpwl {

namespace {

std::vector<double> random_unit(std::size_t dim, Rng& rng, const std::vector<double>* orthogonal_to) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(dim);
  for (auto& x : v) x = g(rng);
  if (orthogonal_to) {
    const double dot = std::inner_product(v.begin(), v.end(), orthogonal_to->begin(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) v[i] -= dot * (*orthogonal_to)[i];
  }
  const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  for (auto& x : v) x /= norm;
  return v;
}

}  // namespace

SyntheticDomain::SyntheticDomain(const SyntheticSpec& spec, std::uint64_t seed) : spec_(spec) {
  if (spec.dim < 2) throw ConfigError("synthetic features need at least two dimensions");
  if (!(spec.bonafide_fraction > 0.0 && spec.bonafide_fraction < 1.0)) {
    throw ConfigError("bonafide fraction must lie in (0, 1)");
  }
  Rng rng(mix_seed(seed, 0x5D0));
  u_ = random_unit(spec.dim, rng, nullptr);
  v_ = random_unit(spec.dim, rng, &u_);
  std::normal_distribution<double> g(0.0, spec.mixing / std::sqrt(static_cast<double>(spec.dim)));
  mixing_.resize(spec.dim * spec.dim);
  for (auto& e : mixing_) e = g(rng);
}

FeatureSet SyntheticDomain::sample(std::size_t n, std::uint64_t seed, const std::string& prefix) const {
  Rng rng(mix_seed(seed, 0x5A3));
  std::normal_distribution<double> g(0.0, 1.0);
  FeatureSet fs;
  fs.dim = spec_.dim;
  std::vector<double> x(spec_.dim);
  for (std::size_t i = 0; i < n; ++i) {
    const Label label = uniform_unit(rng) < spec_.bonafide_fraction ? Label::kBonafide : Label::kSpoof;
    const double sign = label == Label::kBonafide ? 1.0 : -1.0;
    for (std::size_t d = 0; d < spec_.dim; ++d) x[d] = sign * spec_.separation * u_[d] + g(rng);
    fs.add(prefix + std::to_string(i), label, x);
  }
  return fs;
}

void SyntheticDomain::shift_row(std::span<double> x) const {
  if (x.size() != spec_.dim) throw InvalidInputError("row width does not match the synthetic domain");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t r = 0; r < spec_.dim; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < spec_.dim; ++c) acc += mixing_[r * spec_.dim + c] * x[c];
    out[r] += acc - spec_.along * u_[r] + spec_.across * v_[r];
  }
  std::copy(out.begin(), out.end(), x.begin());
}

FeatureSet SyntheticDomain::shifted(const FeatureSet& data, double fraction, std::uint64_t seed) const {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError("shift fraction must lie in [0, 1]");
  FeatureSet out = data;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(mix_seed(seed, 0x5F7));
  shuffle(order, rng);
  const std::size_t k = corpus::watermark_count(fraction, data.size());
  for (std::size_t i = 0; i < k; ++i) shift_row(out.row(order[i]));
  return out;
}

BenchmarkResult run_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.widths.empty() || cfg.widths.front() != cfg.spec.dim) {
    throw ConfigError("model input width must equal the feature dimension");
  }
  const SyntheticDomain domain(cfg.spec, mix_seed(cfg.seed, 1));
  const auto train_clean = domain.sample(cfg.train_size, mix_seed(cfg.seed, 2), "train");
  const auto train_marked = domain.shifted(train_clean, cfg.train_shift_fraction, mix_seed(cfg.seed, 3));
  const auto eval_clean = domain.sample(cfg.eval_size, mix_seed(cfg.seed, 4), "eval");

  TrainConfig pre = cfg.pretrain;
  pre.seed = mix_seed(cfg.seed, 5);
  const Mlp init = make_mlp(cfg.widths, mix_seed(cfg.seed, 6));

  BenchmarkResult r;
  r.baseline = pretrain(init, train_clean, pre);
  r.watermarked = pretrain(init, train_marked, pre);

  Mlp start = r.baseline;
  start.freeze_ends();
  AdaptConfig adapt = cfg.adapt;
  adapt.train.seed = mix_seed(cfg.seed, 7);
  r.kpwl = kpwl_adapt(start, train_marked, adapt).model;

  const std::pair<const char*, const Mlp*> rows[] = {
      {kBaselineRow, &r.baseline}, {kWatermarkedRow, &r.watermarked}, {kKpwlRow, &r.kpwl}};
  for (int ratio : eval::kTableRatios) {
    const auto data = domain.shifted(eval_clean, ratio / 100.0, mix_seed(cfg.seed, 8, ratio));
    for (const auto& [name, model] : rows) {
      r.table.add(name, ratio, eval::compute_eer(score_dataset(*model, data)).eer);
    }
  }
  return r;
}

}  // namespace wmspoof::kpwl
