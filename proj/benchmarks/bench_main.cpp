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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "wmspoof/audio/stft.hpp"
#include "wmspoof/audio/synth.hpp"
#include "wmspoof/corpus/mix_plan.hpp"
#include "wmspoof/eval/eer.hpp"
#include "wmspoof/kpwl/synthetic.hpp"
#include "wmspoof/kpwl/train.hpp"
#include "wmspoof/wm/codec.hpp"

namespace {

using namespace wmspoof;

void BM_ComputeEer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> b(n / 2), s(n - n / 2);
  for (auto& x : b) x = g(rng) + 1.0;
  for (auto& x : s) x = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(eval::compute_eer(b, s));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ComputeEer)->Arg(1000)->Arg(100000);

void BM_Stft(benchmark::State& state) {
  const auto a = audio::make_tone_noise(3);
  for (auto _ : state) benchmark::DoNotOptimize(audio::stft(a));
}
BENCHMARK(BM_Stft);

void BM_EmbedDetect(benchmark::State& state) {
  const auto scheme = wm::kAllSchemes[state.range(0)];
  const auto cfg = wm::default_config(scheme, 5);
  const auto a = audio::make_tone_noise(4);
  const auto p = wm::WatermarkPayload::random(16, 6);
  for (auto _ : state) {
    const auto w = wm::embed(a, p, cfg);
    benchmark::DoNotOptimize(wm::detect(w, 16, cfg));
  }
  state.SetLabel(std::string(wm::to_string(scheme)));
}
BENCHMARK(BM_EmbedDetect)->DenseRange(0, 5);

void BM_BuildMixPlan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<corpus::UtteranceRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    records.push_back({"u" + std::to_string(i), "u" + std::to_string(i) + ".wav",
                       i % 4 == 0 ? Label::kBonafide : Label::kSpoof});
  }
  const auto roster = corpus::default_roster(1);
  for (auto _ : state) benchmark::DoNotOptimize(corpus::build_mix_plan(records, 0.5, 7, roster));
}
BENCHMARK(BM_BuildMixPlan)->Arg(1000)->Arg(10000);

void BM_KpwlAdaptEpoch(benchmark::State& state) {
  kpwl::SyntheticDomain domain(kpwl::SyntheticSpec{}, 1);
  const auto data = domain.shifted(domain.sample(2000, 2), 0.5, 3);
  const std::size_t widths[] = {16, 32, 32, 2};
  auto model = kpwl::make_mlp(widths, 4);
  model.freeze_ends();
  kpwl::AdaptConfig cfg;
  cfg.train.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(kpwl::kpwl_adapt(model, data, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_KpwlAdaptEpoch);

}  // namespace

BENCHMARK_MAIN();
