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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Seeds and tolerances are fixed here, before any result is seen.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eer_oracle.hpp"
#include "fixtures.hpp"
#include "plan_oracle.hpp"
#include "published_tables.hpp"
#include "wmspoof/audio/attack.hpp"
#include "wmspoof/audio/metrics.hpp"
#include "wmspoof/corpus/materialize.hpp"
#include "wmspoof/corpus/mix_plan.hpp"
#include "wmspoof/eval/eer.hpp"
#include "wmspoof/eval/table.hpp"
#include "wmspoof/kpwl/loss.hpp"
#include "wmspoof/kpwl/synthetic.hpp"
#include "wmspoof/kpwl/train.hpp"
#include "wmspoof/wm/codec.hpp"

namespace {

using namespace wmspoof;
using Clock = std::chrono::steady_clock;

constexpr double kDeltaTolerance = 0.01;    // percentage points
constexpr double kGradTolerance = 1e-4;     // max relative error
constexpr double kSnrFloorDb = 20.0;
constexpr double kCleanRelativeSlack = 0.20;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1 -------------------------------------------------------------------------
Outcome delta_reproduction() {
  Outcome o;
  double worst = 0.0;
  for (const auto& row : testing::kPublishedRows) {
    const double d = eval::relative_degradation(row.eer[0], row.eer[3]);
    const double err = std::abs(d - row.delta);
    worst = std::max(worst, err);
    if (err > kDeltaTolerance + 1e-12) o.fail(std::string(row.row) + " delta " + fmt("%.4f", d));
  }
  if (o.pass) o.detail = std::to_string(std::size(testing::kPublishedRows)) + " rows, max |err| " + fmt("%.4f", worst);
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome eer_oracle() {
  Outcome o;
  std::mt19937_64 rng(20240501);
  int sets = 0;
  for (; sets < 200; ++sets) {
    const std::size_t total = 2 + rng() % 49;
    const std::size_t nb = 1 + rng() % (total - 1);
    const int levels = 2 + static_cast<int>(rng() % 60);
    auto draw = [&](std::size_t n, double shift) {
      std::vector<double> v(n);
      for (auto& x : v) x = static_cast<double>(static_cast<int>(rng() % levels)) / 16.0 + shift;
      return v;
    };
    auto b = draw(nb, 0.05 * static_cast<double>(rng() % 20));
    auto s = draw(total - nb, 0.0);
    const double e = eval::compute_eer(b, s).eer;
    if (e != testing::oracle_eer(b, s)) o.fail("oracle mismatch on set " + std::to_string(sets));
    auto tb = b, ts = s;
    for (auto* v : {&tb, &ts}) {
      for (auto& x : *v) x = std::exp(2.0 * x) + x * x * x;
    }
    if (eval::compute_eer(tb, ts).eer != e) o.fail("monotone transform changed EER on set " + std::to_string(sets));
    for (auto* v : {&b, &s}) {
      for (auto& x : *v) x = -x;
    }
    if (eval::compute_eer(s, b).eer != e) o.fail("label swap changed EER on set " + std::to_string(sets));
  }
  if (o.pass) o.detail = std::to_string(sets) + " sets exact, invariances hold";
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome codec_round_trip() {
  Outcome o;
  std::string summary;
  for (wm::Scheme scheme : wm::kAllSchemes) {
    double min_snr = INFINITY;
    int failures = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto cfg = wm::default_config(scheme, 77 + t);
      const auto a = testing::test_audio(t);
      const auto p = wm::WatermarkPayload::random(16, 1000 + t);
      const auto w = wm::embed(a, p, cfg);
      if (wm::bit_error_rate(p, wm::detect(w, 16, cfg).bits) != 0.0) ++failures;
      min_snr = std::min(min_snr, audio::segmental_snr(a, w));
    }
    if (failures) o.fail(std::string(wm::to_string(scheme)) + ": " + std::to_string(failures) + " trials with BER > 0");
    if (min_snr < kSnrFloorDb) o.fail(std::string(wm::to_string(scheme)) + ": SNR " + fmt("%.2f", min_snr));
    summary += std::string(wm::to_string(scheme)) + " " + fmt("%.1f", min_snr) + "dB ";
  }
  if (o.pass) o.detail = "BER 0 in 600 trials; min segSNR " + summary;
  return o;
}

// 4 -------------------------------------------------------------------------
Outcome robustness_monotonicity() {
  Outcome o;
  const double levels[] = {40, 30, 20, 10, 0};
  std::string summary;
  for (wm::Scheme scheme : wm::kAllSchemes) {
    double mean[5] = {};
    for (std::uint64_t t = 0; t < 20; ++t) {
      const auto cfg = wm::default_config(scheme, 77 + t);
      const auto p = wm::WatermarkPayload::random(16, 1000 + t);
      const auto w = wm::embed(testing::test_audio(t), p, cfg);
      for (int k = 0; k < 5; ++k) {
        const auto attacked = audio::attack(w, audio::AdditiveNoise{levels[k], 5000 + t});
        mean[k] += wm::bit_error_rate(p, wm::detect(attacked, 16, cfg).bits) / 20.0;
      }
    }
    std::string row = std::string(wm::to_string(scheme)) + "[";
    for (int k = 0; k < 5; ++k) row += fmt(k ? " %.3f" : "%.3f", mean[k]);
    row += "]";
    summary += row + " ";
    for (int k = 1; k < 5; ++k) {
      if (mean[k] < mean[k - 1]) {
        o.fail(row + " decreases at " + fmt("%.0f dB", levels[k]));
        break;
      }
    }
  }
  std::printf("    mean BER at 40/30/20/10/0 dB: %s\n", summary.c_str());
  if (o.pass) o.detail = "non-decreasing for all six schemes";
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome mix_plan_properties() {
  Outcome o;
  std::mt19937_64 rng(5150);
  const auto roster = corpus::default_roster(99);
  int cases = 0;
  for (; cases < 1000 && o.pass; ++cases) {
    // Log-uniform sizes up to 10,000 with assorted label skews.
    const auto n = static_cast<std::size_t>(std::exp(std::uniform_real_distribution<double>(0.0, std::log(10000.0))(rng)));
    std::size_t nb;
    switch (cases % 5) {
      case 0: nb = 0; break;
      case 1: nb = n; break;
      case 2: nb = n / 100; break;
      default: nb = rng() % (n + 1);
    }
    const double ratio = cases % 7 == 0 ? (cases % 3) * 0.25 + 0.25 : std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const std::uint64_t seed = rng();
    auto records = testing::make_records(nb, n - nb);
    const corpus::PlanOptions options{16, cases % 4 == 0};
    const auto plan = corpus::build_mix_plan(records, ratio, seed, roster, options);
    if (auto v = testing::plan_violation(plan); !v.empty()) o.fail("case " + std::to_string(cases) + ": " + v);
    std::shuffle(records.begin(), records.end(), rng);
    if (corpus::build_mix_plan(records, ratio, seed, roster, options) != plan) {
      o.fail("case " + std::to_string(cases) + ": plan depends on record order");
    }
    if (corpus::parse_plan(corpus::format_plan(plan)) != plan) {
      o.fail("case " + std::to_string(cases) + ": serialization round trip differs");
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " cases, invariants and round trip hold";
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome materialization_determinism() {
  Outcome o;
  testing::TempDir dir("wmspoof-accept");
  const auto records = testing::make_records(20, 30);
  testing::write_corpus(dir / "audio", records, 4.0, 6);
  for (const char* slot : {"wavmark", "timbre", "audioseal"}) testing::write_corpus(dir / "ext" / slot, records, 4.0, 7);
  const auto plan = corpus::build_mix_plan(records, 0.75, 2024, corpus::default_roster(1));
  const auto a = corpus::materialize(plan, {dir / "audio", dir / "out1", dir / "ext", 1});
  const auto b = corpus::materialize(plan, {dir / "audio", dir / "out2", dir / "ext", 4});
  const auto ta = testing::snapshot_tree(dir / "out1");
  const auto tb = testing::snapshot_tree(dir / "out2");
  if (!a.failures.empty() || !b.failures.empty()) o.fail("unexpected per-record failures");
  if (ta.size() != 50) o.fail("expected 50 files, found " + std::to_string(ta.size()));
  if (ta != tb) o.fail("output trees differ");
  if (a.to_tsv() != b.to_tsv()) o.fail("reports differ");
  if (o.pass) o.detail = "50 files byte-identical across runs (1 and 4 workers)";
  return o;
}

// 7 -------------------------------------------------------------------------
Outcome objective_correctness() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t widths[] = {16, 8, 8, 2};
    const auto model = kpwl::make_mlp(widths, seed);
    kpwl::SyntheticDomain domain(kpwl::SyntheticSpec{}, seed);
    const auto batch = domain.shifted(domain.sample(16, mix_seed(seed, 1)), 0.5, mix_seed(seed, 2));
    worst = std::max(worst, kpwl::gradient_check(model, batch, 0.3, 1e-4, seed));
  }
  if (worst >= kGradTolerance) o.fail("gradient check error " + fmt("%.3g", worst));

  kpwl::SyntheticDomain domain(kpwl::SyntheticSpec{}, 70);
  const auto clean = domain.sample(1000, 71);
  const auto shifted = domain.shifted(clean, 0.5, 72);
  const std::size_t widths[] = {16, 32, 32, 2};
  auto base = kpwl::pretrain(kpwl::make_mlp(widths, 73), clean, {5, 32, 1e-2, 74});
  base.freeze_ends();
  const auto hash = kpwl::frozen_parameter_hash(base);
  const auto result = kpwl::kpwl_adapt(base, shifted, kpwl::AdaptConfig{});
  std::size_t mismatches = 0;
  for (const auto& row : result.log) {
    const auto& l = row.loss;
    if (l.total != l.task + l.beta * l.kd + l.mu * l.l2sp) ++mismatches;
  }
  if (mismatches) o.fail(std::to_string(mismatches) + " logged rows break the total identity");
  if (kpwl::frozen_parameter_hash(result.model) != hash) o.fail("frozen-layer hash changed");
  if (result.log.empty() || result.log.front().loss.kd != 0.0 || result.log.front().loss.l2sp != 0.0) {
    o.fail("first batch kd/l2sp not zero");
  }
  if (o.pass) {
    o.detail = "grad err " + fmt("%.2g", worst) + "; identity exact on " + std::to_string(result.log.size()) +
               " rows; frozen hash stable; first-batch kd = l2sp = 0";
  }
  return o;
}

// 8 and 9 -------------------------------------------------------------------
std::vector<kpwl::BenchmarkResult> g_benchmarks;

Outcome kpwl_trend() {
  Outcome o;
  int passing = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    kpwl::BenchmarkConfig c;
    c.seed = seed;
    g_benchmarks.push_back(kpwl::run_benchmark(c));
    const auto& t = g_benchmarks.back().table;
    const double b75 = *t.cell(kpwl::kBaselineRow, 75), k75 = *t.cell(kpwl::kKpwlRow, 75);
    const double b0 = *t.cell(kpwl::kBaselineRow, 0), k0 = *t.cell(kpwl::kKpwlRow, 0);
    const bool ok = k75 < b75 && k0 <= b0 * (1.0 + kCleanRelativeSlack);
    passing += ok;
    std::printf("    seed %llu: shifted EER baseline %.2f -> KPWL %.2f, clean %.2f -> %.2f  %s\n",
                static_cast<unsigned long long>(seed), b75, k75, b0, k0, ok ? "ok" : "miss");
  }
  if (passing < 4) o.fail(std::to_string(passing) + "/5 seeds meet the trend");
  if (o.pass) o.detail = std::to_string(passing) + "/5 seeds meet the trend";
  return o;
}

Outcome comparison_report() {
  Outcome o;
  if (g_benchmarks.empty()) {
    kpwl::BenchmarkConfig c;
    g_benchmarks.push_back(kpwl::run_benchmark(c));
  }
  const auto& table = g_benchmarks.front().table;
  const auto emitted = eval::emit_ratio_table(table, true, "Model");
  std::printf("%s", emitted.text.c_str());
  const std::vector<std::string> rows{kpwl::kBaselineRow, kpwl::kWatermarkedRow, kpwl::kKpwlRow};
  if (table.rows() != rows) o.fail("rows are not Baseline/Watermarked/KPWL");
  if (table.ratios() != std::vector<int>{75, 50, 25, 0}) o.fail("columns are not 75/50/25/0");
  for (const auto& r : rows) {
    for (int p : eval::kTableRatios) {
      if (!table.cell(r, p)) o.fail("missing cell " + r + " " + std::to_string(p));
    }
  }
  std::size_t csv_lines = 0;
  for (char ch : emitted.csv) csv_lines += ch == '\n';
  if (csv_lines != 4) o.fail("CSV has " + std::to_string(csv_lines) + " lines");
  if (o.pass) o.detail = "3 model rows x 4 ratio columns";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "relative degradation reproduces published deltas", 1.0, delta_reproduction},
      {2, "EER matches brute-force oracle", 10.0, eer_oracle},
      {3, "codec clean round trip and SNR floor", 120.0, codec_round_trip},
      {4, "BER non-decreasing as noise SNR drops", 300.0, robustness_monotonicity},
      {5, "mix plan invariants and serialization", 30.0, mix_plan_properties},
      {6, "materialization is byte-deterministic", 60.0, materialization_determinism},
      {7, "adaptation objective and gradients", 60.0, objective_correctness},
      {8, "KPWL shifted-domain trend", 120.0, kpwl_trend},
      {9, "three-way comparison report", 60.0, comparison_report},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > c.limit_s) o.fail(o.detail + " (over time limit " + fmt("%.0f s", c.limit_s) + ")");
    failed += !o.pass;
    std::printf("CRITERION %d %s  %-48s %7.2fs  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
