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

#include "wmspoof/eval/eer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "wmspoof/error.hpp"

namespace wmspoof::eval {

namespace {

struct Sweep {
  std::vector<double> bonafide;
  std::vector<double> spoof;
  std::vector<double> thresholds;
};

Sweep prepare(std::span<const double> bonafide, std::span<const double> spoof) {
  if (bonafide.empty() || spoof.empty()) {
    throw InvalidInputError("EER needs at least one bonafide and one spoof trial");
  }
  Sweep s{{bonafide.begin(), bonafide.end()}, {spoof.begin(), spoof.end()}, {}};
  for (const auto* v : {&s.bonafide, &s.spoof}) {
    for (double x : *v) {
      if (!std::isfinite(x)) throw InvalidInputError("scores must be finite");
    }
  }
  std::sort(s.bonafide.begin(), s.bonafide.end());
  std::sort(s.spoof.begin(), s.spoof.end());
  s.thresholds.reserve(s.bonafide.size() + s.spoof.size() + 1);
  std::merge(s.bonafide.begin(), s.bonafide.end(), s.spoof.begin(), s.spoof.end(), std::back_inserter(s.thresholds));
  s.thresholds.erase(std::unique(s.thresholds.begin(), s.thresholds.end()), s.thresholds.end());
  s.thresholds.push_back(std::nextafter(s.thresholds.back(), std::numeric_limits<double>::infinity()));
  return s;
}

// Spoof trials accepted and bonafide trials rejected at threshold t.
std::pair<std::int64_t, std::int64_t> counts_at(const Sweep& s, double t) {
  const auto accepted = static_cast<std::int64_t>(s.spoof.end() - std::lower_bound(s.spoof.begin(), s.spoof.end(), t));
  const auto rejected =
      static_cast<std::int64_t>(std::lower_bound(s.bonafide.begin(), s.bonafide.end(), t) - s.bonafide.begin());
  return {accepted, rejected};
}

}  // namespace

std::vector<OperatingPoint> far_frr_curve(std::span<const double> bonafide, std::span<const double> spoof) {
  const auto s = prepare(bonafide, spoof);
  const auto ns = static_cast<double>(s.spoof.size());
  const auto nb = static_cast<double>(s.bonafide.size());
  std::vector<OperatingPoint> curve;
  curve.reserve(s.thresholds.size());
  for (double t : s.thresholds) {
    const auto [a, r] = counts_at(s, t);
    curve.push_back({t, static_cast<double>(a) / ns, static_cast<double>(r) / nb});
  }
  return curve;
}

EerResult compute_eer(std::span<const double> bonafide, std::span<const double> spoof) {
  const auto s = prepare(bonafide, spoof);
  const auto ns = static_cast<std::int64_t>(s.spoof.size());
  const auto nb = static_cast<std::int64_t>(s.bonafide.size());

  // |FAR - FRR| * ns * nb, exact.
  std::int64_t best_gap = std::numeric_limits<std::int64_t>::max();
  double best_threshold = 0.0;
  // Distinct minimising (accepted, rejected) pairs in threshold order.
  std::vector<std::pair<std::int64_t, std::int64_t>> best;
  for (double t : s.thresholds) {
    const auto [a, r] = counts_at(s, t);
    const std::int64_t gap = std::abs(a * nb - r * ns);
    if (gap < best_gap) {
      best_gap = gap;
      best_threshold = t;
      best.assign(1, {a, r});
    } else if (gap == best_gap && best.back() != std::pair{a, r}) {
      best.emplace_back(a, r);
    }
  }

  auto midpoint = [&](const std::pair<std::int64_t, std::int64_t>& p) {
    const double far = static_cast<double>(p.first) / static_cast<double>(ns);
    const double frr = static_cast<double>(p.second) / static_cast<double>(nb);
    return (far + frr) / 2.0;
  };
  double eer = midpoint(best.front());
  if (best.size() == 2) eer = (eer + midpoint(best.back())) / 2.0;
  if (best.size() > 2) throw Error("compute_eer: more than two minimising operating points");
  return {100.0 * eer, best_threshold};
}

EerResult compute_eer(const ScoreSet& scores) {
  const auto b = scores.scores(Label::kBonafide);
  const auto sp = scores.scores(Label::kSpoof);
  return compute_eer(b, sp);
}

}  // namespace wmspoof::eval
