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

#include <span>
#include <vector>

#include "wmspoof/eval/scores.hpp"

namespace wmspoof::eval {

struct EerResult {
  // Percent, in [0, 100].
  double eer = 0.0;
  double threshold = 0.0;
};

struct OperatingPoint {
  double threshold = 0.0;
  // Fraction of spoof trials with score >= threshold.
  double far = 0.0;
  // Fraction of bonafide trials with score < threshold.
  double frr = 0.0;
};

// FAR/FRR at every distinct score, plus one threshold just above the
// maximum (FAR 0, FRR 1). Ascending thresholds.
std::vector<OperatingPoint> far_frr_curve(std::span<const double> bonafide, std::span<const double> spoof);

// Sweeps the thresholds of far_frr_curve and keeps those minimising
// |FAR - FRR|. When the curves meet exactly the EER is the common value.
// Otherwise there are at most two minimising (FAR, FRR) pairs, one on each
// side of the crossing; the EER is the mean of their (FAR + FRR) / 2.
// Averaging both sides makes the result invariant to negating scores and
// swapping labels. The reported threshold is the smallest minimiser.
// |FAR - FRR| is compared in exact integer arithmetic.
//
// Throws InvalidInputError unless both labels are present and all scores
// are finite.
EerResult compute_eer(std::span<const double> bonafide, std::span<const double> spoof);
EerResult compute_eer(const ScoreSet& scores);

}  // namespace wmspoof::eval
