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

#include "wmspoof/audio/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wmspoof/error.hpp"

namespace wmspoof::audio {

double segmental_snr(const AudioBuffer& reference, const AudioBuffer& test, std::size_t segment) {
  if (reference.size() != test.size()) {
    throw InvalidInputError("segmental_snr: length mismatch (" + std::to_string(reference.size()) + " vs " +
                            std::to_string(test.size()) + ")");
  }
  if (reference.sample_rate != test.sample_rate) throw InvalidInputError("segmental_snr: sample rate mismatch");
  if (segment == 0) throw InvalidInputError("segmental_snr: segment must be positive");

  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t start = 0; start < reference.size(); start += segment) {
    const std::size_t end = std::min(reference.size(), start + segment);
    double signal = 0.0;
    double error = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      const double r = reference.samples[i];
      const double d = r - test.samples[i];
      signal += r * r;
      error += d * d;
    }
    if (signal < kSilenceEnergy) continue;
    const double db = error > 0.0 ? 10.0 * std::log10(signal / error) : kSnrCeilingDb;
    total += std::clamp(db, kSnrFloorDb, kSnrCeilingDb);
    ++counted;
  }
  if (counted == 0) throw UndefinedMetricError("segmental_snr: no valid (non-silent) segments");
  return total / static_cast<double>(counted);
}

double global_snr(const AudioBuffer& reference, const AudioBuffer& test) {
  if (reference.size() != test.size()) throw InvalidInputError("global_snr: length mismatch");
  double signal = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = test.samples[i] - reference.samples[i];
    signal += reference.samples[i] * reference.samples[i];
    error += d * d;
  }
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / error);
}

}  // namespace wmspoof::audio
