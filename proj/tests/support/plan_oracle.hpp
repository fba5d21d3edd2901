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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "wmspoof/corpus/mix_plan.hpp"

namespace wmspoof::testing {

using corpus::MixPlan;

template <typename... T>
std::string concat(const T&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

// Independent recount of every plan invariant straight from the assignments.
// Returns a description of the first violation, empty when all hold.
inline std::string plan_violation(const MixPlan& plan) {
  const std::size_t n = plan.records.size();
  if (plan.assignments.size() != n) return concat("assignment count");
  std::size_t w = 0;
  std::map<Label, std::size_t> class_n, class_w;
  std::array<std::size_t, 2> group{};
  std::array<std::map<int, std::size_t>, 2> member;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = plan.assignments[i];
    class_n[plan.records[i].label]++;
    if (a.clean()) continue;
    ++w;
    class_w[plan.records[i].label]++;
    group.at(static_cast<std::size_t>(a.group))++;
    member[static_cast<std::size_t>(a.group)][a.member]++;
  }
  const auto expected_w = static_cast<std::size_t>(std::floor(plan.ratio * static_cast<double>(n) + 0.5 + 1e-9));
  if (w != expected_w) return concat("W=", w, " expected ", expected_w);
  const auto diff = group[0] > group[1] ? group[0] - group[1] : group[1] - group[0];
  if (diff > 1) return concat("groups ", group[0], "/", group[1]);
  for (std::size_t g = 0; g < 2; ++g) {
    const std::size_t m = plan.roster.groups[g].members.size();
    std::size_t lo = SIZE_MAX, hi = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const auto it = member[g].find(static_cast<int>(k));
      const std::size_t c = it == member[g].end() ? 0 : it->second;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (hi - lo > 1) return concat("group ", g, " members ", lo, "..", hi);
  }
  for (auto [label, total] : class_n) {
    const double target = plan.ratio * static_cast<double>(total);
    if (std::abs(static_cast<double>(class_w[label]) - target) > 1.0 + 1e-9) {
      return concat("class ", to_string(label), " ", class_w[label], " vs ", target);
    }
  }
  if (!std::is_sorted(plan.records.begin(), plan.records.end(),
                      [](const auto& a, const auto& b) { return a.utt_id < b.utt_id; })) {
    return concat("records not sorted");
  }
  return "";
}

}  // namespace wmspoof::testing
