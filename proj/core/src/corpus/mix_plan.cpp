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

#include "wmspoof/corpus/mix_plan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "util/text.hpp"
#include "wmspoof/error.hpp"
#include "wmspoof/rng.hpp"

namespace wmspoof::corpus {

namespace {

constexpr std::string_view kPlanHeader = "WMPLAN v1";
constexpr std::string_view kExternalPrefix = "ext:";
// Absorbs representation error in p * n (0.29 * 100 = 28.999999999999996).
constexpr double kCountEpsilon = 1e-9;

bool has_whitespace(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

std::uint64_t ratio_bits(double ratio) { return std::bit_cast<std::uint64_t>(ratio); }

std::size_t label_index(Label l) { return static_cast<std::size_t>(l); }

// Per-class targets: floor(p * n_c) plus the remainder to the largest
// fractional parts, so the class counts sum to the global target.
std::array<std::size_t, 2> class_targets(double ratio, const std::array<std::size_t, 2>& sizes, std::size_t total) {
  std::array<std::size_t, 2> target{};
  std::array<double, 2> frac{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    const double exact = ratio * static_cast<double>(sizes[c]);
    target[c] = std::min(sizes[c], static_cast<std::size_t>(std::floor(exact + kCountEpsilon)));
    frac[c] = exact - static_cast<double>(target[c]);
    assigned += target[c];
  }
  std::array<std::size_t, 2> order{0, 1};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  while (assigned < total) {
    bool moved = false;
    for (auto c : order) {
      if (assigned < total && target[c] < sizes[c]) {
        ++target[c];
        ++assigned;
        moved = true;
      }
    }
    if (!moved) break;
  }
  while (assigned > total) {
    for (auto it = order.rbegin(); it != order.rend() && assigned > total; ++it) {
      if (target[*it] > 0) {
        --target[*it];
        --assigned;
      }
    }
  }
  return target;
}

void check_records(const std::vector<UtteranceRecord>& records) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i - 1].utt_id == records[i].utt_id) {
      throw ValidationError("duplicate utterance id '" + records[i].utt_id + "'");
    }
  }
}

}  // namespace

Roster default_roster(std::uint64_t key) {
  Roster r;
  r.groups[0].name = "handcrafted";
  for (auto scheme : wm::kAllSchemes) {
    const std::string name(wm::to_string(scheme));
    r.groups[0].members.push_back({name, wm::default_config(scheme, mix_seed(key, hash_string(name)))});
  }
  r.groups[1].name = "dnn";
  for (const char* name : {"ext:wavmark", "ext:timbre", "ext:audioseal"}) {
    r.groups[1].members.push_back({name, std::nullopt});
  }
  return r;
}

void validate(const Roster& roster) {
  std::set<std::string_view> names;
  for (const auto& g : roster.groups) {
    if (g.name.empty() || has_whitespace(g.name)) throw ConfigError("invalid group name '" + g.name + "'");
    if (g.members.empty()) throw ConfigError("codec group '" + g.name + "' is empty");
    for (const auto& m : g.members) {
      if (m.name.empty() || has_whitespace(m.name) || m.name == "clean") {
        throw ConfigError("invalid codec slot name '" + m.name + "'");
      }
      if (!names.insert(m.name).second) throw ConfigError("duplicate codec slot '" + m.name + "'");
      const bool ext_name = m.name.starts_with(kExternalPrefix) && m.name.size() > kExternalPrefix.size();
      if (m.external() != ext_name) {
        throw ConfigError("slot '" + m.name + "': external slots, and only those, must be named ext:<name>");
      }
      if (m.config) wm::validate(*m.config);
    }
  }
  if (roster.groups[0].name == roster.groups[1].name) throw ConfigError("codec groups must have distinct names");
}

const CodecSlot& MixPlan::slot(const Assignment& a) const {
  return roster.groups.at(static_cast<std::size_t>(a.group)).members.at(static_cast<std::size_t>(a.member));
}

std::string_view MixPlan::assignment_name(std::size_t index) const {
  const auto& a = assignments.at(index);
  return a.clean() ? std::string_view("clean") : std::string_view(slot(a).name);
}

std::size_t watermark_count(double ratio, std::size_t n) {
  const auto w = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5 + kCountEpsilon));
  return std::min(w, n);
}

MixPlan build_mix_plan(std::vector<UtteranceRecord> records, double ratio, std::uint64_t seed, const Roster& roster,
                       const PlanOptions& options) {
  if (!std::isfinite(ratio) || ratio < 0.0 || ratio > 1.0) throw ConfigError("ratio must lie in [0, 1]");
  if (options.payload_bits == 0) throw ConfigError("payload_bits must be positive");
  validate(roster);
  if (records.empty()) throw ValidationError("cannot build a mix plan from an empty manifest");
  std::sort(records.begin(), records.end(),
            [](const UtteranceRecord& a, const UtteranceRecord& b) { return a.utt_id < b.utt_id; });
  check_records(records);

  MixPlan plan;
  plan.ratio = ratio;
  plan.seed = seed;
  plan.payload_bits = options.payload_bits;
  plan.nested = options.nested;
  plan.roster = roster;
  plan.assignments.assign(records.size(), Assignment{});

  const std::size_t total = watermark_count(ratio, records.size());

  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < records.size(); ++i) by_class[label_index(records[i].label)].push_back(i);
  const auto targets = class_targets(ratio, {by_class[0].size(), by_class[1].size()}, total);

  // Class-major list of watermarked record indices. In nested mode the
  // per-class order ignores the ratio, so a smaller ratio selects a prefix.
  std::vector<std::size_t> chosen;
  chosen.reserve(total);
  for (std::size_t c = 0; c < 2; ++c) {
    Rng rng(plan.nested ? mix_seed(seed, 0xC1A55, c) : mix_seed(seed, 0xC1A55, c, ratio_bits(ratio)));
    auto order = by_class[c];
    shuffle(order, rng);
    chosen.insert(chosen.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(targets[c]));
  }

  Rng group_rng(mix_seed(seed, 0x6A0C, ratio_bits(ratio)));
  std::array<std::size_t, 2> group_count{total / 2, total / 2};
  if (total % 2 == 1) ++group_count[group_rng() >> 63];

  // Flattened (group, member) slots with their quotas.
  std::vector<Assignment> slots;
  std::vector<std::size_t> quota;
  for (std::size_t g = 0; g < 2; ++g) {
    const auto& members = roster.groups[g].members;
    const std::size_t m = members.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, group_rng);
    std::vector<std::size_t> q(m, group_count[g] / m);
    for (std::size_t k = 0; k < group_count[g] % m; ++k) ++q[order[k]];
    for (std::size_t k = 0; k < m; ++k) {
      slots.push_back({static_cast<int>(g), static_cast<int>(k)});
      quota.push_back(q[k]);
    }
  }

  // Smooth weighted round-robin: spreads every slot evenly over the
  // class-major list, so each codec sees both labels in proportion.
  std::vector<std::int64_t> current(slots.size(), 0);
  const auto weight_total = static_cast<std::int64_t>(total);
  for (auto idx : chosen) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      current[k] += static_cast<std::int64_t>(quota[k]);
      if (current[k] > current[best]) best = k;
    }
    current[best] -= weight_total;
    plan.assignments[idx] = slots[best];
  }

  plan.records = std::move(records);
  validate(plan);
  return plan;
}

PlanCounts count_plan(const MixPlan& plan) {
  PlanCounts c;
  c.total = plan.records.size();
  for (std::size_t g = 0; g < 2; ++g) c.per_member[g].assign(plan.roster.groups[g].members.size(), 0);
  for (std::size_t i = 0; i < plan.records.size(); ++i) {
    const auto cls = label_index(plan.records[i].label);
    ++c.per_class_total[cls];
    const auto& a = plan.assignments.at(i);
    if (a.clean()) continue;
    ++c.watermarked;
    ++c.per_class_watermarked[cls];
    ++c.per_group.at(static_cast<std::size_t>(a.group));
    ++c.per_member[static_cast<std::size_t>(a.group)].at(static_cast<std::size_t>(a.member));
  }
  return c;
}

void validate(const MixPlan& plan) {
  if (!std::isfinite(plan.ratio) || plan.ratio < 0.0 || plan.ratio > 1.0) {
    throw ValidationError("plan ratio outside [0, 1]");
  }
  if (plan.payload_bits == 0) throw ValidationError("plan payload_bits must be positive");
  try {
    validate(plan.roster);
  } catch (const ConfigError& e) {
    throw ValidationError(std::string("plan roster: ") + e.what());
  }
  if (plan.assignments.size() != plan.records.size()) throw ValidationError("plan has mismatched assignment count");
  for (std::size_t i = 1; i < plan.records.size(); ++i) {
    if (!(plan.records[i - 1].utt_id < plan.records[i].utt_id)) {
      throw ValidationError("plan records not sorted by unique utt_id at '" + plan.records[i].utt_id + "'");
    }
  }
  for (const auto& a : plan.assignments) {
    if (a.clean()) {
      if (a.member != Assignment::kClean) throw ValidationError("malformed clean assignment");
      continue;
    }
    if (a.group < 0 || a.group > 1 || a.member < 0 ||
        static_cast<std::size_t>(a.member) >= plan.roster.groups[static_cast<std::size_t>(a.group)].members.size()) {
      throw ValidationError("assignment references a missing codec slot");
    }
  }

  const auto c = count_plan(plan);
  const std::size_t expected = watermark_count(plan.ratio, c.total);
  if (c.watermarked != expected) {
    throw ValidationError("watermarked count " + std::to_string(c.watermarked) + " != round(ratio * N) = " +
                          std::to_string(expected));
  }
  const auto diff = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
  if (diff(c.per_group[0], c.per_group[1]) > 1) {
    throw ValidationError("group counts " + std::to_string(c.per_group[0]) + "/" + std::to_string(c.per_group[1]) +
                          " differ by more than 1");
  }
  for (std::size_t g = 0; g < 2; ++g) {
    const auto [lo, hi] = std::minmax_element(c.per_member[g].begin(), c.per_member[g].end());
    if (*hi - *lo > 1) {
      throw ValidationError("per-codec counts in group '" + plan.roster.groups[g].name + "' differ by more than 1");
    }
  }
  for (std::size_t cls = 0; cls < 2; ++cls) {
    const double exact = plan.ratio * static_cast<double>(c.per_class_total[cls]);
    if (std::abs(static_cast<double>(c.per_class_watermarked[cls]) - exact) > 1.0 + kCountEpsilon) {
      throw ValidationError("watermarked count for class " + std::string(to_string(static_cast<Label>(cls))) +
                            " is more than one sample away from ratio * N_class");
    }
  }
}

wm::WatermarkPayload payload_for(const MixPlan& plan, std::string_view utt_id) {
  return wm::WatermarkPayload::random(plan.payload_bits, mix_seed(plan.seed, hash_string(utt_id)));
}

std::string format_plan(const MixPlan& plan) {
  std::string out;
  out += kPlanHeader;
  out += "\nratio " + detail::format_double(plan.ratio);
  out += "\nseed " + std::to_string(plan.seed);
  out += "\npayload_bits " + std::to_string(plan.payload_bits);
  out += std::string("\nnested ") + (plan.nested ? "1" : "0");
  for (const auto& g : plan.roster.groups) {
    out += "\ngroup " + g.name;
    for (const auto& m : g.members) out += " " + m.name;
  }
  for (const auto& g : plan.roster.groups) {
    for (const auto& m : g.members) {
      if (m.config) out += "\ncodec " + m.name + " " + wm::to_kv(*m.config);
    }
  }
  out += "\nrecords " + std::to_string(plan.records.size()) + "\n";
  for (std::size_t i = 0; i < plan.records.size(); ++i) {
    const auto& r = plan.records[i];
    out += r.utt_id;
    out += '\t';
    out += r.path;
    out += '\t';
    out += to_string(r.label);
    out += '\t';
    out += plan.assignment_name(i);
    out += '\n';
  }
  return out;
}

MixPlan parse_plan(std::string_view text, std::string_view source) {
  const std::string src(source);
  MixPlan plan;
  std::optional<double> ratio;
  std::optional<std::uint64_t> seed, payload_bits, nested, record_count;
  std::size_t group_lines = 0;
  std::map<std::string, wm::CodecConfig, std::less<>> codecs;
  std::map<std::string, Assignment, std::less<>> slot_index;
  bool header_seen = false;

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto fail = [&](const std::string& what) { throw ParseError(src, line_no, what); };
    if (!header_seen) {
      if (line != kPlanHeader) fail("expected header '" + std::string(kPlanHeader) + "'");
      header_seen = true;
      return;
    }
    if (!record_count) {
      if (detail::is_blank_or_comment(line)) return;
      const auto toks = detail::split_whitespace(line);
      const auto key = toks.front();
      auto single_u64 = [&](std::optional<std::uint64_t>& slot) {
        if (toks.size() != 2) fail("expected '" + std::string(key) + " <value>'");
        if (slot) fail("repeated header key '" + std::string(key) + "'");
        slot = detail::parse_u64(toks[1]);
        if (!slot) fail("invalid value for '" + std::string(key) + "'");
      };
      if (key == "ratio") {
        if (toks.size() != 2 || ratio) fail("malformed ratio line");
        ratio = detail::parse_double(toks[1]);
        if (!ratio) fail("invalid ratio");
      } else if (key == "seed") {
        single_u64(seed);
      } else if (key == "payload_bits") {
        single_u64(payload_bits);
      } else if (key == "nested") {
        single_u64(nested);
        if (*nested > 1) fail("nested must be 0 or 1");
      } else if (key == "group") {
        if (group_lines == 2) fail("more than two group lines");
        if (toks.size() < 3) fail("group line needs a name and at least one member");
        auto& g = plan.roster.groups[group_lines];
        g.name = std::string(toks[1]);
        for (std::size_t k = 2; k < toks.size(); ++k) {
          g.members.push_back({std::string(toks[k]), std::nullopt});
          slot_index[std::string(toks[k])] = {static_cast<int>(group_lines), static_cast<int>(k - 2)};
        }
        ++group_lines;
      } else if (key == "codec") {
        if (toks.size() < 3) fail("codec line needs a slot name and parameters");
        const auto rest = line.substr(static_cast<std::size_t>(toks[2].data() - line.data()));
        try {
          if (!codecs.emplace(std::string(toks[1]), wm::from_kv(rest)).second) fail("repeated codec line");
        } catch (const ConfigError& e) {
          fail(e.what());
        }
      } else if (key == "records") {
        single_u64(record_count);
        if (!ratio || !seed || !payload_bits || !nested || group_lines != 2) {
          fail("header incomplete before records line");
        }
        plan.ratio = *ratio;
        plan.seed = *seed;
        plan.payload_bits = static_cast<std::size_t>(*payload_bits);
        plan.nested = *nested == 1;
        for (auto& g : plan.roster.groups) {
          for (auto& m : g.members) {
            if (auto it = codecs.find(m.name); it != codecs.end()) {
              m.config = it->second;
              codecs.erase(it);
            }
          }
        }
        if (!codecs.empty()) fail("codec line for unknown slot '" + codecs.begin()->first + "'");
        try {
          validate(plan.roster);
        } catch (const ConfigError& e) {
          fail(e.what());
        }
      } else {
        fail("unknown header key '" + std::string(key) + "'");
      }
      return;
    }
    if (line.empty()) return;
    const auto cols = detail::split(line, '\t');
    if (cols.size() != 4) fail("expected 4 tab-separated columns");
    const auto label = parse_label(cols[2]);
    if (!label) fail("unknown label '" + std::string(cols[2]) + "'");
    if (cols[0].empty() || cols[1].empty()) fail("empty utt_id or path");
    Assignment a;
    if (cols[3] != "clean") {
      const auto it = slot_index.find(cols[3]);
      if (it == slot_index.end()) fail("assignment to unknown slot '" + std::string(cols[3]) + "'");
      a = it->second;
    }
    plan.records.push_back({std::string(cols[0]), std::string(cols[1]), *label});
    plan.assignments.push_back(a);
  });

  if (!header_seen) throw ParseError(src, 1, "empty plan file");
  if (!record_count) throw ParseError(src, 1, "missing records line");
  if (plan.records.size() != *record_count) {
    throw ValidationError(src + ": records line announces " + std::to_string(*record_count) + " records, found " +
                          std::to_string(plan.records.size()));
  }
  validate(plan);
  return plan;
}

void serialize_plan(const MixPlan& plan, const std::filesystem::path& path) {
  detail::write_text_file(path, format_plan(plan));
}

MixPlan load_plan(const std::filesystem::path& path) { return parse_plan(detail::read_text_file(path), path.string()); }

}  // namespace wmspoof::corpus
