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

#include "wmspoof/corpus/materialize.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <thread>

#include "util/text.hpp"
#include "wmspoof/audio/dsp.hpp"
#include "wmspoof/audio/metrics.hpp"
#include "wmspoof/audio/wav.hpp"
#include "wmspoof/error.hpp"

namespace wmspoof::corpus {

namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::optional<double> snr_db;
  std::string reason;
};

// Manifest paths must stay inside their root.
bool is_safe_relative(const fs::path& p) {
  if (p.empty() || p.is_absolute() || p.has_root_name()) return false;
  for (const auto& part : p) {
    if (part == "..") return false;
  }
  return true;
}

std::string external_dir(std::string_view slot_name) {
  constexpr std::string_view prefix = "ext:";
  if (slot_name.starts_with(prefix)) slot_name.remove_prefix(prefix.size());
  return std::string(slot_name);
}

Outcome process(const MixPlan& plan, std::size_t index, const MaterializeOptions& opt) {
  Outcome out;
  const auto& rec = plan.records[index];
  const auto& a = plan.assignments[index];
  try {
    const fs::path rel(rec.path);
    if (!is_safe_relative(rel)) throw ValidationError("path escapes its root: " + rec.path);

    const CodecSlot* slot = a.clean() ? nullptr : &plan.slot(a);
    const fs::path src = (slot && slot->external()) ? opt.external_root / external_dir(slot->name) / rel
                                                    : opt.audio_root / rel;
    if (!fs::exists(src)) throw IoError("missing audio " + src.string());

    auto audio = audio::resample(audio::read_wav(src), audio::kTargetSampleRate);
    if (slot && !slot->external()) {
      const auto marked = wm::embed(audio, payload_for(plan, rec.utt_id), *slot->config);
      try {
        out.snr_db = audio::segmental_snr(audio, marked);
      } catch (const UndefinedMetricError&) {
      }
      audio = marked;
    }
    audio::write_wav(audio, opt.out_root / rel);
    out.ok = true;
  } catch (const std::exception& e) {
    out.reason = e.what();
  }
  return out;
}

}  // namespace

double SlotStats::mean_snr_db() const {
  return snr_count == 0 ? std::nan("") : snr_sum_db / static_cast<double>(snr_count);
}

std::size_t MaterializeReport::written() const {
  std::size_t n = 0;
  for (const auto& [_, s] : per_slot) n += s.written;
  return n;
}

std::string MaterializeReport::to_tsv() const {
  std::string out = "slot\tplanned\twritten\tfailed\tmean_segsnr_db\n";
  for (const auto& [name, s] : per_slot) {
    char snr[32] = "-";
    if (s.snr_count > 0) std::snprintf(snr, sizeof snr, "%.2f", s.mean_snr_db());
    out += name + "\t" + std::to_string(s.planned) + "\t" + std::to_string(s.written) + "\t" +
           std::to_string(s.failed) + "\t" + snr + "\n";
  }
  if (!failures.empty()) {
    out += "\nfailure\tutt_id\tslot\treason\n";
    for (const auto& f : failures) {
      std::string reason = f.reason;
      for (auto& ch : reason) {
        if (ch == '\t' || ch == '\n') ch = ' ';
      }
      out += "failure\t" + f.utt_id + "\t" + f.slot + "\t" + reason + "\n";
    }
  }
  return out;
}

MaterializeReport materialize(const MixPlan& plan, const MaterializeOptions& options) {
  validate(plan);
  const std::size_t n = plan.records.size();

  // Directories are created up front, serially, so workers only write files.
  for (const auto& rec : plan.records) {
    const fs::path rel(rec.path);
    if (!is_safe_relative(rel)) continue;
    const auto dir = (options.out_root / rel).parent_path();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }

  std::vector<Outcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) outcomes[i] = process(plan, i, options);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, n));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }

  // Aggregated in record order, so sums do not depend on scheduling.
  MaterializeReport report;
  report.per_slot["clean"];
  for (const auto& g : plan.roster.groups) {
    for (const auto& m : g.members) report.per_slot[m.name];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name(plan.assignment_name(i));
    auto& s = report.per_slot[name];
    ++s.planned;
    const auto& o = outcomes[i];
    if (o.ok) {
      ++s.written;
      if (o.snr_db) {
        s.snr_sum_db += *o.snr_db;
        ++s.snr_count;
      }
    } else {
      ++s.failed;
      report.failures.push_back({plan.records[i].utt_id, name, o.reason});
    }
  }
  return report;
}

}  // namespace wmspoof::corpus
