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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "plan_oracle.hpp"
#include "wmspoof/audio/dsp.hpp"
#include "wmspoof/audio/wav.hpp"
#include "wmspoof/corpus/manifest.hpp"
#include "wmspoof/corpus/materialize.hpp"
#include "wmspoof/corpus/mix_plan.hpp"
#include "wmspoof/error.hpp"

namespace wmspoof::corpus {
namespace {

namespace fs = std::filesystem;
using testing::make_records;
using testing::TempDir;

// ---- manifest --------------------------------------------------------------

TEST(Manifest, NativeLine) {
  const auto r = parse_manifest_text("u1\ta/u1.wav\tbonafide\n", ManifestFormat::kNativeTsv);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (UtteranceRecord{"u1", "a/u1.wav", Label::kBonafide}));
}

TEST(Manifest, SkipsBlankAndCommentLinesAndCarriageReturns) {
  const auto r = parse_manifest_text("# header\n\nu1\ta.wav\tspoof\r\nu2\tb.wav\tbonafide", ManifestFormat::kNativeTsv);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].label, Label::kSpoof);
  EXPECT_EQ(r[1].utt_id, "u2");
}

TEST(Manifest, DuplicateIdNamesTheId) {
  try {
    parse_manifest_text("u1\ta.wav\tspoof\nu1\tb.wav\tspoof\n", ManifestFormat::kNativeTsv);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("u1"), std::string::npos);
  }
}

TEST(Manifest, StrictLabelVocabulary) {
  EXPECT_THROW(parse_manifest_text("u1\ta.wav\tgenuine\n", ManifestFormat::kNativeTsv), ValidationError);
  EXPECT_THROW(parse_manifest_text("u1\ta.wav\tBonafide\n", ManifestFormat::kNativeTsv), ValidationError);
}

TEST(Manifest, WrongColumnCountIsParseErrorWithLine) {
  try {
    parse_manifest_text("u1\ta.wav\tspoof\nu2\tb.wav\n", ManifestFormat::kNativeTsv, "m.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Manifest, AsvspoofProtocolAdapter) {
  const auto r = parse_manifest_text("LA_0079 LA_T_1138215 - - bonafide\nLA_0079  LA_T_1271820  -  A01  spoof\n",
                                     ManifestFormat::kAsvspoofCm);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], (UtteranceRecord{"LA_T_1138215", "LA_T_1138215.wav", Label::kBonafide}));
  EXPECT_EQ(r[1].label, Label::kSpoof);
  EXPECT_THROW(parse_manifest_text("a b c d\n", ManifestFormat::kAsvspoofCm), ParseError);
}

TEST(Manifest, FormatNames) {
  EXPECT_EQ(parse_manifest_format("native_tsv"), ManifestFormat::kNativeTsv);
  EXPECT_EQ(parse_manifest_format("asvspoof_cm"), ManifestFormat::kAsvspoofCm);
  EXPECT_FALSE(parse_manifest_format("csv").has_value());
}

TEST(Manifest, FileRoundTrip) {
  TempDir dir;
  const auto records = make_records(3, 4);
  write_manifest(dir / "m.tsv", records);
  EXPECT_EQ(parse_manifest(dir / "m.tsv", ManifestFormat::kNativeTsv), records);
  EXPECT_THROW(parse_manifest(dir / "missing.tsv", ManifestFormat::kNativeTsv), IoError);
}

// ---- mix plan oracle -------------------------------------------------------

Roster two_by_two() {
  Roster r;
  r.groups[0] = {"handcrafted",
                 {{"dsss", wm::default_config(wm::Scheme::kDsss, 1)}, {"lsb", wm::default_config(wm::Scheme::kLsb, 2)}}};
  r.groups[1] = {"dnn", {{"ext:a", std::nullopt}, {"ext:b", std::nullopt}}};
  return r;
}

TEST(MixPlan, ThousandRecordWorkedExample) {
  const auto plan = build_mix_plan(make_records(400, 600), 0.5, 7, default_roster(3));
  const auto c = count_plan(plan);
  EXPECT_EQ(c.watermarked, 500u);
  EXPECT_EQ(c.per_class_watermarked[static_cast<int>(Label::kSpoof)], 300u);
  EXPECT_EQ(c.per_class_watermarked[static_cast<int>(Label::kBonafide)], 200u);
  EXPECT_EQ(c.per_group[0], 250u);
  EXPECT_EQ(c.per_group[1], 250u);
  ASSERT_EQ(c.per_member[0].size(), 6u);
  for (auto m : c.per_member[0]) {
    EXPECT_GE(m, 41u);
    EXPECT_LE(m, 42u);
  }
  EXPECT_EQ(testing::plan_violation(plan), "");
}

TEST(MixPlan, ZeroRatioIsAllClean) {
  const auto plan = build_mix_plan(make_records(5, 9), 0.0, 1, default_roster());
  for (const auto& a : plan.assignments) EXPECT_TRUE(a.clean());
}

TEST(MixPlan, FullRatioSevenRecordsTwoCodecsPerGroup) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto plan = build_mix_plan(make_records(3, 4), 1.0, seed, two_by_two());
    const auto c = count_plan(plan);
    EXPECT_EQ(c.watermarked, 7u);
    EXPECT_TRUE((c.per_group == std::array<std::size_t, 2>{4, 3}) || (c.per_group == std::array<std::size_t, 2>{3, 4}));
    EXPECT_EQ(testing::plan_violation(plan), "");
  }
}

TEST(MixPlan, OddSplitDependsOnSeedCoin) {
  std::set<std::size_t> larger;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto c = count_plan(build_mix_plan(make_records(3, 4), 1.0, seed, two_by_two()));
    larger.insert(c.per_group[0] > c.per_group[1] ? 0 : 1);
  }
  EXPECT_EQ(larger.size(), 2u);
}

TEST(MixPlan, DeterministicAndOrderIndependent) {
  auto records = make_records(30, 70);
  const auto a = build_mix_plan(records, 0.25, 99, default_roster());
  std::mt19937 rng(3);
  std::shuffle(records.begin(), records.end(), rng);
  const auto b = build_mix_plan(records, 0.25, 99, default_roster());
  EXPECT_EQ(a, b);
  EXPECT_NE(a.assignments, build_mix_plan(records, 0.25, 100, default_roster()).assignments);
}

TEST(MixPlan, RandomizedInvariants) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + rng() % 2000;
    const std::size_t nb = rng() % (n + 1);
    const double ratio = static_cast<double>(rng() % 1001) / 1000.0;
    const auto plan = build_mix_plan(make_records(nb, n - nb), ratio, rng(), t % 2 ? default_roster(t) : two_by_two());
    ASSERT_EQ(testing::plan_violation(plan), "") << "n=" << n << " nb=" << nb << " p=" << ratio;
    EXPECT_NO_THROW(validate(plan));
  }
}

TEST(MixPlan, NestedRatiosAreSubsets) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t nb = rng() % 300, ns = 1 + rng() % 300;
    const auto records = make_records(nb, ns);
    const std::uint64_t seed = rng();
    std::vector<std::set<std::string>> sets;
    for (double p : {0.25, 0.5, 0.75}) {
      const auto plan = build_mix_plan(records, p, seed, default_roster(), {16, true});
      EXPECT_EQ(testing::plan_violation(plan), "");
      std::set<std::string> s;
      for (std::size_t i = 0; i < plan.records.size(); ++i) {
        if (!plan.assignments[i].clean()) s.insert(plan.records[i].utt_id);
      }
      sets.push_back(std::move(s));
    }
    EXPECT_TRUE(std::includes(sets[1].begin(), sets[1].end(), sets[0].begin(), sets[0].end()));
    EXPECT_TRUE(std::includes(sets[2].begin(), sets[2].end(), sets[1].begin(), sets[1].end()));
  }
}

TEST(MixPlan, BadInputs) {
  EXPECT_THROW(build_mix_plan({}, 0.5, 0, default_roster()), ValidationError);
  EXPECT_THROW(build_mix_plan(make_records(1, 1), 1.5, 0, default_roster()), ConfigError);
  EXPECT_THROW(build_mix_plan(make_records(1, 1), -0.1, 0, default_roster()), ConfigError);
  auto dup = make_records(2, 0);
  dup[1].utt_id = dup[0].utt_id;
  EXPECT_THROW(build_mix_plan(dup, 0.5, 0, default_roster()), ValidationError);
  auto roster = default_roster();
  roster.groups[1].members.clear();
  EXPECT_THROW(build_mix_plan(make_records(1, 1), 0.5, 0, roster), ConfigError);
  roster = default_roster();
  roster.groups[0].members[1].name = roster.groups[0].members[0].name;
  EXPECT_THROW(validate(roster), ConfigError);
  roster = default_roster();
  roster.groups[0].members[0].name = "clean";
  EXPECT_THROW(validate(roster), ConfigError);
}

TEST(MixPlan, WatermarkCountRoundsHalfUp) {
  EXPECT_EQ(watermark_count(0.5, 7), 4u);
  EXPECT_EQ(watermark_count(0.25, 10), 3u);
  EXPECT_EQ(watermark_count(0.75, 10), 8u);
  EXPECT_EQ(watermark_count(0.0, 10), 0u);
  EXPECT_EQ(watermark_count(1.0, 10), 10u);
}

TEST(MixPlan, PayloadDependsOnSeedAndId) {
  const auto plan = build_mix_plan(make_records(2, 2), 1.0, 5, default_roster());
  EXPECT_EQ(payload_for(plan, "b0000").size(), 16u);
  EXPECT_EQ(payload_for(plan, "b0000"), payload_for(plan, "b0000"));
  EXPECT_NE(payload_for(plan, "b0000"), payload_for(plan, "b0001"));
}

TEST(PlanText, RoundTripThousandRecords) {
  TempDir dir;
  const auto plan = build_mix_plan(make_records(333, 667), 0.75, 12345, default_roster(9));
  serialize_plan(plan, dir / "p.txt");
  EXPECT_EQ(load_plan(dir / "p.txt"), plan);
  const auto ext = build_mix_plan(make_records(3, 4), 0.5, 1, two_by_two(), {8, true});
  EXPECT_EQ(parse_plan(format_plan(ext)), ext);
}

TEST(PlanText, EditedRatioFailsValidation) {
  auto text = format_plan(build_mix_plan(make_records(10, 10), 0.5, 1, default_roster()));
  const auto pos = text.find("ratio 0.5");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 9, "ratio 0.25");
  EXPECT_THROW(parse_plan(text), ValidationError);
}

TEST(PlanText, EmptyPlanIsValid) {
  MixPlan plan;
  plan.roster = default_roster();
  const auto back = parse_plan(format_plan(plan));
  EXPECT_TRUE(back.records.empty());
  EXPECT_EQ(back.ratio, 0.0);
}

TEST(PlanText, VersionAndLineErrors) {
  const auto text = format_plan(build_mix_plan(make_records(2, 2), 0.5, 1, default_roster()));
  auto bad = text;
  bad.replace(0, 9, "WMPLAN v2");
  EXPECT_THROW(parse_plan(bad), ParseError);
  bad = text + "extra\tline\n";
  EXPECT_THROW(parse_plan(bad), ParseError);
  try {
    auto broken = text;
    const auto tail = broken.rfind('\t');
    broken.replace(tail + 1, std::string::npos, "no_such_slot\n");
    parse_plan(broken);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 1u);
  }
}

// ---- materialize -----------------------------------------------------------

struct Fixture {
  TempDir dir;
  std::vector<UtteranceRecord> records;
  fs::path audio() const { return dir / "audio"; }
  explicit Fixture(std::size_t nb, std::size_t ns, double seconds = 4.0) : records(make_records(nb, ns)) {
    testing::write_corpus(audio(), records, seconds, 31);
  }
  MaterializeOptions options(const std::string& out, std::size_t jobs = 1) const {
    return {audio(), dir / out, dir / "ext", jobs};
  }
};

TEST(Materialize, AllCleanMatchesResampleAndRewrite) {
  Fixture f(3, 3);
  const auto plan = build_mix_plan(f.records, 0.0, 1, default_roster());
  const auto report = materialize(plan, f.options("out"));
  EXPECT_EQ(report.written(), 6u);
  EXPECT_TRUE(report.failures.empty());
  for (const auto& r : f.records) {
    const auto expected = audio::encode_wav(audio::resample(audio::read_wav(f.audio() / r.path), 16000));
    const auto got = testing::read_file(f.dir / "out" / r.path);
    EXPECT_EQ(got, std::string(expected.begin(), expected.end())) << r.path;
  }
}

TEST(Materialize, RepeatableAndThreadCountIndependent) {
  Fixture f(6, 10);
  const auto plan = build_mix_plan(f.records, 0.75, 4, default_roster(2));
  materialize(plan, f.options("a", 1));
  materialize(plan, f.options("b", 3));
  const auto a = testing::snapshot_tree(f.dir / "a");
  EXPECT_EQ(a.size(), 16u - count_plan(plan).per_group[1]);
  EXPECT_EQ(a, testing::snapshot_tree(f.dir / "b"));
}

TEST(Materialize, ReportMatchesPlanMinusFailures) {
  Fixture f(5, 7);
  const auto plan = build_mix_plan(f.records, 0.5, 9, default_roster(1));
  // Missing audio for one record and no external directory at all.
  fs::remove(f.audio() / plan.records[0].path);
  const auto report = materialize(plan, f.options("out"));

  std::map<std::string, std::size_t> planned;
  for (std::size_t i = 0; i < plan.records.size(); ++i) planned[std::string(plan.assignment_name(i))]++;
  std::map<std::string, std::size_t> failed;
  for (const auto& fl : report.failures) failed[fl.slot]++;
  for (const auto& [slot, n] : planned) {
    const auto& s = report.per_slot.at(slot);
    EXPECT_EQ(s.planned, n) << slot;
    EXPECT_EQ(s.written, n - failed[slot]) << slot;
    EXPECT_EQ(s.failed, failed[slot]) << slot;
  }
  EXPECT_EQ(report.written(), testing::snapshot_tree(f.dir / "out").size());
  EXPECT_TRUE(std::is_sorted(report.failures.begin(), report.failures.end(),
                             [](const auto& a, const auto& b) { return a.utt_id < b.utt_id; }));
  EXPECT_NE(report.to_tsv().find("slot\tplanned\twritten\tfailed\tmean_segsnr_db"), std::string::npos);
}

TEST(Materialize, EmbeddedFilesCarryTheirPayload) {
  Fixture f(4, 4, 4.0);
  auto roster = default_roster(6);
  const auto plan = build_mix_plan(f.records, 1.0, 2, roster);
  const auto report = materialize(plan, f.options("out"));
  std::size_t checked = 0;
  for (std::size_t i = 0; i < plan.records.size(); ++i) {
    const auto& slot = plan.slot(plan.assignments[i]);
    if (slot.external()) continue;
    const auto got = audio::read_wav(f.dir / "out" / plan.records[i].path);
    EXPECT_EQ(got.sample_rate, 16000);
    const auto p = payload_for(plan, plan.records[i].utt_id);
    EXPECT_EQ(wm::detect(got, p.size(), *slot.config).bits, p) << slot.name;
    ++checked;
  }
  EXPECT_GT(checked, 0u);
  for (const auto& [name, s] : report.per_slot) {
    if (s.snr_count > 0) EXPECT_GE(s.mean_snr_db(), 20.0) << name;
  }
}

TEST(Materialize, ExternalSlotsReadFromTheirDirectory) {
  Fixture f(2, 2);
  const auto plan = build_mix_plan(f.records, 1.0, 3, two_by_two());
  for (std::size_t i = 0; i < plan.records.size(); ++i) {
    const auto& slot = plan.slot(plan.assignments[i]);
    if (!slot.external()) continue;
    const auto src = f.dir / "ext" / slot.name.substr(4) / plan.records[i].path;
    fs::create_directories(src.parent_path());
    audio::write_wav(audio::AudioBuffer{std::vector<double>(800, 0.25), 8000}, src);
  }
  const auto report = materialize(plan, f.options("out"));
  EXPECT_TRUE(report.failures.empty());
  for (std::size_t i = 0; i < plan.records.size(); ++i) {
    if (!plan.slot(plan.assignments[i]).external()) continue;
    const auto got = audio::read_wav(f.dir / "out" / plan.records[i].path);
    EXPECT_EQ(got.size(), 1600u);
  }
}

TEST(Materialize, UnsafePathsBecomeFailures) {
  Fixture f(1, 1);
  auto records = f.records;
  records[0].path = "../escape.wav";
  records[1].path = "/abs.wav";
  const auto plan = build_mix_plan(records, 0.0, 1, default_roster());
  const auto report = materialize(plan, f.options("out"));
  EXPECT_EQ(report.failures.size(), 2u);
  EXPECT_FALSE(fs::exists(f.dir / "escape.wav"));
}

}  // namespace
}  // namespace wmspoof::corpus
