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

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "wmspoof/audio/attack.hpp"
#include "wmspoof/audio/metrics.hpp"
#include "wmspoof/error.hpp"
#include "wmspoof/wm/codec.hpp"

namespace wmspoof::wm {
namespace {

using audio::AudioBuffer;

class EachScheme : public ::testing::TestWithParam<Scheme> {};

std::string scheme_name(const ::testing::TestParamInfo<Scheme>& info) { return std::string(to_string(info.param)); }

TEST_P(EachScheme, CleanRoundTripAndSnrFloor) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto cfg = default_config(GetParam(), 300 + t);
    const auto a = testing::test_audio(t);
    const auto p = WatermarkPayload::random(16, 900 + t);
    const auto w = embed(a, p, cfg);
    ASSERT_EQ(w.size(), a.size());
    ASSERT_EQ(w.sample_rate, a.sample_rate);
    const auto d = detect(w, 16, cfg);
    EXPECT_EQ(bit_error_rate(p, d.bits), 0.0) << "trial " << t;
    ASSERT_EQ(d.confidence.size(), 16u);
    for (double c : d.confidence) EXPECT_GE(c, 0.0);
    EXPECT_GE(audio::segmental_snr(a, w), 20.0) << "trial " << t;
  }
}

TEST_P(EachScheme, RoundTripAtFullCapacityOnShortAudio) {
  const auto cfg = default_config(GetParam(), 5);
  auto a = testing::test_audio(2);
  a.samples.resize(24000);
  const std::size_t cap = capacity(a, cfg);
  ASSERT_GE(cap, 1u);
  const auto p = WatermarkPayload::random(cap, 8);
  EXPECT_EQ(detect(embed(a, p, cfg), cap, cfg).bits, p);
  EXPECT_THROW(embed(a, WatermarkPayload::random(cap + 1, 8), cfg), CapacityError);
  EXPECT_THROW(detect(a, cap + 1, cfg), CapacityError);
}

TEST_P(EachScheme, EmbedIsDeterministic) {
  const auto cfg = default_config(GetParam(), 11);
  const auto a = testing::test_audio(4);
  const auto p = WatermarkPayload::from_hex("BEEF");
  EXPECT_EQ(embed(a, p, cfg), embed(a, p, cfg));
}

TEST_P(EachScheme, OversizedPayloadIsCapacityError) {
  AudioBuffer a{std::vector<double>(1600, 0.1), 16000};
  EXPECT_THROW(embed(a, WatermarkPayload::random(10000, 1), default_config(GetParam())), CapacityError);
}

TEST_P(EachScheme, EmptyAudioHasZeroCapacity) { EXPECT_EQ(capacity(AudioBuffer{}, default_config(GetParam())), 0u); }

TEST_P(EachScheme, ConfigSurvivesKeyValueText) {
  auto cfg = default_config(GetParam(), 0xFFFFFFFFFFFFFFFFull);
  // lsb strength is an integer bit-plane count.
  cfg.strength = GetParam() == Scheme::kLsb ? 2.0 : cfg.strength / 3.0;
  EXPECT_EQ(from_kv(to_kv(cfg)), cfg);
}

TEST_P(EachScheme, UnwatermarkedAudioDetectsAtChance) {
  double total = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto cfg = default_config(GetParam(), 40 + t);
    const auto a = testing::test_audio(500 + t);
    total += bit_error_rate(WatermarkPayload::random(16, 70 + t), detect(a, 16, cfg).bits);
  }
  EXPECT_NEAR(total / 100.0, 0.5, 0.15);
}

INSTANTIATE_TEST_SUITE_P(Codec, EachScheme, ::testing::ValuesIn(kAllSchemes), scheme_name);

class RobustSchemes : public ::testing::TestWithParam<Scheme> {};

TEST_P(RobustSchemes, SurvivesFortyDbNoise) {
  double total = 0.0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const auto cfg = default_config(GetParam(), 77 + t);
    const auto a = testing::test_audio(t);
    const auto p = WatermarkPayload::random(16, 1000 + t);
    const auto attacked = audio::attack(embed(a, p, cfg), audio::AdditiveNoise{40.0, 5000u + t});
    total += bit_error_rate(p, detect(attacked, 16, cfg).bits);
  }
  EXPECT_LE(total / trials, 0.05);
}

INSTANTIATE_TEST_SUITE_P(Codec, RobustSchemes,
                         ::testing::Values(Scheme::kDsss, Scheme::kPatchwork, Scheme::kNormSpace, Scheme::kSvdQim),
                         scheme_name);

class KeyedSchemes : public ::testing::TestWithParam<Scheme> {};

TEST_P(KeyedSchemes, WrongKeyIsChance) {
  double total = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto a = testing::test_audio(t);
    const auto p = WatermarkPayload::random(16, 2000 + t);
    const auto w = embed(a, p, default_config(GetParam(), 10 + t));
    total += bit_error_rate(p, detect(w, 16, default_config(GetParam(), 10'000 + t)).bits);
  }
  const double mean = total / 100.0;
  EXPECT_GE(mean, 0.35);
  EXPECT_LE(mean, 0.65);
}

INSTANTIATE_TEST_SUITE_P(Codec, KeyedSchemes, ::testing::Values(Scheme::kDsss, Scheme::kPatchwork), scheme_name);

TEST(Capacity, WorkedExamples) {
  AudioBuffer a{std::vector<double>(64600, 0.0), 16000};
  EXPECT_EQ(capacity(a, default_config(Scheme::kLsb)), 646u);
  auto dsss = default_config(Scheme::kDsss);
  dsss.segment = 8000;
  EXPECT_EQ(capacity(a, dsss), 8u);
}

TEST(Dsss, ZeroChipAmplitudeIsIdentity) {
  auto cfg = default_config(Scheme::kDsss, 3);
  cfg.strength = 0.0;
  const auto a = testing::test_audio(1);
  EXPECT_EQ(embed(a, WatermarkPayload::from_hex("A5A5"), cfg), a);
}

TEST(Patchwork, ZeroOffsetIsIdentity) {
  auto cfg = default_config(Scheme::kPatchwork, 3);
  cfg.strength = 0.0;
  const auto a = testing::test_audio(1);
  EXPECT_EQ(embed(a, WatermarkPayload::from_hex("A5A5"), cfg), a);
}

TEST(Lsb, TouchesOnlyKeyedPositions) {
  // On audio already on the 16-bit grid, an all-zeros and an all-ones payload
  // each rewrite one LSB value per selected sample, so together they change
  // exactly the selected set and nothing else.
  auto a = testing::test_audio(9);
  for (auto& s : a.samples) s = std::round(s * 32768.0) / 32768.0;
  const auto cfg = default_config(Scheme::kLsb, 21);
  const auto zeros = embed(a, WatermarkPayload::from_string(std::string(16, '0')), cfg);
  const auto ones = embed(a, WatermarkPayload::from_string(std::string(16, '1')), cfg);
  std::set<std::size_t> changed;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (zeros.samples[i] != a.samples[i]) changed.insert(i);
    if (ones.samples[i] != a.samples[i]) changed.insert(i);
    EXPECT_LE(std::abs(zeros.samples[i] - a.samples[i]), 1.0 / 32768.0);
    EXPECT_LE(std::abs(ones.samples[i] - a.samples[i]), 1.0 / 32768.0);
  }
  EXPECT_EQ(changed.size(), 16u * cfg.segment);
  // A different payload under the same key stays inside that set.
  const auto mixed = embed(a, WatermarkPayload::from_hex("3C5A"), cfg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mixed.samples[i] != a.samples[i]) EXPECT_TRUE(changed.count(i)) << i;
  }
}

TEST(Config, InvalidValuesAreRejected) {
  auto c = default_config(Scheme::kSvdQim);
  c.strength = -1.0;
  EXPECT_THROW(validate(c), ConfigError);
  c = default_config(Scheme::kDsss);
  c.segment = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c = default_config(Scheme::kNormSpace);
  c.strength = std::nan("");
  EXPECT_THROW(make_codec(c), ConfigError);
  EXPECT_THROW(from_kv("scheme=dsss bogus=1"), ConfigError);
  EXPECT_THROW(from_kv("key=1"), ConfigError);
}

TEST(Config, SchemeNames) {
  for (Scheme s : kAllSchemes) EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_FALSE(parse_scheme("wavmark").has_value());
}

TEST(Payload, BitErrorRateExamples) {
  const auto p = WatermarkPayload::random(16, 4);
  EXPECT_EQ(bit_error_rate(p, p), 0.0);
  auto complement = p;
  for (auto& b : complement.bits) b ^= 1u;
  EXPECT_EQ(bit_error_rate(p, complement), 1.0);
  auto one_off = p;
  one_off.bits[7] ^= 1u;
  EXPECT_EQ(bit_error_rate(p, one_off), 0.0625);
  EXPECT_THROW(bit_error_rate(p, WatermarkPayload::random(15, 4)), InvalidInputError);
}

TEST(Payload, TextForms) {
  EXPECT_EQ(WatermarkPayload::from_hex("A5").to_string(), "10100101");
  EXPECT_EQ(WatermarkPayload::from_hex("0x0f"), WatermarkPayload::from_string("00001111"));
  EXPECT_THROW(WatermarkPayload::from_hex("xyz"), InvalidInputError);
  EXPECT_THROW(WatermarkPayload::from_string("012"), InvalidInputError);
  EXPECT_EQ(WatermarkPayload::random(32, 1), WatermarkPayload::random(32, 1));
  EXPECT_NE(WatermarkPayload::random(32, 1), WatermarkPayload::random(32, 2));
}

TEST(Payload, EmptyOrNonBinaryPayloadIsRejected) {
  const auto a = testing::test_audio(1);
  const auto cfg = default_config(Scheme::kDsss);
  EXPECT_THROW(embed(a, WatermarkPayload{}, cfg), InvalidInputError);
  EXPECT_THROW(embed(a, WatermarkPayload{{0, 2}}, cfg), InvalidInputError);
  EXPECT_THROW(detect(a, 0, cfg), InvalidInputError);
}

}  // namespace
}  // namespace wmspoof::wm
