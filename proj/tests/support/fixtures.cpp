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

#include "fixtures.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "wmspoof/audio/synth.hpp"
#include "wmspoof/audio/wav.hpp"
#include "wmspoof/rng.hpp"

namespace wmspoof::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto name = tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++);
    auto candidate = fs::temp_directory_path() / name;
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("could not create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

audio::AudioBuffer test_audio(std::uint64_t seed) { return audio::make_tone_noise(seed); }

std::vector<corpus::UtteranceRecord> make_records(std::size_t bonafide, std::size_t spoof) {
  std::vector<corpus::UtteranceRecord> out;
  auto add = [&](char prefix, std::size_t i, Label label) {
    char id[32];
    std::snprintf(id, sizeof id, "%c%04zu", prefix, i);
    out.push_back({id, "d" + std::to_string(i % 3) + "/" + id + ".wav", label});
  };
  for (std::size_t i = 0; i < bonafide; ++i) add('b', i, Label::kBonafide);
  for (std::size_t i = 0; i < spoof; ++i) add('s', i, Label::kSpoof);
  return out;
}

void write_corpus(const fs::path& root, const std::vector<corpus::UtteranceRecord>& records, double seconds,
                  std::uint64_t seed) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    audio::ToneNoiseSpec spec;
    spec.seconds = seconds;
    spec.sample_rate = i % 2 == 0 ? 16000 : 22050;
    const auto a = audio::make_tone_noise(mix_seed(seed, i), spec);
    const auto path = root / records[i].path;
    fs::create_directories(path.parent_path());
    audio::write_wav(a, path);
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return out;
}

}  // namespace wmspoof::testing
