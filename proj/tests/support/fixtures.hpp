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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wmspoof/audio/buffer.hpp"
#include "wmspoof/corpus/manifest.hpp"

namespace wmspoof::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "wmspoof");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

// 4 s at 16 kHz: three tones in [100, 800] Hz plus white noise.
audio::AudioBuffer test_audio(std::uint64_t seed);

// "b0000".."" bonafide then "s0000".. spoof, paths "<dir>/<id>.wav" with dir
// cycling through three subfolders.
std::vector<corpus::UtteranceRecord> make_records(std::size_t bonafide, std::size_t spoof);

// Writes one short WAV per record under root/<path>. Rates alternate between
// 16 kHz and 22.05 kHz so the resampler is exercised.
void write_corpus(const std::filesystem::path& root, const std::vector<corpus::UtteranceRecord>& records,
                  double seconds, std::uint64_t seed);

std::string read_file(const std::filesystem::path& path);

// Relative path -> file bytes for every regular file below root.
std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& root);

}  // namespace wmspoof::testing
