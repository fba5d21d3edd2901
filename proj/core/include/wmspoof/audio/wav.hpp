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
#include <span>
#include <vector>

#include "wmspoof/audio/buffer.hpp"

namespace wmspoof::audio {

// Reads RIFF/WAVE with PCM-16 or IEEE-float-32 samples, one or two channels.
// Stereo is downmixed by channel mean; PCM is scaled by 1/32768.
AudioBuffer read_wav(const std::filesystem::path& path);
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);

// Writes mono PCM-16. Samples are rounded to the nearest step of 2^-15 and
// clamped to [-32768, 32767].
void write_wav(const AudioBuffer& audio, const std::filesystem::path& path);
std::vector<std::uint8_t> encode_wav(const AudioBuffer& audio);

}  // namespace wmspoof::audio
