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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wmspoof/kpwl/model.hpp"
#include "wmspoof/kpwl/train.hpp"

namespace wmspoof::kpwl {

// Text checkpoint:
//   KPWLMODEL v1
//   layers <count>
//   layer <inputs> <outputs> <frozen 0|1>
//   w <inputs*outputs values, row-major>
//   b <outputs values>
// Values use round-trip precision, so save/load is lossless.
std::string format_model(const Mlp& model);
Mlp parse_model(std::string_view text, std::string_view source = "<model>");
void save_model(const Mlp& model, const std::filesystem::path& path);
Mlp load_model(const std::filesystem::path& path);

// utt_id<TAB>label<TAB>f1<TAB>f2... All rows must share one width.
std::string format_features(const FeatureSet& data);
FeatureSet parse_features(std::string_view text, std::string_view source = "<features>");
void write_features(const FeatureSet& data, const std::filesystem::path& path);
FeatureSet read_features(const std::filesystem::path& path);

// Header "epoch batch task kd l2sp beta mu total", tab-separated.
std::string format_log(const std::vector<LogRow>& log);

}  // namespace wmspoof::kpwl
