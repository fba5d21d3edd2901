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

#include "wmspoof/kpwl/io.hpp"

#include <cmath>
#include <optional>
#include <unordered_set>

#include "util/text.hpp"
#include "wmspoof/error.hpp"

namespace wmspoof::kpwl {

namespace {

constexpr std::string_view kModelHeader = "KPWLMODEL v1";

void append_values(std::string& out, char tag, const std::vector<double>& values) {
  out += tag;
  for (double v : values) {
    out += ' ';
    out += detail::format_double(v);
  }
  out += '\n';
}

}  // namespace

std::string format_model(const Mlp& model) {
  validate(model);
  std::string out(kModelHeader);
  out += "\nlayers " + std::to_string(model.layers.size()) + "\n";
  for (const auto& l : model.layers) {
    out += "layer " + std::to_string(l.inputs) + " " + std::to_string(l.outputs) + " " + (l.frozen ? "1" : "0") + "\n";
    append_values(out, 'w', l.weights);
    append_values(out, 'b', l.biases);
  }
  return out;
}

Mlp parse_model(std::string_view text, std::string_view source) {
  const std::string src(source);
  Mlp model;
  std::optional<std::size_t> count;
  // 0 header, 1 layers line, then per layer: 2 layer, 3 w, 4 b.
  int state = 0;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto fail = [&](const std::string& what) { throw ParseError(src, line_no, what); };
    if (state == 0) {
      if (line != kModelHeader) fail("expected header '" + std::string(kModelHeader) + "'");
      state = 1;
      return;
    }
    if (line.empty()) return;
    const auto toks = detail::split_whitespace(line);
    auto number = [&](std::string_view t) {
      const auto v = detail::parse_double(t);
      if (!v) fail("invalid number '" + std::string(t) + "'");
      return *v;
    };
    auto size = [&](std::string_view t) {
      const auto v = detail::parse_u64(t);
      if (!v) fail("invalid size '" + std::string(t) + "'");
      return static_cast<std::size_t>(*v);
    };
    switch (state) {
      case 1:
        if (toks.size() != 2 || toks[0] != "layers") fail("expected 'layers <count>'");
        count = size(toks[1]);
        state = 2;
        break;
      case 2: {
        if (model.layers.size() == *count) fail("more layers than announced");
        if (toks.size() != 4 || toks[0] != "layer") fail("expected 'layer <inputs> <outputs> <frozen>'");
        DenseLayer l;
        l.inputs = size(toks[1]);
        l.outputs = size(toks[2]);
        const auto frozen = size(toks[3]);
        if (frozen > 1) fail("frozen flag must be 0 or 1");
        l.frozen = frozen == 1;
        model.layers.push_back(std::move(l));
        state = 3;
        break;
      }
      case 3:
      case 4: {
        auto& l = model.layers.back();
        const bool weights = state == 3;
        if (toks.empty() || toks[0] != (weights ? "w" : "b")) fail(weights ? "expected 'w' line" : "expected 'b' line");
        const std::size_t expected = weights ? l.inputs * l.outputs : l.outputs;
        if (toks.size() - 1 != expected) {
          fail("expected " + std::to_string(expected) + " values, got " + std::to_string(toks.size() - 1));
        }
        auto& dst = weights ? l.weights : l.biases;
        for (std::size_t i = 1; i < toks.size(); ++i) dst.push_back(number(toks[i]));
        state = weights ? 4 : 2;
        break;
      }
      default:
        break;
    }
  });
  if (state == 0) throw ParseError(src, 1, "empty model file");
  if (!count || model.layers.size() != *count || state != 2) {
    throw ParseError(src, 1, "truncated model file");
  }
  validate(model);
  return model;
}

void save_model(const Mlp& model, const std::filesystem::path& path) {
  detail::write_text_file(path, format_model(model));
}

Mlp load_model(const std::filesystem::path& path) { return parse_model(detail::read_text_file(path), path.string()); }

std::string format_features(const FeatureSet& data) {
  std::string out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += data.ids[i];
    out += '\t';
    out += to_string(data.labels[i]);
    for (double v : data.row(i)) {
      out += '\t';
      out += detail::format_double(v);
    }
    out += '\n';
  }
  return out;
}

FeatureSet parse_features(std::string_view text, std::string_view source) {
  const std::string src(source);
  FeatureSet fs;
  std::unordered_set<std::string> seen;
  std::vector<double> row;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (detail::is_blank_or_comment(line)) return;
    const auto cols = detail::split(line, '\t');
    if (cols.size() < 3) throw ParseError(src, line_no, "expected utt_id, label and at least one feature");
    const auto label = parse_label(cols[1]);
    if (!label) {
      throw ValidationError(src + ":" + std::to_string(line_no) + ": unknown label '" + std::string(cols[1]) + "'");
    }
    if (fs.size() == 0) fs.dim = cols.size() - 2;
    if (cols.size() - 2 != fs.dim) throw ParseError(src, line_no, "feature width differs from earlier rows");
    row.clear();
    for (std::size_t c = 2; c < cols.size(); ++c) {
      const auto v = detail::parse_double(cols[c]);
      if (!v || !std::isfinite(*v)) throw ParseError(src, line_no, "invalid feature value '" + std::string(cols[c]) + "'");
      row.push_back(*v);
    }
    std::string id(cols[0]);
    if (id.empty()) throw ParseError(src, line_no, "empty utt_id");
    if (!seen.insert(id).second) {
      throw ValidationError(src + ":" + std::to_string(line_no) + ": duplicate id '" + id + "'");
    }
    fs.add(std::move(id), *label, row);
  });
  return fs;
}

void write_features(const FeatureSet& data, const std::filesystem::path& path) {
  detail::write_text_file(path, format_features(data));
}

FeatureSet read_features(const std::filesystem::path& path) {
  return parse_features(detail::read_text_file(path), path.string());
}

std::string format_log(const std::vector<LogRow>& log) {
  std::string out = "epoch\tbatch\ttask\tkd\tl2sp\tbeta\tmu\ttotal\n";
  for (const auto& r : log) {
    const auto& l = r.loss;
    out += std::to_string(r.epoch) + "\t" + std::to_string(r.batch);
    for (double v : {l.task, l.kd, l.l2sp, l.beta, l.mu, l.total}) out += "\t" + detail::format_double(v);
    out += "\n";
  }
  return out;
}

}  // namespace wmspoof::kpwl
