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

#include "wmspoof/kpwl/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "wmspoof/error.hpp"
#include "wmspoof/rng.hpp"

namespace wmspoof::kpwl {

std::size_t FeatureSet::count(Label label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void FeatureSet::add(std::string id, Label label, std::span<const double> features) {
  if (features.size() != dim) {
    throw InvalidInputError("feature row has width " + std::to_string(features.size()) + ", expected " +
                            std::to_string(dim));
  }
  ids.push_back(std::move(id));
  labels.push_back(label);
  values.insert(values.end(), features.begin(), features.end());
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weights.size() + l.biases.size();
  return n;
}

std::size_t Mlp::trainable_parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) {
    if (!l.frozen) n += l.weights.size() + l.biases.size();
  }
  return n;
}

std::array<double, 2> Mlp::log_probs(std::span<const double> x) const {
  if (x.size() != input_width()) {
    throw InvalidInputError("input width " + std::to_string(x.size()) + " does not match model width " +
                            std::to_string(input_width()));
  }
  std::vector<double> h(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const auto& l = layers[li];
    next.assign(l.outputs, 0.0);
    for (std::size_t o = 0; o < l.outputs; ++o) {
      double acc = l.biases[o];
      for (std::size_t i = 0; i < l.inputs; ++i) acc += l.w(o, i) * h[i];
      next[o] = li + 1 < layers.size() ? std::tanh(acc) : acc;
    }
    h.swap(next);
  }
  const double m = std::max(h[0], h[1]);
  const double lse = m + std::log(std::exp(h[0] - m) + std::exp(h[1] - m));
  return {h[0] - lse, h[1] - lse};
}

void Mlp::freeze_ends() {
  for (std::size_t i = 0; i < layers.size(); ++i) layers[i].frozen = i == 0 || i + 1 == layers.size();
}

void Mlp::unfreeze_all() {
  for (auto& l : layers) l.frozen = false;
}

void validate(const Mlp& model) {
  if (model.layers.size() < 3) throw InvalidInputError("model needs at least three layers");
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const auto& l = model.layers[i];
    if (l.inputs == 0 || l.outputs == 0) throw InvalidInputError("layer " + std::to_string(i) + " has a zero width");
    if (l.weights.size() != l.inputs * l.outputs || l.biases.size() != l.outputs) {
      throw InvalidInputError("layer " + std::to_string(i) + " parameter count does not match its shape");
    }
    if (i > 0 && model.layers[i - 1].outputs != l.inputs) {
      throw InvalidInputError("layer " + std::to_string(i) + " input width does not match the previous layer");
    }
    for (const auto* v : {&l.weights, &l.biases}) {
      for (double x : *v) {
        if (!std::isfinite(x)) throw InvalidInputError("non-finite parameter in layer " + std::to_string(i));
      }
    }
  }
  if (model.layers.back().outputs != 2) throw InvalidInputError("model output width must be 2");
}

Mlp make_mlp(std::span<const std::size_t> widths, std::uint64_t seed) {
  if (widths.size() < 4) throw InvalidInputError("need input, at least two hidden, and output widths");
  Rng rng(mix_seed(seed, 0x1417));
  Mlp m;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    DenseLayer l;
    l.inputs = widths[i];
    l.outputs = widths[i + 1];
    l.weights.resize(l.inputs * l.outputs);
    l.biases.assign(l.outputs, 0.0);
    const double limit = std::sqrt(6.0 / static_cast<double>(l.inputs + l.outputs));
    for (auto& w : l.weights) w = (2.0 * uniform_unit(rng) - 1.0) * limit;
    m.layers.push_back(std::move(l));
  }
  validate(m);
  return m;
}

std::uint64_t frozen_parameter_hash(const Mlp& model) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  auto feed = [&](double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xFF;
      h *= 0x100000001B3ull;
    }
  };
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const auto& l = model.layers[i];
    if (!l.frozen) continue;
    feed(static_cast<double>(i));
    for (double w : l.weights) feed(w);
    for (double b : l.biases) feed(b);
  }
  return h;
}

}  // namespace wmspoof::kpwl
