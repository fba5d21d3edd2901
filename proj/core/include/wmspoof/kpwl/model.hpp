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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wmspoof/label.hpp"

namespace wmspoof::kpwl {

// Labeled feature vectors, row-major.
struct FeatureSet {
  std::size_t dim = 0;
  std::vector<std::string> ids;
  std::vector<Label> labels;
  std::vector<double> values;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
  std::span<double> row(std::size_t i) { return {values.data() + i * dim, dim}; }
  std::size_t count(Label label) const;

  // Throws InvalidInputError when the row width differs from dim.
  void add(std::string id, Label label, std::span<const double> features);

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

// y = W x + b with W stored row-major (outputs x inputs).
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;
  std::vector<double> biases;
  bool frozen = false;

  double& w(std::size_t o, std::size_t i) { return weights[o * inputs + i]; }
  double w(std::size_t o, std::size_t i) const { return weights[o * inputs + i]; }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// Fully connected classifier: tanh on every hidden layer, log-softmax over
// {bonafide, spoof} at the output (index 0 is bonafide). The first layer
// stands in for a pretrained front end and the last for the classifier head.
struct Mlp {
  std::vector<DenseLayer> layers;

  std::size_t input_width() const { return layers.empty() ? 0 : layers.front().inputs; }
  std::size_t parameter_count() const;
  std::size_t trainable_parameter_count() const;

  // Log-probabilities for one input row.
  std::array<double, 2> log_probs(std::span<const double> x) const;

  // Freezes the first and last layer and unfreezes the rest.
  void freeze_ends();
  void unfreeze_all();

  friend bool operator==(const Mlp&, const Mlp&) = default;
};

// Throws InvalidInputError unless the model has at least three layers,
// consistent shapes, two outputs, and finite parameters.
void validate(const Mlp& model);

// Uniform Glorot initialisation with zero biases. `widths` lists the input
// width, each hidden width, and the output width (2).
Mlp make_mlp(std::span<const std::size_t> widths, std::uint64_t seed);

// FNV-1a over the raw bytes of the frozen layers' parameters.
std::uint64_t frozen_parameter_hash(const Mlp& model);

}  // namespace wmspoof::kpwl
