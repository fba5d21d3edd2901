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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wmspoof/eval/scores.hpp"
#include "wmspoof/kpwl/loss.hpp"
#include "wmspoof/kpwl/model.hpp"

namespace wmspoof::kpwl {

// Plain mini-batch gradient descent. Each epoch visits the rows in an order
// drawn from (seed, epoch); the last batch may be short.
struct TrainConfig {
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  double learning_rate = 1e-2;
  std::uint64_t seed = 0;
};

// Phase 1: class-weighted cross-entropy on every layer. Throws ConfigError
// if any layer is frozen and InvalidInputError for single-class data or a
// width mismatch.
Mlp pretrain(Mlp model, const FeatureSet& data, const TrainConfig& config);

struct AdaptConfig {
  TrainConfig train{2, 32, 2e-2, 0};
  double beta = 0.3;
  double mu = 1e-4;
  double task_weight = 1.0;
};

struct LogRow {
  std::size_t epoch = 0;
  std::size_t batch = 0;
  LossBreakdown loss;
};

struct AdaptResult {
  Mlp model;
  std::vector<LogRow> log;
};

// Phase 2: the teacher and L2-SP anchor are the model as passed in. Only
// layers not flagged frozen are updated; each logged row is evaluated on
// the batch before its update. The L2-SP term is applied as a proximal
// step, so the effective rate is lr / (1 + 2 lr mu). Throws ConfigError when nothing is
// trainable.
AdaptResult kpwl_adapt(Mlp model, const FeatureSet& data, const AdaptConfig& config);

// Compares the analytic gradient of the full objective with central
// differences (step 1e-5) over every trainable parameter of `model`. The
// teacher and anchor are a copy of the model with every parameter jittered
// by N(0, 0.1^2) drawn from `seed`, so all three terms are active. Returns
// the largest relative error, falling back to absolute error where
// max(|analytic|, |numeric|) < 1e-8.
double gradient_check(const Mlp& model, const FeatureSet& batch, double beta, double mu, std::uint64_t seed = 0);

// score = log p(bonafide) - log p(spoof), one trial per row.
eval::ScoreSet score_dataset(const Mlp& model, const FeatureSet& data);

}  // namespace wmspoof::kpwl
