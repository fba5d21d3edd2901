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
#include <optional>
#include <span>

#include "wmspoof/kpwl/model.hpp"

namespace wmspoof::kpwl {

inline constexpr double kProbFloor = 1e-12;

// Symmetric KL divergence KL(t || s) + KL(s || t) with both vectors clamped
// to [1e-12, 1] before the logs. Throws InvalidInputError when either
// vector is not normalised to within 1e-9, has mismatched length, or holds
// a negative entry.
double kd_loss(std::span<const double> p_teacher, std::span<const double> p_student);

// Captured once at the start of adaptation and never modified.
struct AnchorSnapshot {
  Mlp teacher;
  // Parameter values the L2-SP term pulls towards.
  Mlp w0;

  static AnchorSnapshot capture(const Mlp& model) { return {model, model}; }
};

// Sum of squared differences between the model and anchor.w0 over the
// model's trainable layers, weights and biases. Throws InvalidInputError on
// a shape mismatch.
double l2sp_penalty(const Mlp& model, const AnchorSnapshot& anchor);

struct LossBreakdown {
  // Supervised term as it enters the total (already multiplied by the task
  // weight).
  double task = 0.0;
  double kd = 0.0;
  double l2sp = 0.0;
  double total = 0.0;
  double beta = 0.0;
  double mu = 0.0;
};

// Class weights N / (2 N_c), indexed by Label. Throws InvalidInputError when
// a class is absent.
std::array<double, 2> class_weights(const FeatureSet& data);

struct Objective {
  std::array<double, 2> class_weight{1.0, 1.0};
  double task_weight = 1.0;
  double beta = 0.0;
  double mu = 0.0;
  // Required when beta or mu is non-zero.
  const AnchorSnapshot* anchor = nullptr;
};

// total = task + beta * kd + mu * l2sp on the given rows. The task term is
// the class-weighted mean NLL, kd is the batch mean of kd_loss(p_T, p_S).
// When `grad` is non-null it receives the analytic gradient with the model's
// shape; frozen layers get exact zeros.
LossBreakdown loss_and_gradient(const Mlp& model, const FeatureSet& data, std::span<const std::size_t> rows,
                                const Objective& objective, Mlp* grad);

}  // namespace wmspoof::kpwl
