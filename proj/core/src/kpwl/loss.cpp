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

#include "wmspoof/kpwl/loss.hpp"

#include <cmath>
#include <numeric>

#include "wmspoof/error.hpp"

namespace wmspoof::kpwl {

namespace {

void check_distribution(std::span<const double> p, const char* which) {
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidInputError(std::string(which) + " has an invalid probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInputError(std::string(which) + " does not sum to 1");
}

void check_same_shape(const Mlp& a, const Mlp& b) {
  bool same = a.layers.size() == b.layers.size();
  for (std::size_t i = 0; same && i < a.layers.size(); ++i) {
    same = a.layers[i].inputs == b.layers[i].inputs && a.layers[i].outputs == b.layers[i].outputs;
  }
  if (!same) throw InvalidInputError("anchor shape does not match the model");
}

// Per-sample forward pass keeping every layer's output for backprop.
struct Trace {
  std::vector<std::vector<double>> h;  // h[0] = input, h[l+1] = output of layer l
  std::array<double, 2> log_p{};
};

void forward(const Mlp& m, std::span<const double> x, Trace& t) {
  t.h.resize(m.layers.size() + 1);
  t.h[0].assign(x.begin(), x.end());
  for (std::size_t li = 0; li < m.layers.size(); ++li) {
    const auto& l = m.layers[li];
    auto& out = t.h[li + 1];
    out.assign(l.outputs, 0.0);
    const auto& in = t.h[li];
    for (std::size_t o = 0; o < l.outputs; ++o) {
      double acc = l.biases[o];
      for (std::size_t i = 0; i < l.inputs; ++i) acc += l.w(o, i) * in[i];
      out[o] = li + 1 < m.layers.size() ? std::tanh(acc) : acc;
    }
  }
  const auto& z = t.h.back();
  const double mx = std::max(z[0], z[1]);
  const double lse = mx + std::log(std::exp(z[0] - mx) + std::exp(z[1] - mx));
  t.log_p = {z[0] - lse, z[1] - lse};
}

Mlp zeros_like(const Mlp& m) {
  Mlp g = m;
  for (auto& l : g.layers) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0);
    std::fill(l.biases.begin(), l.biases.end(), 0.0);
  }
  return g;
}

}  // namespace

double kd_loss(std::span<const double> p_teacher, std::span<const double> p_student) {
  if (p_teacher.size() != p_student.size() || p_teacher.empty()) {
    throw InvalidInputError("kd_loss: distributions must be non-empty and equally long");
  }
  check_distribution(p_teacher, "teacher distribution");
  check_distribution(p_student, "student distribution");
  double kd = 0.0;
  for (std::size_t k = 0; k < p_teacher.size(); ++k) {
    const double t = std::clamp(p_teacher[k], kProbFloor, 1.0);
    const double s = std::clamp(p_student[k], kProbFloor, 1.0);
    kd += (t - s) * (std::log(t) - std::log(s));
  }
  return kd;
}

double l2sp_penalty(const Mlp& model, const AnchorSnapshot& anchor) {
  check_same_shape(model, anchor.w0);
  double sum = 0.0;
  for (std::size_t li = 0; li < model.layers.size(); ++li) {
    const auto& l = model.layers[li];
    if (l.frozen) continue;
    const auto& a = anchor.w0.layers[li];
    for (std::size_t i = 0; i < l.weights.size(); ++i) {
      const double d = l.weights[i] - a.weights[i];
      sum += d * d;
    }
    for (std::size_t i = 0; i < l.biases.size(); ++i) {
      const double d = l.biases[i] - a.biases[i];
      sum += d * d;
    }
  }
  return sum;
}

std::array<double, 2> class_weights(const FeatureSet& data) {
  const auto nb = static_cast<double>(data.count(Label::kBonafide));
  const auto ns = static_cast<double>(data.count(Label::kSpoof));
  if (nb == 0.0 || ns == 0.0) throw InvalidInputError("training data must contain both classes");
  const double n = nb + ns;
  return {n / (2.0 * nb), n / (2.0 * ns)};
}

LossBreakdown loss_and_gradient(const Mlp& model, const FeatureSet& data, std::span<const std::size_t> rows,
                                const Objective& obj, Mlp* grad) {
  if (rows.empty()) throw InvalidInputError("empty batch");
  if (data.dim != model.input_width()) throw InvalidInputError("feature width does not match the model");
  const bool need_anchor = obj.beta != 0.0 || obj.mu != 0.0;
  if (need_anchor && !obj.anchor) throw ConfigError("KD and L2-SP terms need an anchor snapshot");
  if (obj.anchor) {
    check_same_shape(model, obj.anchor->teacher);
    check_same_shape(model, obj.anchor->w0);
  }

  const std::size_t n_layers = model.layers.size();
  std::size_t first_trainable = n_layers;
  for (std::size_t li = 0; li < n_layers; ++li) {
    if (!model.layers[li].frozen) {
      first_trainable = li;
      break;
    }
  }
  if (grad) *grad = zeros_like(model);

  double weight_sum = 0.0;
  for (auto r : rows) weight_sum += obj.class_weight[static_cast<std::size_t>(data.labels.at(r))];

  const double inv_batch = 1.0 / static_cast<double>(rows.size());
  const double log_floor = std::log(kProbFloor);
  double task = 0.0;
  double kd = 0.0;
  Trace student, teacher;
  std::vector<double> delta, prev;

  for (auto r : rows) {
    const auto x = data.row(r);
    const auto y = static_cast<std::size_t>(data.labels[r]);
    forward(model, x, student);
    const double w = obj.class_weight[y] / weight_sum;
    task += -w * student.log_p[y];

    // dL/dz for the two output logits.
    std::array<double, 2> dz{};
    const std::array<double, 2> p_s{std::exp(student.log_p[0]), std::exp(student.log_p[1])};
    for (std::size_t k = 0; k < 2; ++k) dz[k] = obj.task_weight * w * (p_s[k] - (k == y ? 1.0 : 0.0));

    if (obj.anchor) {
      forward(obj.anchor->teacher, x, teacher);
      std::array<double, 2> g{};
      double sample_kd = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        const bool clamped = student.log_p[k] < log_floor;
        const double log_s = clamped ? log_floor : student.log_p[k];
        const double log_t = std::max(teacher.log_p[k], log_floor);
        const double s = std::exp(log_s);
        const double t = std::exp(log_t);
        sample_kd += (t - s) * (log_t - log_s);
        g[k] = clamped ? 0.0 : -(log_t - log_s) - (t - s) / s;
      }
      kd += sample_kd * inv_batch;
      const double gp = g[0] * p_s[0] + g[1] * p_s[1];
      for (std::size_t k = 0; k < 2; ++k) dz[k] += obj.beta * inv_batch * p_s[k] * (g[k] - gp);
    }

    if (!grad || first_trainable == n_layers) continue;
    delta.assign(dz.begin(), dz.end());
    for (std::size_t li = n_layers; li-- > first_trainable;) {
      const auto& l = model.layers[li];
      const auto& in = student.h[li];
      if (!l.frozen) {
        auto& gl = grad->layers[li];
        for (std::size_t o = 0; o < l.outputs; ++o) {
          gl.biases[o] += delta[o];
          for (std::size_t i = 0; i < l.inputs; ++i) gl.weights[o * l.inputs + i] += delta[o] * in[i];
        }
      }
      if (li == first_trainable) break;
      prev.assign(l.inputs, 0.0);
      for (std::size_t o = 0; o < l.outputs; ++o) {
        for (std::size_t i = 0; i < l.inputs; ++i) prev[i] += delta[o] * l.w(o, i);
      }
      // Layer li-1 is hidden: its output went through tanh.
      for (std::size_t i = 0; i < l.inputs; ++i) prev[i] *= 1.0 - in[i] * in[i];
      delta.swap(prev);
    }
  }

  double l2sp = 0.0;
  if (obj.anchor) l2sp = l2sp_penalty(model, *obj.anchor);
  if (grad && obj.mu != 0.0) {
    for (std::size_t li = 0; li < n_layers; ++li) {
      if (model.layers[li].frozen) continue;
      const auto& l = model.layers[li];
      const auto& a = obj.anchor->w0.layers[li];
      auto& gl = grad->layers[li];
      for (std::size_t i = 0; i < l.weights.size(); ++i) gl.weights[i] += 2.0 * obj.mu * (l.weights[i] - a.weights[i]);
      for (std::size_t i = 0; i < l.biases.size(); ++i) gl.biases[i] += 2.0 * obj.mu * (l.biases[i] - a.biases[i]);
    }
  }

  LossBreakdown lb;
  lb.task = obj.task_weight * task;
  lb.kd = kd;
  lb.l2sp = l2sp;
  lb.beta = obj.beta;
  lb.mu = obj.mu;
  lb.total = lb.task + lb.beta * lb.kd + lb.mu * lb.l2sp;
  return lb;
}

}  // namespace wmspoof::kpwl
