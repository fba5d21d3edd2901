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

#include "wmspoof/kpwl/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "wmspoof/error.hpp"
#include "wmspoof/rng.hpp"

namespace wmspoof::kpwl {

namespace {

void check_data(const Mlp& model, const FeatureSet& data) {
  validate(model);
  if (data.dim != model.input_width()) {
    throw InvalidInputError("feature width " + std::to_string(data.dim) + " does not match model input width " +
                            std::to_string(model.input_width()));
  }
  if (data.size() == 0) throw InvalidInputError("empty training set");
}

void sgd_step(Mlp& model, const Mlp& grad, double lr) {
  for (std::size_t li = 0; li < model.layers.size(); ++li) {
    auto& l = model.layers[li];
    if (l.frozen) continue;
    const auto& g = grad.layers[li];
    for (std::size_t i = 0; i < l.weights.size(); ++i) l.weights[i] -= lr * g.weights[i];
    for (std::size_t i = 0; i < l.biases.size(); ++i) l.biases[i] -= lr * g.biases[i];
  }
}

template <typename Fn>
void for_each_batch(std::size_t n, const TrainConfig& cfg, Fn&& fn) {
  if (cfg.batch_size == 0) throw ConfigError("batch size must be positive");
  if (!std::isfinite(cfg.learning_rate) || cfg.learning_rate <= 0.0) {
    throw ConfigError("learning rate must be positive");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix_seed(cfg.seed, 0xE90C, epoch));
    shuffle(order, rng);
    std::size_t batch = 0;
    for (std::size_t start = 0; start < n; start += cfg.batch_size, ++batch) {
      const std::size_t len = std::min(cfg.batch_size, n - start);
      fn(epoch, batch, std::span<const std::size_t>(order.data() + start, len));
    }
  }
}

}  // namespace

Mlp pretrain(Mlp model, const FeatureSet& data, const TrainConfig& config) {
  check_data(model, data);
  for (const auto& l : model.layers) {
    if (l.frozen) throw ConfigError("pretraining expects every layer to be trainable");
  }
  Objective obj;
  obj.class_weight = class_weights(data);
  Mlp grad;
  for_each_batch(data.size(), config, [&](std::size_t, std::size_t, std::span<const std::size_t> rows) {
    loss_and_gradient(model, data, rows, obj, &grad);
    sgd_step(model, grad, config.learning_rate);
  });
  return model;
}

AdaptResult kpwl_adapt(Mlp model, const FeatureSet& data, const AdaptConfig& config) {
  check_data(model, data);
  if (model.trainable_parameter_count() == 0) throw ConfigError("adaptation needs at least one trainable layer");
  if (config.beta < 0.0 || config.mu < 0.0 || config.task_weight < 0.0) {
    throw ConfigError("loss weights must be non-negative");
  }
  const AnchorSnapshot anchor = AnchorSnapshot::capture(model);
  Objective obj;
  obj.class_weight = class_weights(data);
  obj.task_weight = config.task_weight;
  obj.beta = config.beta;
  obj.mu = config.mu;
  obj.anchor = &anchor;

  // The anchor term is taken implicitly: the proximal step for mu * |w - w0|^2
  // equals a plain step on the full gradient at rate lr / (1 + 2 lr mu), which
  // stays stable for any mu.
  const double lr = config.train.learning_rate;
  const double step = lr / (1.0 + 2.0 * lr * config.mu);

  AdaptResult result;
  Mlp grad;
  for_each_batch(data.size(), config.train, [&](std::size_t epoch, std::size_t batch, std::span<const std::size_t> rows) {
    const auto lb = loss_and_gradient(model, data, rows, obj, &grad);
    result.log.push_back({epoch, batch, lb});
    sgd_step(model, grad, step);
  });
  result.model = std::move(model);
  return result;
}

double gradient_check(const Mlp& model, const FeatureSet& batch, double beta, double mu, std::uint64_t seed) {
  check_data(model, batch);
  Mlp reference = model;
  Rng rng(mix_seed(seed, 0x6C4E));
  std::normal_distribution<double> jitter(0.0, 0.1);
  for (auto& l : reference.layers) {
    for (auto& w : l.weights) w += jitter(rng);
    for (auto& b : l.biases) b += jitter(rng);
  }
  const AnchorSnapshot anchor = AnchorSnapshot::capture(reference);

  Objective obj;
  obj.beta = beta;
  obj.mu = mu;
  obj.anchor = &anchor;
  // Weights from the batch when both classes are present, uniform otherwise.
  if (batch.count(Label::kBonafide) > 0 && batch.count(Label::kSpoof) > 0) obj.class_weight = class_weights(batch);

  std::vector<std::size_t> rows(batch.size());
  std::iota(rows.begin(), rows.end(), 0);
  Mlp analytic;
  loss_and_gradient(model, batch, rows, obj, &analytic);

  constexpr double h = 1e-5;
  Mlp probe = model;
  double worst = 0.0;
  auto check = [&](double& param, double a) {
    const double saved = param;
    param = saved + h;
    const double up = loss_and_gradient(probe, batch, rows, obj, nullptr).total;
    param = saved - h;
    const double down = loss_and_gradient(probe, batch, rows, obj, nullptr).total;
    param = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double scale = std::max(std::abs(a), std::abs(numeric));
    const double err = scale < 1e-8 ? std::abs(a - numeric) : std::abs(a - numeric) / scale;
    worst = std::max(worst, err);
  };
  for (std::size_t li = 0; li < probe.layers.size(); ++li) {
    auto& l = probe.layers[li];
    if (l.frozen) continue;
    for (std::size_t i = 0; i < l.weights.size(); ++i) check(l.weights[i], analytic.layers[li].weights[i]);
    for (std::size_t i = 0; i < l.biases.size(); ++i) check(l.biases[i], analytic.layers[li].biases[i]);
  }
  return worst;
}

eval::ScoreSet score_dataset(const Mlp& model, const FeatureSet& data) {
  validate(model);
  if (data.dim != model.input_width()) {
    throw InvalidInputError("feature width " + std::to_string(data.dim) + " does not match model input width " +
                            std::to_string(model.input_width()));
  }
  eval::ScoreSet set;
  set.trials.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto lp = model.log_probs(data.row(i));
    set.trials.push_back({data.ids[i], lp[0] - lp[1], data.labels[i]});
  }
  return set;
}

}  // namespace wmspoof::kpwl
