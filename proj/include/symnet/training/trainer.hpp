#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "symnet/errors.hpp"
#include "symnet/ndcore/rng.hpp"
#include "symnet/ndcore/tensor.hpp"
#include "symnet/training/example.hpp"
#include "symnet/training/loss.hpp"
#include "symnet/training/network.hpp"

namespace symnet {

struct TrainConfig {
  LossKind loss = LossKind::squared_error;
  int epochs = 1000;
  double learning_rate = 1.0;
  int max_restarts = 50;
  // Reinitialise and retrain when an attempt ends below 100% training
  // accuracy. Only the rule experiment enables this.
  bool restart_on_failure = false;
  // Experiment master seed, echoed in reports. train() draws only from the
  // generator it is handed.
  std::uint64_t seed = 0;

  void validate() const {
    if (epochs < 1) throw ParameterError("epochs must be >= 1, got " + std::to_string(epochs));
    if (!(learning_rate > 0.0)) {
      throw ParameterError("learning rate must be > 0, got " + std::to_string(learning_rate));
    }
    if (max_restarts < 0) {
      throw ParameterError("max_restarts must be >= 0, got " + std::to_string(max_restarts));
    }
  }
};

inline constexpr double kDiscretiseCutoff = 0.5;

/// Fraction of instances whose every output unit, discretised at 0.5
/// (inclusive), equals its target bit.
inline double evaluate(const Network& net, std::span<const Example> split) {
  if (split.empty()) throw ParameterError("evaluate: empty split");
  std::size_t correct = 0;
  for (const auto& ex : split) {
    const Tensor out = net.predict(ex.input);
    require_same_shape(out, ex.target, "evaluate");
    bool all_match = true;
    for (std::size_t i = 0; i < out.size() && all_match; ++i) {
      const bool predicted = out[i] >= kDiscretiseCutoff;
      const bool wanted = ex.target[i] >= kDiscretiseCutoff;
      all_match = predicted == wanted;
    }
    correct += all_match ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(split.size());
}

/// Loss summed over every instance of `split`, with summed gradients.
inline std::pair<double, NetworkGradients> batch_loss_and_gradients(
    const Network& net, std::span<const Example> split, LossKind loss) {
  double total = 0.0;
  NetworkGradients grads;
  for (const auto& ex : split) {
    auto [l, g] = net.loss_and_gradients(ex.input, ex.target, loss);
    total += l;
    grads.accumulate(g);
  }
  return {total, std::move(grads)};
}

inline double batch_loss(const Network& net, std::span<const Example> split, LossKind loss) {
  double total = 0.0;
  for (const auto& ex : split) total += net.loss(ex.input, ex.target, loss);
  return total;
}

struct TrainResult {
  Network network;
  int restarts_used = 0;
  double final_loss = 0.0;
  double train_accuracy = 0.0;
  bool failed = false;  // restart budget exhausted below 100% train accuracy
  long epochs_run = 0;
};

/// Full-batch gradient descent: one update per epoch on the loss summed over
/// the whole training split. With `restart_on_failure`, an attempt that ends
/// below 100% training accuracy is redrawn from `rng` and retrained, up to
/// `max_restarts` times.
inline TrainResult train(Network net, std::span<const Example> train_set,
                         const TrainConfig& cfg, SeededRng& rng) {
  cfg.validate();
  if (train_set.empty()) throw ParameterError("train: empty training set");
  TrainResult result{std::move(net)};
  for (;;) {
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      auto [loss, grads] = batch_loss_and_gradients(result.network, train_set, cfg.loss);
      apply_gd_step(result.network, grads, cfg.learning_rate);
      ++result.epochs_run;
    }
    result.train_accuracy = evaluate(result.network, train_set);
    const bool perfect = result.train_accuracy == 1.0;
    if (perfect || !cfg.restart_on_failure) break;
    if (result.restarts_used >= cfg.max_restarts) {
      result.failed = true;
      break;
    }
    result.network.reinitialize(rng);
    ++result.restarts_used;
  }
  result.final_loss = batch_loss(result.network, train_set, cfg.loss);
  return result;
}

}  // namespace symnet
