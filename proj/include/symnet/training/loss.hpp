#pragma once

#include <algorithm>
#include <cmath>

#include "symnet/ndcore/tensor.hpp"

namespace symnet {

enum class LossKind { squared_error, cross_entropy };

struct LossResult {
  double loss = 0.0;
  Tensor grad;
};

/// loss = sum_i (pred_i - target_i)^2, grad w.r.t. pred.
inline LossResult squared_error(const Tensor& pred, const Tensor& target) {
  require_same_shape(pred, target, "squared_error");
  LossResult r{0.0, Tensor(pred.shape())};
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    r.loss += d * d;
    r.grad[i] = 2.0 * d;
  }
  return r;
}

inline constexpr double kProbabilityFloor = 1e-12;

/// Cross-entropy of softmax probabilities against a one-hot target. The
/// returned gradient is taken w.r.t. the logits that produced `probs`
/// (softmax and cross-entropy differentiated together): probs - target.
inline LossResult cross_entropy(const Tensor& probs, const Tensor& target) {
  require_same_shape(probs, target, "cross_entropy");
  LossResult r{0.0, Tensor(probs.shape())};
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (target[i] != 0.0) r.loss -= target[i] * std::log(std::max(probs[i], kProbabilityFloor));
    r.grad[i] = probs[i] - target[i];
  }
  return r;
}

}  // namespace symnet
