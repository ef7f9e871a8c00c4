#pragma once

#include "symnet/ndcore/ops.hpp"
#include "symnet/ndcore/tensor.hpp"

namespace symnet {

/// Gradient through y = sigmoid(x), given the forward output y.
inline Tensor sigmoid_backward(const Tensor& y, const Tensor& upstream) {
  require_same_shape(y, upstream, "sigmoid_backward");
  Tensor dx = upstream;
  for (std::size_t i = 0; i < dx.size(); ++i) dx[i] *= y[i] * (1.0 - y[i]);
  return dx;
}

/// Gradient through y = softmax(x), given the forward output y.
inline Tensor softmax_backward(const Tensor& y, const Tensor& upstream) {
  require_same_shape(y, upstream, "softmax_backward");
  double dot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) dot += upstream[i] * y[i];
  Tensor dx = y;
  for (std::size_t i = 0; i < dx.size(); ++i) dx[i] *= upstream[i] - dot;
  return dx;
}

}  // namespace symnet
