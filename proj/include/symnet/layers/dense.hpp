#pragma once

#include <string>

#include "symnet/errors.hpp"
#include "symnet/layers/gradients.hpp"
#include "symnet/ndcore/ops.hpp"
#include "symnet/ndcore/rng.hpp"
#include "symnet/ndcore/tensor.hpp"

namespace symnet {

// Fully connected layer: one independent weight per (output, input) pair.
struct DenseLayer {
  Tensor weights;  // [out_units x in_units]
  Tensor bias;     // [out_units]

  static DenseLayer zeros(std::size_t in_units, std::size_t out_units) {
    return {Tensor({out_units, in_units}), Tensor({out_units})};
  }

  static DenseLayer random(SeededRng& rng, std::size_t in_units, std::size_t out_units,
                           double half_width) {
    return {init_uniform(rng, {out_units, in_units}, half_width), Tensor({out_units})};
  }

  std::size_t in_units() const { return weights.dim(1); }
  std::size_t out_units() const { return weights.dim(0); }

  void validate() const {
    if (weights.rank() != 2 || bias.rank() != 1 || bias.dim(0) != weights.dim(0)) {
      throw ShapeError("dense layer: weights " + shape_to_string(weights.shape()) +
                       " inconsistent with bias " + shape_to_string(bias.shape()));
    }
  }
};

namespace detail {
inline void check_dense_input(const DenseLayer& layer, const Tensor& x) {
  layer.validate();
  if (x.size() != layer.in_units()) {
    throw ShapeError("dense layer expects " + std::to_string(layer.in_units()) +
                     " inputs, got " + shape_to_string(x.shape()));
  }
}
}  // namespace detail

/// Pre-activation y = W x + b. Any input shape with in_units elements is
/// accepted and read in row-major order.
inline Tensor dense_forward(const DenseLayer& layer, const Tensor& x) {
  detail::check_dense_input(layer, x);
  const std::size_t n_out = layer.out_units(), n_in = layer.in_units();
  Tensor y = layer.bias;
  for (std::size_t i = 0; i < n_out; ++i) {
    double acc = y[i];
    for (std::size_t j = 0; j < n_in; ++j) acc += layer.weights.at(i, j) * x[j];
    y[i] = acc;
  }
  y.check_finite("dense_forward");
  return y;
}

inline LayerGradients dense_backward(const DenseLayer& layer, const Tensor& x,
                                     const Tensor& upstream) {
  detail::check_dense_input(layer, x);
  if (upstream.size() != layer.out_units()) {
    throw ShapeError("dense_backward: upstream " + shape_to_string(upstream.shape()) +
                     " does not match " + std::to_string(layer.out_units()) + " outputs");
  }
  const std::size_t n_out = layer.out_units(), n_in = layer.in_units();
  LayerGradients g{Tensor(layer.weights.shape()), Tensor(layer.bias.shape()),
                   Tensor(x.shape())};
  for (std::size_t i = 0; i < n_out; ++i) {
    const double u = upstream[i];
    g.bias[i] = u;
    for (std::size_t j = 0; j < n_in; ++j) {
      g.weights.at(i, j) = u * x[j];
      g.input[j] += layer.weights.at(i, j) * u;
    }
  }
  return g;
}

}  // namespace symnet
