#pragma once

#include <cstddef>
#include <string>

#include "symnet/errors.hpp"
#include "symnet/layers/gradients.hpp"
#include "symnet/ndcore/ops.hpp"
#include "symnet/ndcore/rng.hpp"
#include "symnet/ndcore/tensor.hpp"

namespace symnet {

enum class PaddingMode {
  zero_same,  // pad (width-1)/2 zeros on each side; output keeps input length
  none,       // valid positions only; output length = positions - width + 1
};

// One-dimensional convolution over a [channels x positions] input. The same
// filter bank is applied at every position.
struct Conv1DLayer {
  Tensor filters;  // [out_channels x in_channels x width]
  Tensor bias;     // [out_channels]
  PaddingMode padding = PaddingMode::zero_same;

  static Conv1DLayer zeros(std::size_t in_channels, std::size_t out_channels,
                           std::size_t width, PaddingMode padding) {
    Conv1DLayer layer{Tensor({out_channels, in_channels, width}), Tensor({out_channels}),
                      padding};
    layer.validate();
    return layer;
  }

  static Conv1DLayer random(SeededRng& rng, std::size_t in_channels,
                            std::size_t out_channels, std::size_t width,
                            PaddingMode padding, double half_width) {
    Conv1DLayer layer{init_uniform(rng, {out_channels, in_channels, width}, half_width),
                      Tensor({out_channels}), padding};
    layer.validate();
    return layer;
  }

  std::size_t out_channels() const { return filters.dim(0); }
  std::size_t in_channels() const { return filters.dim(1); }
  std::size_t width() const { return filters.dim(2); }

  std::size_t left_pad() const {
    return padding == PaddingMode::zero_same ? (width() - 1) / 2 : 0;
  }

  std::size_t output_positions(std::size_t positions) const {
    if (padding == PaddingMode::zero_same) return positions;
    if (positions < width()) {
      throw ShapeError("conv1d: " + std::to_string(positions) +
                       " positions is fewer than filter width " + std::to_string(width()));
    }
    return positions - width() + 1;
  }

  void validate() const {
    if (filters.rank() != 3 || bias.rank() != 1 || bias.dim(0) != filters.dim(0)) {
      throw ShapeError("conv1d: filters " + shape_to_string(filters.shape()) +
                       " inconsistent with bias " + shape_to_string(bias.shape()));
    }
    if (padding == PaddingMode::zero_same && width() % 2 == 0) {
      throw ShapeError("conv1d: zero_same padding needs an odd width, got " +
                       std::to_string(width()));
    }
  }
};

namespace detail {
inline void check_conv_input(const Conv1DLayer& layer, const Tensor& x) {
  layer.validate();
  if (x.rank() != 2 || x.dim(0) != layer.in_channels()) {
    throw ShapeError("conv1d expects [" + std::to_string(layer.in_channels()) +
                     " x positions] input, got " + shape_to_string(x.shape()));
  }
}
}  // namespace detail

/// y[c][p] = b[c] + sum_{k,t} filters[c][k][t] * x[k][p + t - left_pad],
/// with out-of-range input cells read as zero.
inline Tensor conv1d_forward(const Conv1DLayer& layer, const Tensor& x) {
  detail::check_conv_input(layer, x);
  const std::size_t n_pos = x.dim(1);
  const std::size_t n_out_pos = layer.output_positions(n_pos);
  const std::size_t width = layer.width(), pad = layer.left_pad();
  Tensor y({layer.out_channels(), n_out_pos});
  for (std::size_t c = 0; c < layer.out_channels(); ++c) {
    for (std::size_t p = 0; p < n_out_pos; ++p) {
      double acc = layer.bias[c];
      for (std::size_t k = 0; k < layer.in_channels(); ++k) {
        for (std::size_t t = 0; t < width; ++t) {
          const std::size_t shifted = p + t;
          if (shifted < pad || shifted - pad >= n_pos) continue;
          acc += layer.filters.at(c, k, t) * x.at(k, shifted - pad);
        }
      }
      y.at(c, p) = acc;
    }
  }
  y.check_finite("conv1d_forward");
  return y;
}

/// Filter gradients accumulate over every output position, since one
/// filter value is shared by all of them. The input gradient is the
/// transposed convolution of `upstream`.
inline LayerGradients conv1d_backward(const Conv1DLayer& layer, const Tensor& x,
                                      const Tensor& upstream) {
  detail::check_conv_input(layer, x);
  const std::size_t n_pos = x.dim(1);
  const std::size_t n_out_pos = layer.output_positions(n_pos);
  if (upstream.shape() != Shape{layer.out_channels(), n_out_pos}) {
    throw ShapeError("conv1d_backward: upstream " + shape_to_string(upstream.shape()) +
                     " does not match output shape " +
                     shape_to_string({layer.out_channels(), n_out_pos}));
  }
  const std::size_t width = layer.width(), pad = layer.left_pad();
  LayerGradients g{Tensor(layer.filters.shape()), Tensor(layer.bias.shape()),
                   Tensor(x.shape())};
  for (std::size_t c = 0; c < layer.out_channels(); ++c) {
    for (std::size_t p = 0; p < n_out_pos; ++p) {
      const double u = upstream.at(c, p);
      g.bias[c] += u;
      for (std::size_t k = 0; k < layer.in_channels(); ++k) {
        for (std::size_t t = 0; t < width; ++t) {
          const std::size_t shifted = p + t;
          if (shifted < pad || shifted - pad >= n_pos) continue;
          g.weights.at(c, k, t) += u * x.at(k, shifted - pad);
          g.input.at(k, shifted - pad) += layer.filters.at(c, k, t) * u;
        }
      }
    }
  }
  return g;
}

}  // namespace symnet
