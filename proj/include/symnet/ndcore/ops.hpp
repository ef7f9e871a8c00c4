#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "symnet/errors.hpp"
#include "symnet/ndcore/rng.hpp"
#include "symnet/ndcore/tensor.hpp"

namespace symnet {

inline Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw ShapeError("matmul: incompatible shapes " + shape_to_string(a.shape()) +
                     " and " + shape_to_string(b.shape()));
  }
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor c({m, n});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      const double a_it = a.at(i, t);
      for (std::size_t j = 0; j < n; ++j) c.at(i, j) += a_it * b.at(t, j);
    }
  }
  c.check_finite("matmul");
  return c;
}

inline Tensor transpose(const Tensor& a) {
  if (a.rank() != 2) {
    throw ShapeError("transpose: expected rank 2, got " + shape_to_string(a.shape()));
  }
  Tensor out({a.dim(1), a.dim(0)});
  for (std::size_t i = 0; i < a.dim(0); ++i)
    for (std::size_t j = 0; j < a.dim(1); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

inline double sigmoid(double x) noexcept {
  // Branches keep exp() from overflowing for large |x|.
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline Tensor sigmoid(const Tensor& x) {
  Tensor y = x;
  for (double& v : y.data()) v = sigmoid(v);
  return y;
}

/// Softmax over all elements, with the maximum subtracted before exp().
inline Tensor softmax(const Tensor& logits) {
  if (logits.empty()) throw ShapeError("softmax: empty input");
  const auto in = logits.data();
  const double peak = *std::max_element(in.begin(), in.end());
  Tensor out = logits;
  double total = 0.0;
  for (double& v : out.data()) {
    v = std::exp(v - peak);
    total += v;
  }
  for (double& v : out.data()) v /= total;
  out.check_finite("softmax");
  return out;
}

/// I.i.d. uniform draws in [-half_width, +half_width].
inline Tensor init_uniform(SeededRng& rng, Shape shape, double half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ParameterError("init_uniform: half_width must be positive, got " +
                         std::to_string(half_width));
  }
  Tensor t(std::move(shape));
  for (double& v : t.data()) v = rng.uniform(-half_width, half_width);
  return t;
}

}  // namespace symnet
