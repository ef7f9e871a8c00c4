#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symnet/errors.hpp"
#include "symnet/ndcore/tensor.hpp"

namespace symnet {

enum class PoolKind { global_max };
enum class TieBreak { lowest_index };

struct PoolSpec {
  PoolKind kind = PoolKind::global_max;
  TieBreak tie_break = TieBreak::lowest_index;

  friend bool operator==(const PoolSpec&, const PoolSpec&) = default;
};

/// Per-channel winning positions from a forward pass, needed to route the
/// gradient back.
struct PoolArgmax {
  std::size_t positions = 0;
  std::vector<std::size_t> indices;
};

struct PoolResult {
  Tensor values;  // [channels]
  PoolArgmax argmax;
};

/// Reduces [channels x positions] to [channels] by taking the maximum of each
/// channel. Ties go to the lowest position.
inline PoolResult global_max_pool_forward(const PoolSpec& /*spec*/, const Tensor& x) {
  if (x.rank() != 2) {
    throw ShapeError("global_max_pool expects [channels x positions], got " +
                     shape_to_string(x.shape()));
  }
  const std::size_t n_ch = x.dim(0), n_pos = x.dim(1);
  PoolResult out{Tensor({n_ch}), PoolArgmax{n_pos, std::vector<std::size_t>(n_ch, 0)}};
  for (std::size_t c = 0; c < n_ch; ++c) {
    std::size_t best = 0;
    for (std::size_t p = 1; p < n_pos; ++p) {
      if (x.at(c, p) > x.at(c, best)) best = p;
    }
    out.values[c] = x.at(c, best);
    out.argmax.indices[c] = best;
  }
  return out;
}

inline Tensor global_max_pool_backward(const PoolSpec& /*spec*/, const PoolArgmax& argmax,
                                       const Tensor& upstream) {
  if (argmax.indices.empty() || argmax.positions == 0) {
    throw UsageError("global_max_pool_backward: no argmax indices recorded");
  }
  if (upstream.size() != argmax.indices.size()) {
    throw UsageError("global_max_pool_backward: argmax covers " +
                     std::to_string(argmax.indices.size()) + " channels but upstream has " +
                     std::to_string(upstream.size()));
  }
  Tensor dx({argmax.indices.size(), argmax.positions});
  for (std::size_t c = 0; c < argmax.indices.size(); ++c) {
    const std::size_t p = argmax.indices[c];
    if (p >= argmax.positions) {
      throw UsageError("global_max_pool_backward: stale argmax index " + std::to_string(p));
    }
    dx.at(c, p) = upstream[c];
  }
  return dx;
}

}  // namespace symnet
