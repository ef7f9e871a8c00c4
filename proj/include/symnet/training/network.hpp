#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "symnet/errors.hpp"
#include "symnet/layers/activation.hpp"
#include "symnet/layers/conv1d.hpp"
#include "symnet/layers/dense.hpp"
#include "symnet/layers/pool.hpp"
#include "symnet/ndcore/ops.hpp"
#include "symnet/ndcore/rng.hpp"
#include "symnet/ndcore/tensor.hpp"
#include "symnet/training/loss.hpp"

namespace symnet {

enum class Architecture { exp1_dense, exp1_conv, exp2_dense, exp2_conv };

inline std::string_view to_string(Architecture a) {
  switch (a) {
    case Architecture::exp1_dense: return "exp1_dense";
    case Architecture::exp1_conv: return "exp1_conv";
    case Architecture::exp2_dense: return "exp2_dense";
    case Architecture::exp2_conv: return "exp2_conv";
  }
  return "?";
}

/// Reinterprets the activation under a new shape of equal volume.
struct Reshape {
  Shape shape;
};
/// Swaps the two axes of a rank-2 activation.
struct Transpose {};
struct Sigmoid {};
struct Softmax {};

using Stage = std::variant<DenseLayer, Conv1DLayer, Reshape, Transpose, PoolSpec, Sigmoid,
                           Softmax>;

struct ParameterGradients {
  Tensor weights;
  Tensor bias;
};

/// One slot per network stage; parameter-free stages hold nullopt.
struct NetworkGradients {
  std::vector<std::optional<ParameterGradients>> stages;

  /// this += other, slot by slot.
  void accumulate(const NetworkGradients& other) {
    if (stages.empty()) {
      stages = other.stages;
      return;
    }
    if (stages.size() != other.stages.size()) {
      throw ShapeError("gradient accumulation: stage count mismatch");
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
      if (!stages[i] || !other.stages[i]) continue;
      add_into(stages[i]->weights, other.stages[i]->weights);
      add_into(stages[i]->bias, other.stages[i]->bias);
    }
  }

 private:
  static void add_into(Tensor& dst, const Tensor& src) {
    require_same_shape(dst, src, "gradient accumulation");
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
};

/// Per-stage inputs recorded during a forward pass.
struct ForwardTrace {
  std::vector<Tensor> inputs;
  std::vector<PoolArgmax> argmax;  // aligned with stages; empty unless pooling
  Tensor output;
};

// An ordered pipeline of stages with the architecture it was built as. The
// weight half-width is kept so restarts redraw parameters the same way.
class Network {
 public:
  Network(Architecture architecture, Shape input_shape, std::vector<Stage> stages,
          double init_half_width)
      : architecture_(architecture),
        input_shape_(std::move(input_shape)),
        stages_(std::move(stages)),
        init_half_width_(init_half_width) {
    validate();
  }

  Architecture architecture() const noexcept { return architecture_; }
  const Shape& input_shape() const noexcept { return input_shape_; }
  const std::vector<Stage>& stages() const noexcept { return stages_; }
  std::vector<Stage>& stages() noexcept { return stages_; }
  double init_half_width() const noexcept { return init_half_width_; }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& stage : stages_) {
      if (const auto* d = std::get_if<DenseLayer>(&stage)) n += d->weights.size() + d->bias.size();
      if (const auto* c = std::get_if<Conv1DLayer>(&stage)) n += c->filters.size() + c->bias.size();
    }
    return n;
  }

  /// Draws fresh weights uniform in [-h, h] and zeroes every bias.
  void reinitialize(SeededRng& rng) {
    for (auto& stage : stages_) {
      if (auto* d = std::get_if<DenseLayer>(&stage)) {
        d->weights = init_uniform(rng, d->weights.shape(), init_half_width_);
        d->bias = Tensor(d->bias.shape());
      } else if (auto* c = std::get_if<Conv1DLayer>(&stage)) {
        c->filters = init_uniform(rng, c->filters.shape(), init_half_width_);
        c->bias = Tensor(c->bias.shape());
      }
    }
  }

  Tensor predict(const Tensor& x) const { return forward(x).output; }

  ForwardTrace forward(const Tensor& x) const {
    if (x.shape() != input_shape_) {
      throw ShapeError(std::string(to_string(architecture_)) + " expects input " +
                       shape_to_string(input_shape_) + ", got " + shape_to_string(x.shape()));
    }
    ForwardTrace trace;
    trace.inputs.reserve(stages_.size());
    trace.argmax.resize(stages_.size());
    Tensor act = x;
    for (std::size_t i = 0; i < stages_.size(); ++i) {
      trace.inputs.push_back(act);
      act = std::visit(
          [&](const auto& stage) -> Tensor {
            using T = std::decay_t<decltype(stage)>;
            if constexpr (std::is_same_v<T, DenseLayer>) {
              return dense_forward(stage, act);
            } else if constexpr (std::is_same_v<T, Conv1DLayer>) {
              return conv1d_forward(stage, act);
            } else if constexpr (std::is_same_v<T, Reshape>) {
              return act.reshaped(stage.shape);
            } else if constexpr (std::is_same_v<T, Transpose>) {
              return transpose(act);
            } else if constexpr (std::is_same_v<T, PoolSpec>) {
              auto pooled = global_max_pool_forward(stage, act);
              trace.argmax[i] = std::move(pooled.argmax);
              return std::move(pooled.values);
            } else if constexpr (std::is_same_v<T, Sigmoid>) {
              return sigmoid(act);
            } else {
              return softmax(act);
            }
          },
          stages_[i]);
    }
    trace.output = std::move(act);
    return trace;
  }

  /// Backpropagates `upstream` (the gradient w.r.t. the output of stage
  /// `last`) down to the first stage.
  NetworkGradients backward(const ForwardTrace& trace, Tensor upstream,
                            std::size_t last) const {
    if (trace.inputs.size() != stages_.size()) {
      throw UsageError("backward: trace does not belong to this network");
    }
    NetworkGradients grads;
    grads.stages.resize(stages_.size());
    for (std::size_t i = last + 1; i-- > 0;) {
      const Tensor& in = trace.inputs[i];
      const Tensor& out = i + 1 < stages_.size() ? trace.inputs[i + 1] : trace.output;
      upstream = std::visit(
          [&](const auto& stage) -> Tensor {
            using T = std::decay_t<decltype(stage)>;
            if constexpr (std::is_same_v<T, DenseLayer>) {
              auto g = dense_backward(stage, in, upstream);
              grads.stages[i] = ParameterGradients{std::move(g.weights), std::move(g.bias)};
              return std::move(g.input);
            } else if constexpr (std::is_same_v<T, Conv1DLayer>) {
              auto g = conv1d_backward(stage, in, upstream);
              grads.stages[i] = ParameterGradients{std::move(g.weights), std::move(g.bias)};
              return std::move(g.input);
            } else if constexpr (std::is_same_v<T, Reshape>) {
              return upstream.reshaped(in.shape());
            } else if constexpr (std::is_same_v<T, Transpose>) {
              return transpose(upstream);
            } else if constexpr (std::is_same_v<T, PoolSpec>) {
              return global_max_pool_backward(stage, trace.argmax[i], upstream);
            } else if constexpr (std::is_same_v<T, Sigmoid>) {
              return sigmoid_backward(out, upstream);
            } else {
              return softmax_backward(out, upstream);
            }
          },
          stages_[i]);
    }
    return grads;
  }

  /// Loss on one instance and its parameter gradients. Cross-entropy must
  /// follow a softmax stage and is differentiated jointly with it.
  std::pair<double, NetworkGradients> loss_and_gradients(const Tensor& x, const Tensor& target,
                                                         LossKind loss) const {
    ForwardTrace trace = forward(x);
    if (loss == LossKind::cross_entropy) {
      if (!std::holds_alternative<Softmax>(stages_.back()) || stages_.size() < 2) {
        throw ParameterError("cross_entropy loss requires a network ending in softmax");
      }
      LossResult r = cross_entropy(trace.output, target);
      return {r.loss, backward(trace, std::move(r.grad), stages_.size() - 2)};
    }
    LossResult r = squared_error(trace.output, target);
    return {r.loss, backward(trace, std::move(r.grad), stages_.size() - 1)};
  }

  double loss(const Tensor& x, const Tensor& target, LossKind kind) const {
    const Tensor out = predict(x);
    return kind == LossKind::cross_entropy ? cross_entropy(out, target).loss
                                           : squared_error(out, target).loss;
  }

 private:
  void validate() const {
    if (stages_.empty()) throw ParameterError("network has no stages");
    if (!(init_half_width_ > 0.0)) {
      throw ParameterError("network init half-width must be positive");
    }
    // Shapes compose iff a zero input passes through.
    const Tensor out = predict(Tensor(input_shape_));
    const bool is_rule = architecture_ == Architecture::exp2_dense ||
                         architecture_ == Architecture::exp2_conv;
    if (is_rule) {
      if (!std::holds_alternative<Softmax>(stages_.back()) || out.size() != 2) {
        throw ShapeError("rule networks must end in a 2-way softmax");
      }
    } else if (!std::holds_alternative<Sigmoid>(stages_.back()) || out.size() != 5) {
      throw ShapeError("identity networks must end in a 5-unit sigmoid");
    }
  }

  Architecture architecture_;
  Shape input_shape_;
  std::vector<Stage> stages_;
  double init_half_width_;
};

/// Plain gradient descent: p <- p - learning_rate * dp on every parameter.
inline void apply_gd_step(Network& net, const NetworkGradients& grads, double learning_rate) {
  if (!(learning_rate >= 0.0)) {
    throw ParameterError("gd_step: learning rate must be non-negative");
  }
  auto& stages = net.stages();
  if (grads.stages.size() != stages.size()) {
    throw ShapeError("gd_step: gradients cover " + std::to_string(grads.stages.size()) +
                     " stages, network has " + std::to_string(stages.size()));
  }
  auto update = [&](Tensor& param, const Tensor& grad) {
    require_same_shape(param, grad, "gd_step");
    for (std::size_t i = 0; i < param.size(); ++i) param[i] -= learning_rate * grad[i];
    param.check_finite("gd_step");
  };
  for (std::size_t i = 0; i < stages.size(); ++i) {
    auto* dense = std::get_if<DenseLayer>(&stages[i]);
    auto* conv = std::get_if<Conv1DLayer>(&stages[i]);
    if (!dense && !conv) continue;
    if (!grads.stages[i]) throw ShapeError("gd_step: missing gradient for stage " + std::to_string(i));
    update(dense ? dense->weights : conv->filters, grads.stages[i]->weights);
    update(dense ? dense->bias : conv->bias, grads.stages[i]->bias);
  }
}

inline Network gd_step(Network net, const NetworkGradients& grads, double learning_rate) {
  apply_gd_step(net, grads, learning_rate);
  return net;
}

}  // namespace symnet
