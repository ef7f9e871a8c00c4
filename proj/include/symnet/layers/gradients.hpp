#pragma once

#include "symnet/ndcore/tensor.hpp"

namespace symnet {

/// Result of a layer's backward pass. `weights` and `bias` mirror the layer's
/// parameter shapes; `input` mirrors the forward input.
struct LayerGradients {
  Tensor weights;
  Tensor bias;
  Tensor input;
};

}  // namespace symnet
