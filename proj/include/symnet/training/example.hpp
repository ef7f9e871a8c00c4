#pragma once

#include "symnet/ndcore/tensor.hpp"

namespace symnet {

struct Example {
  Tensor input;
  Tensor target;

  friend bool operator==(const Example&, const Example&) = default;
};

}  // namespace symnet
