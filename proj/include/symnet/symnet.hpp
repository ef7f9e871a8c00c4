#pragma once

#include "symnet/errors.hpp"
#include "symnet/ndcore/ops.hpp"
#include "symnet/ndcore/rng.hpp"
#include "symnet/ndcore/tensor.hpp"
#include "symnet/layers/activation.hpp"
#include "symnet/layers/conv1d.hpp"
#include "symnet/layers/dense.hpp"
#include "symnet/layers/gradients.hpp"
#include "symnet/layers/pool.hpp"
#include "symnet/training/example.hpp"
#include "symnet/training/loss.hpp"
#include "symnet/training/network.hpp"
#include "symnet/training/trainer.hpp"
#include "symnet/tasks/datasets.hpp"
#include "symnet/tasks/vocabulary.hpp"
#include "symnet/harness/experiment.hpp"
#include "symnet/harness/report.hpp"
#include "symnet/harness/dataset_export.hpp"
