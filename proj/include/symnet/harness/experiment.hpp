#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "symnet/errors.hpp"
#include "symnet/layers/conv1d.hpp"
#include "symnet/layers/dense.hpp"
#include "symnet/layers/pool.hpp"
#include "symnet/ndcore/rng.hpp"
#include "symnet/tasks/datasets.hpp"
#include "symnet/training/network.hpp"
#include "symnet/training/trainer.hpp"

namespace symnet {

inline constexpr std::string_view kVersion = "symnet 0.1.0";

enum class ArchKind { conv, dense };

inline std::string_view to_string(ArchKind a) { return a == ArchKind::conv ? "conv" : "dense"; }

/// Row label used in the summary tables.
inline std::string_view display_name(ArchKind a) {
  return a == ArchKind::conv ? "Convolutional" : "Unconstrained";
}

inline Architecture architecture_for(TaskId task, ArchKind kind) {
  if (task == TaskId::identity) {
    return kind == ArchKind::conv ? Architecture::exp1_conv : Architecture::exp1_dense;
  }
  return kind == ArchKind::conv ? Architecture::exp2_conv : Architecture::exp2_dense;
}

enum class OutputFormat { csv, json, markdown };

struct NetworkOptions {
  std::size_t filter_width = 5;  // identity conv only
  double init_half_width = 0.5;
};

inline constexpr std::size_t kRuleHiddenUnits = 24;
inline constexpr std::size_t kRuleChannels = 2;

/// Builds one of the four architectures with weights drawn from `rng`
/// (uniform in [-h, h]) and zero biases.
///
///   exp1_dense  Dense 5->5, sigmoid
///   exp1_conv   Conv1D 1->1 channel, odd width, zero padding, sigmoid
///   exp2_conv   Conv1D 3->2 channels, width 1 over 12 word positions,
///               global max pool, softmax
///   exp2_dense  Dense 36->24 read as 2 channels x 12 positions,
///               global max pool, softmax
inline Network build_network(Architecture arch, SeededRng& rng, const NetworkOptions& opts = {}) {
  const double h = opts.init_half_width;
  if (!(h > 0.0)) throw ParameterError("init half-width must be positive");
  const std::size_t n_words = Vocabulary::kSize, n_steps = Vocabulary::kTimesteps;
  switch (arch) {
    case Architecture::exp1_dense:
      return Network(arch, {kIdentityDigits},
                     {DenseLayer::random(rng, kIdentityDigits, kIdentityDigits, h), Sigmoid{}}, h);
    case Architecture::exp1_conv: {
      if (opts.filter_width == 0 || opts.filter_width % 2 == 0) {
        throw ParameterError("identity conv filter width must be odd, got " +
                             std::to_string(opts.filter_width));
      }
      return Network(arch, {kIdentityDigits},
                     {Reshape{{1, kIdentityDigits}},
                      Conv1DLayer::random(rng, 1, 1, opts.filter_width, PaddingMode::zero_same, h),
                      Reshape{{kIdentityDigits}}, Sigmoid{}},
                     h);
    }
    case Architecture::exp2_conv:
      return Network(arch, {n_words, n_steps},
                     {Transpose{},
                      Conv1DLayer::random(rng, n_steps, kRuleChannels, 1, PaddingMode::none, h),
                      PoolSpec{}, Softmax{}},
                     h);
    case Architecture::exp2_dense:
      return Network(arch, {n_words, n_steps},
                     {DenseLayer::random(rng, n_words * n_steps, kRuleHiddenUnits, h),
                      Reshape{{kRuleChannels, kRuleHiddenUnits / kRuleChannels}}, PoolSpec{},
                      Softmax{}},
                     h);
  }
  throw ParameterError("unknown architecture");
}

inline Network build_network(TaskId task, ArchKind kind, SeededRng& rng,
                             const NetworkOptions& opts = {}) {
  return build_network(architecture_for(task, kind), rng, opts);
}

struct ExperimentSpec {
  TaskId experiment = TaskId::identity;
  std::vector<ArchKind> architectures{ArchKind::dense, ArchKind::conv};
  int runs = 100;
  TrainConfig train;
  NetworkOptions network;
  OutputFormat format = OutputFormat::markdown;
  std::optional<std::string> out_path;
  std::optional<std::string> export_dataset;
  // Worker threads for run_experiment. Never changes the report contents.
  unsigned workers = 1;

  void validate() const {
    if (runs < 1) throw ParameterError("runs must be >= 1, got " + std::to_string(runs));
    if (architectures.empty()) throw ParameterError("at least one architecture is required");
    train.validate();
  }
};

inline constexpr double kIdentityLearningRate = 1.0;
inline constexpr double kRuleLearningRate = 0.1;

/// Defaults that reproduce the published protocol: 100 runs of 1000 epochs;
/// squared error for identity, cross-entropy with restarts for rule.
inline ExperimentSpec default_spec(TaskId task) {
  ExperimentSpec spec;
  spec.experiment = task;
  if (task == TaskId::identity) {
    spec.train.loss = LossKind::squared_error;
    spec.train.learning_rate = kIdentityLearningRate;
    spec.train.restart_on_failure = false;
  } else {
    spec.train.loss = LossKind::cross_entropy;
    spec.train.learning_rate = kRuleLearningRate;
    spec.train.restart_on_failure = true;
  }
  return spec;
}

struct RunReport {
  int run_index = 0;
  std::uint64_t seed = 0;
  int restarts = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double final_loss = 0.0;
  bool failed = false;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

struct ArchitectureReport {
  ArchKind kind = ArchKind::conv;
  std::vector<RunReport> runs;
  double mean_train_accuracy = 0.0;  // over non-failed runs
  double mean_test_accuracy = 0.0;   // over non-failed runs
  int failed_runs = 0;

  friend bool operator==(const ArchitectureReport&, const ArchitectureReport&) = default;
};

/// Every resolved setting that influenced the runs.
struct ConfigEcho {
  int runs = 0;
  int epochs = 0;
  double learning_rate = 0.0;
  int max_restarts = 0;
  bool restart_on_failure = false;
  LossKind loss = LossKind::squared_error;
  std::uint64_t master_seed = 0;
  std::size_t filter_width = 0;
  double init_half_width = 0.0;

  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct ExperimentReport {
  TaskId experiment = TaskId::identity;
  std::vector<ArchitectureReport> architectures;
  ConfigEcho config;
  std::string version{kVersion};

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

inline ConfigEcho echo_config(const ExperimentSpec& spec) {
  return {spec.runs,
          spec.train.epochs,
          spec.train.learning_rate,
          spec.train.max_restarts,
          spec.train.restart_on_failure,
          spec.train.loss,
          spec.train.seed,
          spec.network.filter_width,
          spec.network.init_half_width};
}

/// Seed of run `index` for `arch`. Depends only on these three values, so
/// adding architectures or changing worker count never moves a run's stream.
inline std::uint64_t run_seed(std::uint64_t master, Architecture arch, int index) {
  return derive_seed(master, static_cast<std::uint64_t>(arch), static_cast<std::uint64_t>(index));
}

/// Builds, trains and evaluates a single run.
inline RunReport execute_run(const ExperimentSpec& spec, const Dataset& data, ArchKind kind,
                             int index) {
  const Architecture arch = architecture_for(spec.experiment, kind);
  const std::uint64_t seed = run_seed(spec.train.seed, arch, index);
  SeededRng rng(seed);
  Network net = build_network(arch, rng, spec.network);
  TrainResult trained = train(std::move(net), data.train, spec.train, rng);
  return {index,
          seed,
          trained.restarts_used,
          trained.train_accuracy,
          evaluate(trained.network, data.test),
          trained.final_loss,
          trained.failed};
}

inline void summarise(ArchitectureReport& report) {
  double train_sum = 0.0, test_sum = 0.0;
  int counted = 0;
  report.failed_runs = 0;
  for (const auto& run : report.runs) {
    if (run.failed) {
      ++report.failed_runs;
      continue;
    }
    train_sum += run.train_accuracy;
    test_sum += run.test_accuracy;
    ++counted;
  }
  report.mean_train_accuracy = counted ? train_sum / counted : 0.0;
  report.mean_test_accuracy = counted ? test_sum / counted : 0.0;
}

/// Runs every (architecture, run) pair, optionally across spec.workers
/// threads. Results are placed by run index, so the report does not depend
/// on scheduling.
inline ExperimentReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  unsigned workers = spec.workers;
  const Dataset data =
      spec.experiment == TaskId::identity ? make_identity_dataset() : make_rule_dataset();

  ExperimentReport report;
  report.experiment = spec.experiment;
  report.config = echo_config(spec);
  for (ArchKind kind : spec.architectures) {
    report.architectures.push_back({kind, std::vector<RunReport>(spec.runs), 0.0, 0.0, 0});
  }

  const std::size_t n_jobs = spec.architectures.size() * static_cast<std::size_t>(spec.runs);
  auto do_job = [&](std::size_t job) {
    const std::size_t a = job / spec.runs;
    const int i = static_cast<int>(job % spec.runs);
    report.architectures[a].runs[i] = execute_run(spec, data, spec.architectures[a], i);
  };

  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(n_jobs)));
  if (workers == 1) {
    for (std::size_t j = 0; j < n_jobs; ++j) do_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < n_jobs; j = next++) {
          try {
            do_job(j);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  for (auto& arch_report : report.architectures) summarise(arch_report);
  return report;
}

}  // namespace symnet
