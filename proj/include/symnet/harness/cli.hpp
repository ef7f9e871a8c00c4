#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symnet/errors.hpp"
#include "symnet/harness/experiment.hpp"

namespace symnet {

/// Bad command line: unknown flag, missing required flag, unparseable value.
class CliUsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

/// Parses the runner's flags into a fully resolved ExperimentSpec. Unset
/// options take the experiment's defaults (learning rate 1.0 for identity,
/// 0.1 for rule).
inline ExperimentSpec parse_cli(int argc, const char* const* argv) {
  CLI::App app{"Train and evaluate the identity and rule learning experiments", "symnet"};

  std::string experiment;
  std::string arch = "both";
  int runs = 100;
  int epochs = 1000;
  std::optional<double> lr;
  std::uint64_t seed = 0;
  int max_restarts = 50;
  std::string format = "md";
  std::string out;
  std::size_t filter_width = 5;
  std::string export_dataset;
  unsigned jobs = 1;

  app.add_option("--experiment", experiment, "identity | rule")
      ->required()
      ->check(CLI::IsMember({"identity", "rule"}));
  app.add_option("--arch", arch, "conv | dense | both")
      ->check(CLI::IsMember({"conv", "dense", "both"}))
      ->capture_default_str();
  app.add_option("--runs", runs, "training runs per architecture")->capture_default_str();
  app.add_option("--epochs", epochs, "epochs per training attempt")->capture_default_str();
  app.add_option("--lr", lr, "learning rate (default 1.0 identity, 0.1 rule)");
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--max-restarts", max_restarts, "restart budget per rule run")
      ->capture_default_str();
  app.add_option("--format", format, "csv | json | md")
      ->check(CLI::IsMember({"csv", "json", "md"}))
      ->capture_default_str();
  app.add_option("--out", out, "report path (default stdout)");
  app.add_option("--filter-width", filter_width, "identity conv filter width (odd)")
      ->capture_default_str();
  app.add_option("--export-dataset", export_dataset, "also write the dataset CSV here");
  app.add_option("--jobs", jobs, "worker threads; output does not depend on it")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw CliUsageError(e.what());
  }

  const TaskId task = experiment == "identity" ? TaskId::identity : TaskId::rule;
  ExperimentSpec spec = default_spec(task);
  if (arch == "conv") {
    spec.architectures = {ArchKind::conv};
  } else if (arch == "dense") {
    spec.architectures = {ArchKind::dense};
  }
  spec.runs = runs;
  spec.train.epochs = epochs;
  if (lr) spec.train.learning_rate = *lr;
  spec.train.seed = seed;
  spec.train.max_restarts = max_restarts;
  spec.network.filter_width = filter_width;
  if (filter_width == 0 || filter_width % 2 == 0) {
    throw ParameterError("--filter-width must be odd, got " + std::to_string(filter_width));
  }
  static const std::map<std::string, OutputFormat> formats{
      {"csv", OutputFormat::csv}, {"json", OutputFormat::json}, {"md", OutputFormat::markdown}};
  spec.format = formats.at(format);
  if (!out.empty()) spec.out_path = out;
  if (!export_dataset.empty()) spec.export_dataset = export_dataset;
  if (jobs == 0) throw ParameterError("--jobs must be >= 1");
  spec.workers = jobs;
  spec.validate();
  return spec;
}

inline ExperimentSpec parse_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"symnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace symnet
