// Command-line runner: symnet --experiment identity|rule [options]

#include <iostream>

#include "symnet/harness/cli.hpp"
#include "symnet/harness/dataset_export.hpp"
#include "symnet/harness/experiment.hpp"
#include "symnet/harness/report.hpp"

int main(int argc, char** argv) {
  using namespace symnet;
  ExperimentSpec spec;
  try {
    spec = parse_cli(argc, argv);
  } catch (const HelpRequested& help) {
    std::cout << help.what();
    return kExitOk;
  } catch (const CliUsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (spec.export_dataset) {
      const Dataset ds =
          spec.experiment == TaskId::identity ? make_identity_dataset() : make_rule_dataset();
      write_dataset_csv(ds, *spec.export_dataset);
    }
    const ExperimentReport report = run_experiment(spec);
    if (spec.out_path) {
      write_report(report, spec.format, *spec.out_path);
    } else {
      std::cout << render_report(report, spec.format);
    }
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
