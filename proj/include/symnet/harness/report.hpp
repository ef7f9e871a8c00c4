#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>
#include <string_view>

#include <json.hpp>

#include "symnet/errors.hpp"
#include "symnet/harness/experiment.hpp"

namespace symnet {

inline constexpr std::string_view kCsvHeader =
    "experiment,architecture,run_index,seed,restarts,train_accuracy,test_accuracy,final_loss";
inline constexpr std::string_view kCsvSummaryHeader =
    "experiment,architecture,runs,failed_runs,mean_train_accuracy,mean_test_accuracy";

inline std::string_view to_string(LossKind k) {
  return k == LossKind::squared_error ? "squared_error" : "cross_entropy";
}

inline std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::markdown: return "md";
  }
  return "?";
}

namespace detail {

template <typename... Args>
std::string sprintf_string(const char* fmt, Args... args) {
  char small[64];
  const int n = std::snprintf(small, sizeof small, fmt, args...);
  if (n < static_cast<int>(sizeof small)) return std::string(small, static_cast<std::size_t>(n));
  std::vector<char> big(static_cast<std::size_t>(n) + 1);
  std::snprintf(big.data(), big.size(), fmt, args...);
  return std::string(big.data(), static_cast<std::size_t>(n));
}

inline std::string fixed6(double v) { return sprintf_string("%.6f", v); }
inline std::string exact(double v) { return sprintf_string("%.17g", v); }
inline std::string percent(double v) { return sprintf_string("%.1f%%", 100.0 * v); }

inline TaskId task_from_string(std::string_view s) {
  if (s == "identity") return TaskId::identity;
  if (s == "rule") return TaskId::rule;
  throw ParameterError("unknown experiment '" + std::string(s) + "'");
}

inline ArchKind arch_from_string(std::string_view s) {
  if (s == "conv") return ArchKind::conv;
  if (s == "dense") return ArchKind::dense;
  throw ParameterError("unknown architecture '" + std::string(s) + "'");
}

inline LossKind loss_from_string(std::string_view s) {
  if (s == "squared_error") return LossKind::squared_error;
  if (s == "cross_entropy") return LossKind::cross_entropy;
  throw ParameterError("unknown loss '" + std::string(s) + "'");
}

}  // namespace detail

/// One row per run, then a blank line and one summary row per architecture.
inline std::string render_csv(const ExperimentReport& report) {
  const std::string task(to_string(report.experiment));
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& arch : report.architectures) {
    const std::string name(to_string(arch.kind));
    for (const auto& run : arch.runs) {
      out += task + ',' + name + ',' + std::to_string(run.run_index) + ',' +
             std::to_string(run.seed) + ',' + std::to_string(run.restarts) + ',' +
             detail::fixed6(run.train_accuracy) + ',' + detail::fixed6(run.test_accuracy) + ',' +
             detail::exact(run.final_loss) + '\n';
    }
  }
  out += '\n';
  out += kCsvSummaryHeader;
  out += '\n';
  for (const auto& arch : report.architectures) {
    out += task + ',' + std::string(to_string(arch.kind)) + ',' +
           std::to_string(arch.runs.size()) + ',' + std::to_string(arch.failed_runs) + ',' +
           detail::fixed6(arch.mean_train_accuracy) + ',' +
           detail::fixed6(arch.mean_test_accuracy) + '\n';
  }
  return out;
}

inline std::string render_markdown(const ExperimentReport& report) {
  const bool identity = report.experiment == TaskId::identity;
  std::string out = identity ? "# Identity learning\n\n" : "# Rule learning (ABA / ABB)\n\n";
  out += "| Architecture | Training Accuracy | Test Accuracy | Failed Runs |\n";
  out += "|:--|--:|--:|--:|\n";
  for (const auto& arch : report.architectures) {
    out += "| " + std::string(display_name(arch.kind)) + " | " +
           detail::percent(arch.mean_train_accuracy) + " | " +
           detail::percent(arch.mean_test_accuracy) + " | " + std::to_string(arch.failed_runs) +
           "/" + std::to_string(arch.runs.size()) + " |\n";
  }
  const auto& c = report.config;
  out += "\n## Configuration\n\n| Setting | Value |\n|:--|:--|\n";
  out += "| runs | " + std::to_string(c.runs) + " |\n";
  out += "| epochs | " + std::to_string(c.epochs) + " |\n";
  out += "| learning_rate | " + detail::sprintf_string("%g", c.learning_rate) + " |\n";
  out += "| loss | " + std::string(to_string(c.loss)) + " |\n";
  out += "| restart_on_failure | " + std::string(c.restart_on_failure ? "true" : "false") + " |\n";
  out += "| max_restarts | " + std::to_string(c.max_restarts) + " |\n";
  out += "| master_seed | " + std::to_string(c.master_seed) + " |\n";
  if (identity) out += "| filter_width | " + std::to_string(c.filter_width) + " |\n";
  out += "| init_half_width | " + detail::sprintf_string("%g", c.init_half_width) + " |\n";
  out += "\n" + report.version + "\n";
  return out;
}

inline nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["version"] = report.version;
  j["experiment"] = to_string(report.experiment);
  const auto& c = report.config;
  j["config"] = {{"runs", c.runs},
                 {"epochs", c.epochs},
                 {"learning_rate", c.learning_rate},
                 {"max_restarts", c.max_restarts},
                 {"restart_on_failure", c.restart_on_failure},
                 {"loss", to_string(c.loss)},
                 {"master_seed", c.master_seed},
                 {"filter_width", c.filter_width},
                 {"init_half_width", c.init_half_width}};
  j["architectures"] = nlohmann::json::array();
  for (const auto& arch : report.architectures) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : arch.runs) {
      runs.push_back({{"run_index", r.run_index},
                      {"seed", r.seed},
                      {"restarts", r.restarts},
                      {"train_accuracy", r.train_accuracy},
                      {"test_accuracy", r.test_accuracy},
                      {"final_loss", r.final_loss},
                      {"failed", r.failed}});
    }
    j["architectures"].push_back({{"architecture", to_string(arch.kind)},
                                  {"mean_train_accuracy", arch.mean_train_accuracy},
                                  {"mean_test_accuracy", arch.mean_test_accuracy},
                                  {"failed_runs", arch.failed_runs},
                                  {"runs", std::move(runs)}});
  }
  return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
  try {
    ExperimentReport report;
    report.version = j.at("version").get<std::string>();
    report.experiment = detail::task_from_string(j.at("experiment").get<std::string>());
    const auto& c = j.at("config");
    report.config = {c.at("runs").get<int>(),
                     c.at("epochs").get<int>(),
                     c.at("learning_rate").get<double>(),
                     c.at("max_restarts").get<int>(),
                     c.at("restart_on_failure").get<bool>(),
                     detail::loss_from_string(c.at("loss").get<std::string>()),
                     c.at("master_seed").get<std::uint64_t>(),
                     c.at("filter_width").get<std::size_t>(),
                     c.at("init_half_width").get<double>()};
    for (const auto& a : j.at("architectures")) {
      ArchitectureReport arch;
      arch.kind = detail::arch_from_string(a.at("architecture").get<std::string>());
      arch.mean_train_accuracy = a.at("mean_train_accuracy").get<double>();
      arch.mean_test_accuracy = a.at("mean_test_accuracy").get<double>();
      arch.failed_runs = a.at("failed_runs").get<int>();
      for (const auto& r : a.at("runs")) {
        arch.runs.push_back({r.at("run_index").get<int>(), r.at("seed").get<std::uint64_t>(),
                             r.at("restarts").get<int>(), r.at("train_accuracy").get<double>(),
                             r.at("test_accuracy").get<double>(), r.at("final_loss").get<double>(),
                             r.at("failed").get<bool>()});
      }
      report.architectures.push_back(std::move(arch));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed report json: ") + e.what());
  }
}

inline std::string render_json(const ExperimentReport& report) {
  return to_json(report).dump(2) + "\n";
}

inline std::string render_report(const ExperimentReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return render_csv(report);
    case OutputFormat::json: return render_json(report);
    case OutputFormat::markdown: return render_markdown(report);
  }
  return {};
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline void write_report(const ExperimentReport& report, OutputFormat format,
                         const std::string& path) {
  write_text_file(path, render_report(report, format));
}

}  // namespace symnet
