// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/property_suites.hpp"
#include "symnet/harness/dataset_export.hpp"
#include "symnet/harness/experiment.hpp"
#include "symnet/harness/report.hpp"

namespace {

using namespace symnet;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExperimentReport run_default(TaskId task, ArchKind kind) {
  ExperimentSpec spec = default_spec(task);
  spec.architectures = {kind};
  return run_experiment(spec);
}

// 1. Identity, convolutional: 100% / 100% over 100 runs, under 30 s.
Outcome identity_conv() {
  Outcome o;
  const auto start = Clock::now();
  const auto arch = run_default(TaskId::identity, ArchKind::conv).architectures[0];
  const double secs = seconds_since(start);
  o.require(arch.runs.size() == 100, "100 runs");
  o.require(arch.mean_train_accuracy == 1.0, "mean train == 100%");
  o.require(arch.mean_test_accuracy == 1.0, "mean test == 100%");
  o.require(secs < 30.0, "runtime < 30 s");
  o.note("train=" + fmt("%.2f%%", 100 * arch.mean_train_accuracy) +
         " test=" + fmt("%.2f%%", 100 * arch.mean_test_accuracy) + " time=" + fmt("%.1fs", secs));
  return o;
}

// 2. Identity, unconstrained: 100% train, test in [0%, 40%] (< 50%), and the
//    input-5 -> output-5 weight untouched by training in every run.
Outcome identity_dense() {
  Outcome o;
  const ExperimentSpec spec = [] {
    auto s = default_spec(TaskId::identity);
    s.architectures = {ArchKind::dense};
    return s;
  }();
  const auto arch = run_experiment(spec).architectures[0];
  o.require(arch.mean_train_accuracy == 1.0, "mean train == 100%");
  o.require(arch.mean_test_accuracy < 0.5, "mean test < 50%");
  o.require(arch.mean_test_accuracy >= 0.0 && arch.mean_test_accuracy <= 0.40,
            "mean test in [0%, 40%]");

  const Dataset data = make_identity_dataset();
  double worst_drift = 0.0;
  for (const auto& run : arch.runs) {
    SeededRng rng(run.seed);
    const Network initial = build_network(Architecture::exp1_dense, rng, spec.network);
    const auto trained = train(initial, data.train, spec.train, rng);
    const double before = std::get<DenseLayer>(initial.stages()[0]).weights.at(4, 4);
    const double after = std::get<DenseLayer>(trained.network.stages()[0]).weights.at(4, 4);
    worst_drift = std::max(worst_drift, std::abs(after - before));
    o.require(trained.train_accuracy == run.train_accuracy, "retrain reproduces stored run");
  }
  o.require(worst_drift <= 1e-12, "w[5,5] unchanged within 1e-12");
  o.note("train=" + fmt("%.2f%%", 100 * arch.mean_train_accuracy) +
         " test=" + fmt("%.2f%%", 100 * arch.mean_test_accuracy) +
         " max|dw55|=" + fmt("%.3g", worst_drift));
  return o;
}

// 3. Rule, convolutional: 100% / 100%, every run correct on all 4 test
//    sequences, under 60 s.
Outcome rule_conv() {
  Outcome o;
  const auto start = Clock::now();
  const auto arch = run_default(TaskId::rule, ArchKind::conv).architectures[0];
  const double secs = seconds_since(start);
  int restarts = 0;
  bool every_run_perfect = true;
  for (const auto& run : arch.runs) {
    restarts += run.restarts;
    every_run_perfect = every_run_perfect && !run.failed && run.test_accuracy == 1.0;
  }
  o.require(arch.runs.size() == 100, "100 runs");
  o.require(arch.failed_runs == 0, "no failed runs");
  o.require(arch.mean_train_accuracy == 1.0, "mean train == 100%");
  o.require(arch.mean_test_accuracy == 1.0, "mean test == 100%");
  o.require(every_run_perfect, "all 4 test sequences correct in every run");
  o.require(secs < 60.0, "runtime < 60 s");
  o.note("train=" + fmt("%.2f%%", 100 * arch.mean_train_accuracy) +
         " test=" + fmt("%.2f%%", 100 * arch.mean_test_accuracy) +
         " restarts=" + std::to_string(restarts) + " time=" + fmt("%.1fs", secs));
  return o;
}

// 4. Rule, unconstrained: 100% train (restarts allowed), test in [25%, 70%].
Outcome rule_dense() {
  Outcome o;
  const auto arch = run_default(TaskId::rule, ArchKind::dense).architectures[0];
  int restarts = 0;
  for (const auto& run : arch.runs) restarts += run.restarts;
  o.require(arch.mean_train_accuracy == 1.0, "mean train == 100%");
  o.require(arch.mean_test_accuracy >= 0.25 && arch.mean_test_accuracy <= 0.70,
            "mean test in [25%, 70%]");
  o.note("train=" + fmt("%.2f%%", 100 * arch.mean_train_accuracy) +
         " test=" + fmt("%.2f%%", 100 * arch.mean_test_accuracy) +
         " failed=" + std::to_string(arch.failed_runs) + " restarts=" + std::to_string(restarts));
  return o;
}

// 5. Analytic vs central-difference gradients (step 1e-5), 100 instances
//    per layer and loss, relative error <= 1e-6, under 10 s.
Outcome gradient_suite() {
  using namespace symnet::testing;
  Outcome o;
  const auto start = Clock::now();
  const std::vector<SuiteResult> results{
      dense_gradient_suite(501, 100),          conv_gradient_suite(502, 100),
      pool_gradient_suite(503, 100),           activation_gradient_suite(504, 100),
      squared_error_gradient_suite(505, 100),  cross_entropy_gradient_suite(506, 100)};
  const double secs = seconds_since(start);
  double worst = 0.0;
  for (const auto& r : results) {
    o.require(r.cases >= 100, r.name + " >= 100 instances");
    o.require(r.worst <= 1e-6, r.name + " rel err " + fmt("%.3g", r.worst));
    worst = std::max(worst, r.worst);
  }
  o.require(secs < 10.0, "runtime < 10 s");
  o.note("worst rel err=" + fmt("%.3g", worst) + " time=" + fmt("%.2fs", secs));
  return o;
}

// 6. Equivariance / invariance properties, >= 1000 cases each, within 1e-12,
//    under 10 s.
Outcome symmetry_suite() {
  using namespace symnet::testing;
  Outcome o;
  const auto start = Clock::now();
  const std::vector<SuiteResult> results{
      conv_shift_equivariance_padded(601, 1000), conv_shift_equivariance_unpadded(602, 1000),
      width_one_permutation_equivariance(603, 1000), pool_permutation_invariance(604, 1000),
      rule_conv_word_permutation_invariance(605, 1000)};
  const double secs = seconds_since(start);
  double worst = 0.0;
  for (const auto& r : results) {
    o.require(r.cases >= 1000, r.name + " >= 1000 cases");
    o.require(r.worst <= 1e-12, r.name + " max diff " + fmt("%.3g", r.worst));
    worst = std::max(worst, r.worst);
  }
  o.require(secs < 10.0, "runtime < 10 s");
  o.note(std::to_string(results.size()) + " properties, max diff=" + fmt("%.3g", worst) +
         " time=" + fmt("%.2fs", secs));
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 7. Generated datasets equal the checked-in golden files.
Outcome dataset_golden() {
  Outcome o;
  const Dataset identity = make_identity_dataset();
  const Dataset rule = make_rule_dataset();
  const std::string dir = SYMNET_GOLDEN_DIR;
  o.require(dataset_to_csv(identity) == read_file(dir + "/identity_dataset.csv"),
            "identity golden file");
  o.require(dataset_to_csv(rule) == read_file(dir + "/rule_dataset.csv"), "rule golden file");
  o.require(identity.train.size() == 16 && identity.test.size() == 16, "identity 16/16");
  o.require(rule.train.size() == 32 && rule.test.size() == 4, "rule 32/4");

  bool identity_disjoint = true;
  for (const auto& ex : identity.train) identity_disjoint &= ex.input[4] == 0.0;
  for (const auto& ex : identity.test) identity_disjoint &= ex.input[4] == 1.0;
  o.require(identity_disjoint, "identity last digit 0 in train, 1 in test");

  std::set<std::size_t> train_rows, test_rows;
  for (const auto& ex : rule.train)
    for (std::size_t r = 0; r < 12; ++r)
      for (std::size_t t = 0; t < 3; ++t)
        if (ex.input.at(r, t) != 0.0) train_rows.insert(r);
  for (const auto& ex : rule.test)
    for (std::size_t r = 0; r < 12; ++r)
      for (std::size_t t = 0; t < 3; ++t)
        if (ex.input.at(r, t) != 0.0) test_rows.insert(r);
  bool rule_disjoint = true;
  for (auto r : test_rows) rule_disjoint &= train_rows.count(r) == 0;
  o.require(rule_disjoint, "rule train/test word rows disjoint");
  o.note("identity 16/16, rule 32/4, feature sets disjoint");
  return o;
}

// 8. Byte-identical CSV on rerun, serial and parallel.
Outcome determinism() {
  Outcome o;
  ExperimentSpec identity = default_spec(TaskId::identity);
  identity.runs = 20;
  ExperimentSpec rule = default_spec(TaskId::rule);
  rule.runs = 10;
  for (ExperimentSpec spec : {identity, rule}) {
    const std::string name(to_string(spec.experiment));
    spec.workers = 1;
    const std::string first = render_csv(run_experiment(spec));
    const std::string second = render_csv(run_experiment(spec));
    spec.workers = 4;
    const std::string parallel = render_csv(run_experiment(spec));
    o.require(first == second, name + " rerun identical");
    o.require(first == parallel, name + " 4-worker run identical");
  }
  o.note("identity x20 and rule x10 runs, serial/serial/4 workers");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 identity/convolutional 100%/100%", identity_conv},
      {"AC2 identity/unconstrained 100%/<=40% + frozen w55", identity_dense},
      {"AC3 rule/convolutional 100%/100%", rule_conv},
      {"AC4 rule/unconstrained 100%/[25%,70%]", rule_dense},
      {"AC5 gradient suite vs finite differences", gradient_suite},
      {"AC6 symmetry suite", symmetry_suite},
      {"AC7 dataset golden files", dataset_golden},
      {"AC8 determinism (serial and parallel)", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s -- %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
