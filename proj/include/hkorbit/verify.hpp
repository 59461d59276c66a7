#pragma once

#include "hkorbit/io.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hkorbit::verify {

struct RunConfig {
  std::string case_name = "grassmannian";
  int n = 4;
  int k = 2;
  double kappa = 1.0;
  int trials = 32;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;  // overrides of the registry defaults
  std::vector<std::string> suites;           // empty: every suite
  std::string out;
  int jobs = 1;

  /// Throws InvalidArgument naming every bad field.
  void validate() const;
  std::vector<std::string> selected_suites() const;
  double tolerance(const std::string& check) const;
};

/// One named residual, compared as max over trials <= tolerance.
struct CheckSpec {
  std::string suite;
  std::string name;
  double tolerance;
  std::string description;
};

const std::vector<std::string>& suite_names();
const std::vector<CheckSpec>& check_registry();
const CheckSpec& find_check(const std::string& name);

struct Measurement {
  std::string name;
  double value;
};

struct CheckResult {
  std::string name;
  double max = 0;
  double mean = 0;
  double tolerance = 0;
  int samples = 0;
  bool pass = true;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  std::vector<std::string> errors;  // "trial <i>: <message>"
  double seconds = 0;
  bool pass = true;
};

struct Report {
  RunConfig config;
  std::vector<SuiteResult> suites;
  double seconds = 0;
  bool pass = true;
};

/// splitmix64(master ^ trial): independent stream per trial.
std::uint64_t trial_seed(std::uint64_t master, int trial);

/// Measurements of one suite for one trial.
std::vector<Measurement> run_suite_trial(const std::string& suite, const RunConfig& config,
                                         std::uint64_t seed);

Report run_verify(const RunConfig& config);

io::json config_json(const RunConfig& config);
io::json report_json(const Report& report, bool timings = true);

/// Suite, check, max, mean, tolerance and verdict, one line per check.
std::string residual_table(const Report& report);

/// Evaluation bundle at a point given as JSON (orbit point or tangent bundle point).
io::json run_metric_at(const RunConfig& config, const io::json& point);

/// CSV sweep over ascending n for a fixed rank-one pattern.
std::string run_convergence(const RunConfig& config, const std::vector<int>& n_list,
                            double amplitude = 0.5);

}  // namespace hkorbit::verify
