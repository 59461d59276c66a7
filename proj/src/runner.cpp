#include "hkorbit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace hkorbit::verify {

namespace {

using Clock = std::chrono::steady_clock;

struct TrialOutcome {
  std::vector<Measurement> values;
  std::string error;
  double seconds = 0;
};

/// Runs task(i) for i in [0, count) on `jobs` threads; results are indexed, so
/// the schedule cannot change them.
template <typename Task>
void parallel_for(int count, int jobs, Task&& task) {
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) task(i);
  };
  const int threads = std::max(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Report run_verify(const RunConfig& config) {
  config.validate();
  const auto start = Clock::now();
  const auto suites = config.selected_suites();
  const int trials = config.trials;
  const int tasks = int(suites.size()) * trials;

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(tasks));
  parallel_for(tasks, config.jobs, [&](int index) {
    const auto& suite = suites[std::size_t(index / trials)];
    const int trial = index % trials;
    auto& out = outcomes[std::size_t(index)];
    const auto t0 = Clock::now();
    try {
      // suites get distinct streams from the same trial seed
      std::uint64_t seed = trial_seed(config.seed, trial);
      for (char ch : suite) seed = trial_seed(seed, int(static_cast<unsigned char>(ch)));
      out.values = run_suite_trial(suite, config, seed);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  });

  Report report;
  report.config = config;
  for (std::size_t s = 0; s < suites.size(); ++s) {
    SuiteResult sr;
    sr.name = suites[s];
    std::vector<CheckResult> checks;
    for (const auto& spec : check_registry())
      if (spec.suite == sr.name) {
        CheckResult cr;
        cr.name = spec.name;
        cr.tolerance = config.tolerance(spec.name);
        checks.push_back(cr);
      }
    auto find = [&](const std::string& name) -> CheckResult& {
      for (auto& c : checks)
        if (c.name == name) return c;
      throw Error(ErrorKind::InvalidArgument, "suite " + sr.name + " produced unregistered check " + name);
    };
    std::vector<double> sums(checks.size(), 0.0);
    for (int t = 0; t < trials; ++t) {
      const auto& out = outcomes[s * std::size_t(trials) + std::size_t(t)];
      sr.seconds += out.seconds;
      const double failed = out.error.empty() ? 0.0 : 1.0;
      if (!out.error.empty()) sr.errors.push_back("trial " + std::to_string(t) + ": " + out.error);
      auto record = [&](const std::string& name, double value) {
        CheckResult& c = find(name);
        c.max = c.samples == 0 ? value : std::max(c.max, value);
        sums[std::size_t(&c - checks.data())] += value;
        ++c.samples;
      };
      record(sr.name + "_errors", failed);
      for (const auto& m : out.values) record(m.name, m.value);
    }
    for (std::size_t i = 0; i < checks.size(); ++i) {
      auto& c = checks[i];
      c.mean = c.samples > 0 ? sums[i] / c.samples : 0.0;
      c.pass = c.samples == 0 || c.max <= c.tolerance;
      sr.pass = sr.pass && c.pass;
    }
    sr.checks = std::move(checks);
    report.pass = report.pass && sr.pass;
    report.suites.push_back(std::move(sr));
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

io::json config_json(const RunConfig& config) {
  io::json j;
  j["case"] = config.case_name;
  j["n"] = config.n;
  j["k"] = config.k;
  j["kappa"] = config.kappa;
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  io::json tol = io::json::object();
  for (const auto& [name, value] : config.tolerances) tol[name] = value;
  j["tolerances"] = tol;
  j["suites"] = config.selected_suites();
  j["out"] = config.out;
  return j;
}

io::json report_json(const Report& report, bool timings) {
  io::json j;
  j["version"] = HKORBIT_VERSION;
  j["config"] = config_json(report.config);
  j["pass"] = report.pass;
  io::json suites = io::json::array();
  for (const auto& s : report.suites) {
    io::json js;
    js["name"] = s.name;
    js["pass"] = s.pass;
    io::json checks = io::json::array();
    for (const auto& c : s.checks) {
      io::json jc;
      jc["name"] = c.name;
      jc["max"] = c.max;
      jc["mean"] = c.mean;
      jc["tolerance"] = c.tolerance;
      jc["samples"] = c.samples;
      jc["pass"] = c.pass;
      checks.push_back(std::move(jc));
    }
    js["residuals"] = std::move(checks);
    js["errors"] = s.errors;
    if (timings) js["seconds"] = s.seconds;
    suites.push_back(std::move(js));
  }
  j["suites"] = std::move(suites);
  if (timings) j["seconds"] = report.seconds;
  return j;
}

std::string residual_table(const Report& report) {
  std::ostringstream out;
  for (const auto& s : report.suites) {
    for (const auto& c : s.checks)
      out << s.name << ' ' << c.name << ' ' << format_double(c.max) << ' ' << format_double(c.mean)
          << ' ' << format_double(c.tolerance) << ' ' << (c.pass ? "pass" : "FAIL") << '\n';
    for (const auto& e : s.errors) out << s.name << " error " << e << '\n';
  }
  return out.str();
}

}  // namespace hkorbit::verify
