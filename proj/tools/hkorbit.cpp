#include "hkorbit/io.hpp"
#include "hkorbit/verify.hpp"

#include "CLI11.hpp"

#include <iostream>

using hkorbit::verify::RunConfig;

namespace {

void add_context_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--n", cfg.n, "matrix dimension")->capture_default_str();
  cmd->add_option("--k", cfg.k, "rank of the positive block")->capture_default_str();
  cmd->add_option("--kappa", cfg.kappa, "eigenvalue scale of D")->capture_default_str();
  cmd->add_option("--out", cfg.out, "output file (stdout when empty)");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    hkorbit::io::write_text_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of the hyperkahler structure on complexified Grassmannian orbits"};
  app.set_version_flag("--version", std::string(HKORBIT_VERSION));
  app.require_subcommand(1);

  RunConfig cfg;

  auto* verify = app.add_subcommand("verify", "run verification suites and write a JSON report");
  add_context_options(verify, cfg);
  verify->add_option("--trials", cfg.trials, "random trials per suite")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  verify->add_option("--suites", cfg.suites, "comma-separated subset of suites")->delimiter(',');
  verify->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
  bool table = false;
  verify->add_flag("--table", table, "also print the residual table to stderr");
  const auto& registry = hkorbit::verify::check_registry();
  std::vector<double> tol_values(registry.size(), -1.0);
  for (std::size_t i = 0; i < registry.size(); ++i)
    verify->add_option("--tol-" + registry[i].name, tol_values[i], registry[i].description)
        ->group("Tolerances");

  std::string point_path;
  auto* metric = app.add_subcommand("metric", "evaluate K, g, the quaternionic residuals and A_V at a point");
  add_context_options(metric, cfg);
  metric->add_option("--point", point_path, "point file (JSON)")->required();

  std::vector<int> n_list;
  double amplitude = 0.5;
  auto* convergence = app.add_subcommand("convergence", "sweep n for a fixed rank-one pattern (CSV)");
  convergence->add_option("--n-list", n_list, "ascending comma-separated n values")
      ->delimiter(',')
      ->required();
  convergence->add_option("--k", cfg.k, "rank of the positive block")->capture_default_str();
  convergence->add_option("--kappa", cfg.kappa, "eigenvalue scale of D")->capture_default_str();
  convergence->add_option("--amplitude", amplitude, "fiber coordinate a = amplitude x1")
      ->capture_default_str();
  convergence->add_option("--out", cfg.out, "output file (stdout when empty)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      for (std::size_t i = 0; i < registry.size(); ++i)
        if (verify->count("--tol-" + registry[i].name) > 0) cfg.tolerances[registry[i].name] = tol_values[i];
      cfg.validate();
      const auto report = hkorbit::verify::run_verify(cfg);
      emit(cfg.out, hkorbit::verify::report_json(report).dump(2) + "\n");
      if (table) std::cerr << hkorbit::verify::residual_table(report);
      std::cerr << (report.pass ? "PASS" : "FAIL") << " (" << report.seconds << " s)\n";
      return report.pass ? 0 : 1;
    }
    if (*metric) {
      const auto record = hkorbit::verify::run_metric_at(cfg, hkorbit::io::read_json_file(point_path));
      emit(cfg.out, record.dump(2) + "\n");
      return 0;
    }
    if (*convergence) {
      emit(cfg.out, hkorbit::verify::run_convergence(cfg, n_list, amplitude));
      return 0;
    }
  } catch (const hkorbit::Error& e) {
    std::cerr << "error [" << hkorbit::to_string(e.kind()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
