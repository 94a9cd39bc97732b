#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acx/cli.hpp"
#include "acx/errors.hpp"

namespace {

bool is_input_error(acx::ErrorCode c) {
  return c == acx::ErrorCode::InvalidSpec || c == acx::ErrorCode::DimensionMismatch ||
         c == acx::ErrorCode::UnknownSeries;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acx: almost complex geometry experiments"};
  app.require_subcommand(1);
  std::string config, out = "out";
  std::vector<std::string> tols;
  long long seed = -1;
  for (const char* name : {"check-integrability", "levi", "lift-check", "scale", "disc-solve", "kobayashi", "all"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " pipeline");
    sub->add_option("--config", config, "experiment config (JSON)")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "override the config seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", tols, "tolerance override KEY=VAL (repeatable)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  std::vector<acx::cli::Report> reports;
  try {
    acx::cli::ExperimentConfig cfg = acx::cli::load_config(config);
    const std::string task = acx::cli::task_for_subcommand(sub);
    acx::require(cfg.task == task, acx::ErrorCode::InvalidSpec,
                 "config task '" + cfg.task + "' does not match subcommand '" + sub + "'");
    if (seed >= 0) acx::cli::apply_seed(cfg, static_cast<std::uint64_t>(seed));
    for (const auto& t : tols) acx::cli::apply_tolerance_override(cfg, t);
    reports = acx::cli::run(cfg);
  } catch (const acx::Error& e) {
    std::cerr << "acx: " << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acx: " << e.what() << '\n';
    return 2;
  }

  bool pass = true;
  for (const auto& r : reports) {
    acx::cli::write_report(r, out);
    std::cout << r.name << ": " << (r.pass ? "pass" : "FAIL") << '\n';
    pass = pass && r.pass;
  }
  return pass ? 0 : 1;
}
