#include "doctest.h"

#include "acx/cli.hpp"
#include "acx/errors.hpp"

using namespace acx;

TEST_CASE("plot data for an unknown series is an error") {
  cli::Report r;
  r.task = "disc";
  r.series.push_back({"steps", "iteration", "log10_step", {1.0, 2.0}, {-1.0, -2.0}});
  CHECK(cli::emit_plot_data(r, "steps") == "# iteration log10_step\n1 -1\n2 -2\n");
  try {
    cli::emit_plot_data(r, "nope");
    FAIL("expected UnknownSeries");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSeries);
  }
}

TEST_CASE("empty series gives only the header") {
  cli::Report r;
  r.series.push_back({"s", "x", "y", {}, {}});
  CHECK(cli::emit_plot_data(r, "s") == "# x y\n");
}

TEST_CASE("config parsing reports the missing field") {
  const auto bad = nlohmann::json::parse(R"({"task": "levi", "inputs": {}})");
  try {
    cli::parse_config(bad);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
    CHECK(std::string(e.what()).find("inputs.n") != std::string::npos);
  }
}

TEST_CASE("tolerance overrides accept known keys only") {
  cli::ExperimentConfig cfg = cli::parse_config(nlohmann::json::parse(R"({"task": "levi", "inputs": {"n": 2}})"));
  cli::apply_tolerance_override(cfg, "solver=1e-6");
  CHECK(cfg.tolerances.at("solver") == 1e-6);
  CHECK_THROWS_AS(cli::apply_tolerance_override(cfg, "bogus=1"), Error);
  CHECK_THROWS_AS(cli::apply_tolerance_override(cfg, "solver=-1"), Error);
}

TEST_CASE("subcommands map to tasks") {
  CHECK(cli::task_for_subcommand("check-integrability") == "integrability");
  CHECK(cli::task_for_subcommand("disc-solve") == "disc");
  CHECK(cli::task_for_subcommand("all") == "all");
}
