#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acx/io.hpp"

namespace acx::cli {

struct ExperimentConfig {
  std::string task;  // integrability | levi | lifts | scaling | disc | kobayashi | all
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  nlohmann::json inputs;
  std::vector<ExperimentConfig> children;  // for task = all
  std::filesystem::path source;
};

const std::map<std::string, double>& default_tolerances();
// validates the schema; throws Error(InvalidSpec) with the offending field
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& source = {});
ExperimentConfig load_config(const std::filesystem::path& path);
// "KEY=VAL" overrides; unknown keys and nonpositive values are rejected
void apply_tolerance_override(ExperimentConfig& cfg, const std::string& assignment);
void apply_seed(ExperimentConfig& cfg, std::uint64_t seed);

struct Series {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Report {
  std::string task;
  std::string name;  // file prefix; the task unless run from a suite
  bool pass = false;
  nlohmann::json summary;
  CsvTable detail;
  std::vector<Series> series;  // the first one is the default plot
  std::map<std::string, std::string> extra_files;
};

// errors raised by the pipelines propagate; input problems carry InvalidSpec or DimensionMismatch
std::vector<Report> run(const ExperimentConfig& cfg);
std::string emit_plot_data(const Report& report, const std::string& kind);
// <name>_summary.json, <name>_detail.csv, <name>_plot.txt
void write_report(const Report& report, const std::filesystem::path& dir);

// maps a subcommand name to its task
std::string task_for_subcommand(const std::string& sub);

}  // namespace acx::cli
