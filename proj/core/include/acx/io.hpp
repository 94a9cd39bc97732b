#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace acx {

// shortest round-trip decimal form; identical across runs
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
  void add_row(std::vector<std::string> cells);
  std::string to_string() const;
};

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
// two columns with a commented header
std::string plot_text(const std::string& x_label, const std::string& y_label, const std::vector<double>& x,
                      const std::vector<double>& y);

}  // namespace acx
