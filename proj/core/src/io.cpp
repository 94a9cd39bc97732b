#include "acx/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "acx/errors.hpp"

namespace acx {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  for (double v : values) cells.push_back(format_number(v));
  rows.push_back(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

std::string CsvTable::to_string() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidSpec, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidSpec, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::InvalidSpec, "cannot write " + path.string());
  out << text;
}

std::string plot_text(const std::string& x_label, const std::string& y_label, const std::vector<double>& x,
                      const std::vector<double>& y) {
  require(x.size() == y.size(), ErrorCode::DimensionMismatch, "plot columns differ in length");
  std::ostringstream os;
  os << "# " << x_label << ' ' << y_label << '\n';
  for (size_t i = 0; i < x.size(); ++i) os << format_number(x[i]) << ' ' << format_number(y[i]) << '\n';
  return os.str();
}

}  // namespace acx
