#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "zeno/observables.hpp"

namespace zeno::io {

/// Plain CSV with a header row; numbers printed with 17 significant digits so
/// identical inputs give byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);

  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

std::string format_double(double v);

/// Column order of timeseries.csv. Bump timeseries_csv_version when it changes.
inline constexpr int timeseries_csv_version = 1;
const std::vector<std::string>& timeseries_columns();
std::vector<double> timeseries_row(const ObservableRecord& r);

void write_timeseries(const std::filesystem::path& path, std::span<const ObservableRecord> records);

}  // namespace zeno::io
