#include "zeno/io/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace zeno::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : path_(path), out_(path), columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_) throw std::logic_error("CsvWriter: row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << '\n';
  if (!out_) throw std::runtime_error("write failed: " + path_.string());
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw std::runtime_error("write failed: " + path_.string());
}

const std::vector<std::string>& timeseries_columns() {
  static const std::vector<std::string> cols{"t_us",         "trace",          "E_kin_MHz",     "E_pot_MHz",
                                             "pop_rep",      "pop_att",        "P_loc_mean",    "coherence_norm",
                                             "absorbed_norm", "gamma_t_MHz",   "coherence_frobenius", "purity"};
  return cols;
}

std::vector<double> timeseries_row(const ObservableRecord& r) {
  return {r.t,       r.trace,           r.kinetic_energy, r.potential_energy, r.pop_rep,  r.pop_att,
          r.local_purity_mean, r.coherence_norm, r.absorbed_norm, r.gamma, r.coherence_frobenius, r.purity};
}

void write_timeseries(const std::filesystem::path& path, std::span<const ObservableRecord> records) {
  CsvWriter w(path, timeseries_columns());
  for (const auto& r : records) w.row(timeseries_row(r));
  w.close();
}

}  // namespace zeno::io
