#include "ofdmrad/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ofdmrad::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("io: cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot read " + path);
  return in;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& field, const std::string& path) {
  try {
    std::size_t used = 0;
    const double value = std::stod(field, &used);
    if (used == 0) throw std::invalid_argument(field);
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error("io: bad numeric field '" + field + "' in " +
                             path);
  }
}

// Reads every non-empty row after the header into numeric fields.
std::vector<std::vector<double>> read_rows(const std::string& path,
                                           std::size_t expected_fields) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("io: empty file " + path);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line);
    if (fields.size() != expected_fields)
      throw std::runtime_error("io: wrong column count in " + path);
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& field : fields) row.push_back(parse_double(field, path));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("io: no data rows in " + path);
  return rows;
}

}  // namespace

void write_codes_csv(const PhaseCodeMatrix& codes, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "subcarrier,symbol,phase_rad\n";
  char line[96];
  for (int k = 0; k < codes.n_symbols(); ++k)
    for (int n = 0; n < codes.n_subcarriers(); ++n) {
      std::snprintf(line, sizeof(line), "%d,%d,%.17g\n", n, k,
                    codes.phase(n, k));
      out << line;
    }
}

PhaseCodeMatrix read_codes_csv(const std::string& path) {
  const auto rows = read_rows(path, 3);
  int max_n = 0;
  int max_k = 0;
  for (const auto& row : rows) {
    max_n = std::max(max_n, static_cast<int>(row[0]));
    max_k = std::max(max_k, static_cast<int>(row[1]));
  }
  const std::size_t expected =
      static_cast<std::size_t>(max_n + 1) * (max_k + 1);
  if (rows.size() != expected)
    throw std::runtime_error("io: incomplete code matrix in " + path);

  PhaseCodeMatrix codes(max_n + 1, max_k + 1);
  for (const auto& row : rows)
    codes.set_phase(static_cast<int>(row[0]), static_cast<int>(row[1]),
                    row[2]);
  return codes;
}

void write_weights_csv(std::span<const double> weights,
                       const std::string& path) {
  std::ofstream out = open_out(path);
  out << "subcarrier,weight\n";
  char line[64];
  for (std::size_t n = 0; n < weights.size(); ++n) {
    std::snprintf(line, sizeof(line), "%zu,%.17g\n", n, weights[n]);
    out << line;
  }
}

std::vector<double> read_weights_csv(const std::string& path) {
  const auto rows = read_rows(path, 2);
  std::vector<double> weights(rows.size(), 0.0);
  for (const auto& row : rows) {
    const auto n = static_cast<std::size_t>(row[0]);
    if (n >= weights.size())
      throw std::runtime_error("io: subcarrier index out of range in " + path);
    weights[n] = row[1];
  }
  return weights;
}

void write_mask_csv(std::span<const std::uint8_t> mask,
                    const std::string& path) {
  std::ofstream out = open_out(path);
  out << "subcarrier,active\n";
  for (std::size_t n = 0; n < mask.size(); ++n)
    out << n << ',' << (mask[n] ? 1 : 0) << '\n';
}

std::vector<std::uint8_t> read_mask_csv(const std::string& path) {
  const auto rows = read_rows(path, 2);
  std::vector<std::uint8_t> mask(rows.size(), 0);
  for (const auto& row : rows) {
    const auto n = static_cast<std::size_t>(row[0]);
    if (n >= mask.size())
      throw std::runtime_error("io: subcarrier index out of range in " + path);
    mask[n] = row[1] != 0.0 ? 1 : 0;
  }
  return mask;
}

void write_target_csv(const TargetModel& target, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "x_m,y_m,sqrt_sigma\n";
  char line[128];
  for (const auto& s : target.scatterers) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", s.x_m, s.y_m,
                  s.sqrt_sigma);
    out << line;
  }
}

TargetModel read_target_csv(const std::string& path) {
  TargetModel target;
  for (const auto& row : read_rows(path, 3))
    target.scatterers.push_back({row[0], row[1], row[2]});
  target.validate();
  return target;
}

void write_spectrum_csv(const ReflectivitySpectrum& spectrum,
                        const std::string& path) {
  std::ofstream out = open_out(path);
  out << "f_hz,re,im\n";
  char line[128];
  for (std::size_t n = 0; n < spectrum.values.size(); ++n) {
    std::snprintf(line, sizeof(line), "%.6f,%.17g,%.17g\n",
                  spectrum.carrier_hz + n * spectrum.spacing_hz,
                  spectrum.values[n].real(), spectrum.values[n].imag());
    out << line;
  }
}

void write_report_csv(const TwoStepReport& report, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "snr_gain_db,pmepr_random_median_db,pmepr_optimized_db,"
         "generations_run,converged\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%.4f,%.4f,%.4f,%d,%d\n",
                report.snr_gain_db, report.pmepr_random_median_db,
                report.pmepr_optimized_db, report.generations_run,
                report.converged ? 1 : 0);
  out << line;
}

}  // namespace ofdmrad::io
