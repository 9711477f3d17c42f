#include "wigsim/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {

// The format is defined little-endian; this implementation targets
// little-endian hosts and asserts so at compile time where possible.
static_assert(sizeof(double) == 8, "dump format requires 64-bit IEEE doubles");

void put_u16(std::ostream& out, std::uint16_t v) {
  const unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                              static_cast<unsigned char>(v >> 8)};
  out.write(reinterpret_cast<const char*>(b), 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint16_t get_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_dump(const WignerField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("write_dump: cannot open for writing: " + path);
  out.write("WIGF", 4);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(field.grid.nx));
  put_u32(out, static_cast<std::uint32_t>(field.grid.np_));
  put_f64(out, field.grid.x_min);
  put_f64(out, field.grid.x_max);
  put_f64(out, field.grid.p_min);
  put_f64(out, field.grid.p_max);
  put_f64(out, field.time);
  for (double v : field.values) put_f64(out, v);
  if (!out) throw ConfigError("write_dump: write failed: " + path);
}

WignerField read_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("read_dump: cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "WIGF", 4) != 0)
    throw ConfigError("read_dump: bad magic (not a WIGF dump): " + path);
  const std::uint16_t version = get_u16(in);
  if (version != 1)
    throw ConfigError("read_dump: unsupported version " + std::to_string(version) + ": " + path);
  const std::uint32_t nx = get_u32(in);
  const std::uint32_t np = get_u32(in);
  const double x_min = get_f64(in), x_max = get_f64(in);
  const double p_min = get_f64(in), p_max = get_f64(in);
  const double time = get_f64(in);
  if (!in) throw ConfigError("read_dump: truncated header: " + path);

  WignerField field;
  try {
    field.grid = make_grid(nx, np, x_min, x_max, p_min, p_max);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("read_dump: invalid grid in header: ") + e.what());
  }
  field.time = time;
  field.values.resize(static_cast<std::size_t>(nx) * np);
  for (double& v : field.values) v = get_f64(in);
  if (!in) throw ConfigError("read_dump: truncated values: " + path);
  // Must be exactly at EOF.
  in.peek();
  if (!in.eof()) throw ConfigError("read_dump: trailing bytes after values: " + path);
  return field;
}

void write_heatmap(const WignerField& field, const std::string& path) {
  const std::size_t nx = field.grid.nx, np = field.grid.np_;
  double lo = field.values[0], hi = field.values[0];
  for (double v : field.values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("write_heatmap: cannot open for writing: " + path);
  char comment[96];
  std::snprintf(comment, sizeof comment, "# range min=%.17g max=%.17g\n", lo, hi);
  out << "P5\n" << comment << nx << " " << np << "\n255\n";
  std::vector<unsigned char> row(nx);
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  // Top image row is p_max: iterate p from the last index downward.
  for (std::size_t jr = 0; jr < np; ++jr) {
    const std::size_t j = np - 1 - jr;
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = field.at(i, j);
      row[i] = hi > lo ? static_cast<unsigned char>(scale * (v - lo) + 0.5)
                       : static_cast<unsigned char>(128);
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(nx));
  }
  if (!out) throw ConfigError("write_heatmap: write failed: " + path);
}

void write_diagnostics_csv(const RunDiagnostics& diag, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("write_diagnostics_csv: cannot open for writing: " + path);
  out << "time,mean_x,mean_p,var_x,var_p,negativity,mass\n";
  char line[7 * 32];
  for (std::size_t k = 0; k < diag.size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  diag.times[k], diag.mean_x[k], diag.mean_p[k], diag.var_x[k], diag.var_p[k],
                  diag.negativity[k], diag.mass_series[k]);
    out << line;
  }
  if (!out) throw ConfigError("write_diagnostics_csv: write failed: " + path);
}

RunDiagnostics read_diagnostics_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("read_diagnostics_csv: cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "time,mean_x,mean_p,var_x,var_p,negativity,mass")
    throw ConfigError("read_diagnostics_csv: missing or wrong header: " + path);
  RunDiagnostics diag;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[7];
    std::istringstream row(line);
    std::string cell;
    for (int c = 0; c < 7; ++c) {
      if (!std::getline(row, cell, ','))
        throw ConfigError("read_diagnostics_csv: short row: " + line);
      char* end = nullptr;
      v[c] = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size())
        throw ConfigError("read_diagnostics_csv: bad number '" + cell + "'");
    }
    if (std::getline(row, cell, ','))
      throw ConfigError("read_diagnostics_csv: extra column in row: " + line);
    diag.push(v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
  }
  return diag;
}

}  // namespace wigsim
