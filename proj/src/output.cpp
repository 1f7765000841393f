#include "rpsim/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "rpsim/errors.hpp"
#include "rpsim/scene_io.hpp"

namespace rpsim {

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  out << body;
  out.flush();
  if (!out) throw IoFailure("cannot write " + path.string());
}

std::string csv_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_pgm(const IrradianceMap& map) {
  if (!std::isfinite(map.total())) throw Error("irradiance map total is not finite");
  const double peak = map.max();
  std::string out = "P2\n" + std::to_string(map.bins_u) + " " + std::to_string(map.bins_v) + "\n65535\n";
  for (int row = 0; row < map.bins_v; ++row) {
    for (int col = 0; col < map.bins_u; ++col) {
      const long level = peak > 0.0 ? std::lround(65535.0 * map.at(row, col) / peak) : 0;
      if (col > 0) out += ' ';
      out += std::to_string(level);
    }
    out += '\n';
  }
  return out;
}

void write_pgm(const IrradianceMap& map, const std::filesystem::path& path) { write_file(path, format_pgm(map)); }

std::string format_csv(const ScanResult& scan) {
  if (scan.points.empty()) throw EmptyScan();
  std::string out = "parameter,value\n";
  for (const ScanPoint& p : scan.points) out += csv_number(p.parameter) + "," + csv_number(p.value) + "\n";
  return out;
}

void write_csv(const ScanResult& scan, const std::filesystem::path& path) { write_file(path, format_csv(scan)); }

ScanResult parse_csv(std::string_view text) {
  ScanResult scan;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (header) {
      if (line != "parameter,value") throw Error("csv: expected header 'parameter,value'");
      header = false;
      continue;
    }
    const auto comma = line.find(',');
    const auto a = comma == std::string_view::npos ? std::nullopt : parse_number(line.substr(0, comma));
    const auto b = comma == std::string_view::npos ? std::nullopt : parse_number(line.substr(comma + 1));
    if (!a || !b) throw Error("csv: malformed row '" + std::string(line) + "'");
    scan.points.push_back({*a, *b});
  }
  if (header) throw Error("csv: missing header");
  return scan;
}

}  // namespace rpsim
