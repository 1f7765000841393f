#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rpsim/scan.hpp"
#include "rpsim/tracer.hpp"

namespace rpsim {

/// Plain PGM (P2), maxval 65535, each bin scaled linearly so the brightest bin is
/// 65535; an all-zero map stays zero. Rows top first, one text line per row.
std::string format_pgm(const IrradianceMap& map);
void write_pgm(const IrradianceMap& map, const std::filesystem::path& path);

/// `parameter,value` header then one row per point, 17 significant digits.
/// Throws EmptyScan for a scan without points.
std::string format_csv(const ScanResult& scan);
void write_csv(const ScanResult& scan, const std::filesystem::path& path);

/// Reads text produced by format_csv. Throws Error on malformed rows.
ScanResult parse_csv(std::string_view text);

}  // namespace rpsim
