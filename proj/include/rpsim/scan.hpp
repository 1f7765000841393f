#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rpsim {

struct ScanPoint {
  double parameter = 0.0;
  double value = 0.0;
  bool operator==(const ScanPoint&) const = default;
};

/// Metric against a swept parameter. Parameters are strictly monotonic.
struct ScanResult {
  std::vector<ScanPoint> points;
  std::string scene_hash;
  std::uint64_t seed = 0;
};

}  // namespace rpsim
