#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rpsim/scene.hpp"

namespace rpsim {

/// Parses the line-oriented scene format:
///
///     # comment
///     [projector]
///     z = -360
///     [lens id=projection z=-200]
///     focal_length = 80
///     diameter = 10
///
/// Sections are projector, lens, aperture, plate, eye and render. Keys may appear in
/// the header as key=value or on their own lines. Lengths are millimeters, angles
/// degrees. Throws ParseError carrying the offending 1-based line.
Scene parse_scene(std::string_view text);

/// Inverse of parse_scene: every key is written explicitly.
std::string print_scene(const Scene& scene);

/// Reads and parses a scene file. Throws IoFailure when it cannot be read.
Scene load_scene(const std::filesystem::path& path);

/// Short hex digest of the printed scene.
std::string scene_hash(const Scene& scene);

/// Shortest decimal text that reads back to the same double, independent of locale.
std::string format_number(double value);

/// Locale-independent parse of a whole string; empty on any trailing garbage or non-finite value.
std::optional<double> parse_number(std::string_view text);

}  // namespace rpsim
