#include "rpsim/scene_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <climits>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "rpsim/errors.hpp"

namespace rpsim {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string kind;
  std::size_t line = 0;
  std::map<std::string, Entry, std::less<>> keys;
};

const std::vector<std::string_view> kPlacementKeys = {"x", "y", "z", "tilt_x", "tilt_y"};

const std::map<std::string_view, std::vector<std::string_view>> kSchema = {
    {"projector", {"pixels_u", "pixels_v", "pitch", "samples"}},
    {"lens", {"id", "focal_length", "diameter"}},
    {"aperture", {"id", "radius", "offset_u", "offset_v"}},
    {"plate", {"id", "eff_image", "eff_ghost_u", "eff_ghost_v", "eff_direct", "theta_max"}},
    {"eye",
     {"pupil_radius", "offset_u", "offset_v", "focal_length", "lens_diameter", "gap", "retina_distance",
      "retina_half_width_u", "retina_half_width_v", "retina_bins_u", "retina_bins_v"}},
    {"render", {"max_events", "weight_cutoff", "coverage_threshold", "eyebox_plateau", "baseline_distance"}},
};

bool has_placement(std::string_view kind) { return kind != "render"; }

// Typed access to one section's keys with line-accurate errors.
class Fields {
 public:
  explicit Fields(const Section& s) : s_(s) {
    const auto& allowed = kSchema.at(s.kind);
    for (const auto& [key, entry] : s.keys) {
      const bool known = std::find(allowed.begin(), allowed.end(), key) != allowed.end() ||
                         (has_placement(s.kind) &&
                          std::find(kPlacementKeys.begin(), kPlacementKeys.end(), key) != kPlacementKeys.end());
      if (!known) throw ParseError(entry.line, "unknown key '" + key + "' in [" + s.kind + "]");
    }
  }

  bool has(std::string_view key) const { return s_.keys.find(key) != s_.keys.end(); }

  std::size_t line_of(std::string_view key) const {
    const auto it = s_.keys.find(key);
    return it == s_.keys.end() ? s_.line : it->second.line;
  }

  double number(std::string_view key, double fallback) const {
    const auto it = s_.keys.find(key);
    if (it == s_.keys.end()) return fallback;
    const auto v = parse_number(it->second.value);
    if (!v) throw ParseError(it->second.line, "non-numeric value for '" + std::string(key) + "'");
    return *v;
  }

  double required(std::string_view key) const {
    if (!has(key)) throw ParseError(s_.line, "missing key '" + std::string(key) + "' in [" + s_.kind + "]");
    return number(key, 0.0);
  }

  int integer(std::string_view key, int fallback) const {
    const auto it = s_.keys.find(key);
    if (it == s_.keys.end()) return fallback;
    const std::string& text = it->second.value;
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || v < INT_MIN || v > INT_MAX) {
      throw ParseError(it->second.line, "non-integer value for '" + std::string(key) + "'");
    }
    return static_cast<int>(v);
  }

  std::string text(std::string_view key, std::string fallback) const {
    const auto it = s_.keys.find(key);
    return it == s_.keys.end() ? std::move(fallback) : it->second.value;
  }

  void expect(bool ok, std::string_view key, const std::string& reason) const {
    if (!ok) throw ParseError(line_of(key), reason);
  }

  Placement placement(bool z_required) const {
    Placement p;
    p.position = {number("x", 0.0), number("y", 0.0), z_required ? required("z") : number("z", 0.0)};
    p.tilt_x_deg = number("tilt_x", 0.0);
    p.tilt_y_deg = number("tilt_y", 0.0);
    return p;
  }

  std::size_t header_line() const { return s_.line; }

 private:
  const Section& s_;
};

ProjectorSpec build_projector(const Fields& f) {
  ProjectorSpec p;
  p.placement = f.placement(true);
  p.pixels_u = f.integer("pixels_u", 1);
  p.pixels_v = f.integer("pixels_v", 1);
  p.pitch = f.number("pitch", 1.0);
  p.samples = f.integer("samples", 64);
  f.expect(p.pixels_u >= 0, "pixels_u", "invariant: pixels_u >= 0");
  f.expect(p.pixels_v >= 0, "pixels_v", "invariant: pixels_v >= 0");
  f.expect(p.pitch > 0.0, "pitch", "invariant: pitch > 0");
  f.expect(p.samples >= 0, "samples", "invariant: samples >= 0");
  return p;
}

Element build_element(const std::string& kind, const Fields& f) {
  if (kind == "lens") {
    ThinLens lens;
    lens.focal_length = f.required("focal_length");
    lens.diameter = f.required("diameter");
    f.expect(lens.focal_length != 0.0, "focal_length", "invariant: focal_length != 0");
    f.expect(lens.diameter > 0.0, "diameter", "invariant: diameter > 0");
    return lens;
  }
  if (kind == "aperture") {
    CircularAperture ap;
    ap.radius = f.required("radius");
    ap.center_offset = {f.number("offset_u", 0.0), f.number("offset_v", 0.0)};
    f.expect(ap.radius > 0.0, "radius", "invariant: radius > 0");
    return ap;
  }
  TransferPlate plate;
  // Plate orientation has no sensible default; both tilts must be stated.
  f.required("tilt_x");
  f.required("tilt_y");
  plate.eff_image = f.number("eff_image", plate.eff_image);
  plate.eff_ghost_u = f.number("eff_ghost_u", plate.eff_ghost_u);
  plate.eff_ghost_v = f.number("eff_ghost_v", plate.eff_ghost_v);
  plate.eff_direct = f.number("eff_direct", plate.eff_direct);
  plate.theta_max_deg = f.number("theta_max", plate.theta_max_deg);
  for (const char* key : {"eff_image", "eff_ghost_u", "eff_ghost_v", "eff_direct"}) {
    const double e = f.number(key, 0.0);
    f.expect(e >= 0.0 && e <= 1.0, key, std::string("invariant: 0 <= ") + key + " <= 1");
  }
  f.expect(plate.theta_max_deg > 0.0 && plate.theta_max_deg < 90.0, "theta_max", "invariant: 0 < theta_max < 90");
  if (auto why = plate.check()) throw ParseError(f.header_line(), *why);
  return plate;
}

EyeModel build_eye(const Fields& f) {
  EyeModel eye;
  eye.placement = f.placement(true);
  eye.pupil_radius = f.number("pupil_radius", eye.pupil_radius);
  eye.offset = {f.number("offset_u", 0.0), f.number("offset_v", 0.0)};
  eye.focal_length = f.number("focal_length", eye.focal_length);
  if (f.has("lens_diameter")) eye.lens_diameter = f.number("lens_diameter", 0.0);
  eye.pupil_to_lens_gap = f.number("gap", eye.pupil_to_lens_gap);
  eye.retina_distance = f.number("retina_distance", eye.retina_distance);
  eye.retina_half_width_u = f.number("retina_half_width_u", eye.retina_half_width_u);
  eye.retina_half_width_v = f.number("retina_half_width_v", eye.retina_half_width_v);
  eye.retina_bins_u = f.integer("retina_bins_u", eye.retina_bins_u);
  eye.retina_bins_v = f.integer("retina_bins_v", eye.retina_bins_v);
  f.expect(eye.pupil_radius > 0.0, "pupil_radius", "invariant: pupil_radius > 0");
  f.expect(eye.focal_length != 0.0, "focal_length", "invariant: focal_length != 0");
  f.expect(!eye.lens_diameter || *eye.lens_diameter > 0.0, "lens_diameter", "invariant: lens_diameter > 0");
  f.expect(eye.pupil_to_lens_gap >= 0.0, "gap", "invariant: gap >= 0");
  f.expect(eye.retina_distance > 0.0, "retina_distance", "invariant: retina_distance > 0");
  f.expect(eye.retina_half_width_u > 0.0, "retina_half_width_u", "invariant: retina_half_width_u > 0");
  f.expect(eye.retina_half_width_v > 0.0, "retina_half_width_v", "invariant: retina_half_width_v > 0");
  f.expect(eye.retina_bins_u >= 1, "retina_bins_u", "invariant: retina_bins_u >= 1");
  f.expect(eye.retina_bins_v >= 1, "retina_bins_v", "invariant: retina_bins_v >= 1");
  return eye;
}

RenderSettings build_render(const Fields& f) {
  RenderSettings r;
  r.max_events = f.integer("max_events", r.max_events);
  r.weight_cutoff = f.number("weight_cutoff", r.weight_cutoff);
  r.coverage_threshold = f.number("coverage_threshold", r.coverage_threshold);
  r.eyebox_plateau = f.number("eyebox_plateau", r.eyebox_plateau);
  r.baseline_distance = f.number("baseline_distance", r.baseline_distance);
  f.expect(r.max_events >= 1, "max_events", "invariant: max_events >= 1");
  f.expect(r.weight_cutoff >= 0.0, "weight_cutoff", "invariant: weight_cutoff >= 0");
  f.expect(r.coverage_threshold >= 0.0, "coverage_threshold", "invariant: coverage_threshold >= 0");
  f.expect(r.eyebox_plateau > 0.0 && r.eyebox_plateau <= 1.0, "eyebox_plateau",
           "invariant: 0 < eyebox_plateau <= 1");
  f.expect(r.baseline_distance > 0.0, "baseline_distance", "invariant: baseline_distance > 0");
  return r;
}

Section open_section(std::string_view header, std::size_t line) {
  header = trim(header.substr(1, header.size() - 2));
  Section s;
  s.line = line;
  std::istringstream tokens{std::string(header)};
  std::string token;
  if (!(tokens >> s.kind)) throw ParseError(line, "empty section header");
  if (kSchema.find(s.kind) == kSchema.end()) throw ParseError(line, "unknown section '" + s.kind + "'");
  while (tokens >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
      throw ParseError(line, "malformed header entry '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    if (!s.keys.emplace(key, Entry{token.substr(eq + 1), line}).second) {
      throw ParseError(line, "duplicate key '" + key + "'");
    }
  }
  return s;
}

}  // namespace

Scene parse_scene(std::string_view text) {
  std::vector<Section> sections;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      sections.push_back(open_section(line, line_no));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'name = value'");
    if (sections.empty()) throw ParseError(line_no, "key outside any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ParseError(line_no, "expected 'name = value'");
    if (!sections.back().keys.emplace(key, Entry{value, line_no}).second) {
      throw ParseError(line_no, "duplicate key '" + key + "'");
    }
  }
  const std::size_t last_line = std::max<std::size_t>(line_no - (text.empty() || text.back() == '\n' ? 1 : 0), 1);

  Scene scene;
  bool have_projector = false, have_eye = false, have_render = false;
  std::set<std::string> ids;
  std::map<std::string, int> ordinal;
  for (const Section& s : sections) {
    const Fields f(s);
    if (s.kind == "projector") {
      if (have_projector) throw ParseError(s.line, "duplicate projector");
      have_projector = true;
      scene.projector = build_projector(f);
    } else if (s.kind == "eye") {
      if (have_eye) throw ParseError(s.line, "duplicate eye");
      have_eye = true;
      scene.eye = build_eye(f);
    } else if (s.kind == "render") {
      if (have_render) throw ParseError(s.line, "duplicate render");
      have_render = true;
      scene.render = build_render(f);
    } else {
      const std::string id = f.text("id", s.kind + std::to_string(++ordinal[s.kind]));
      const bool clean = std::none_of(id.begin(), id.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']' || c == '=' || c == '#';
      });
      if (!clean) throw ParseError(f.line_of("id"), "invalid id '" + id + "'");
      if (!ids.insert(id).second) throw ParseError(f.line_of("id"), "duplicate id '" + id + "'");
      const Placement placement = f.placement(true);
      scene.elements.push_back(SceneElement::make(id, placement, build_element(s.kind, f)));
    }
  }
  if (!have_projector) throw ParseError(last_line, "missing projector");
  if (!have_eye) throw ParseError(last_line, "missing eye");
  sort_by_axial_position(scene.elements);
  return scene;
}

namespace {

void put(std::ostringstream& out, std::string_view key, double value) {
  out << key << " = " << format_number(value) << '\n';
}
void put(std::ostringstream& out, std::string_view key, int value) { out << key << " = " << value << '\n'; }

void put_placement(std::ostringstream& out, const Placement& p) {
  put(out, "x", p.position.x);
  put(out, "y", p.position.y);
  put(out, "z", p.position.z);
  put(out, "tilt_x", p.tilt_x_deg);
  put(out, "tilt_y", p.tilt_y_deg);
}

}  // namespace

std::string print_scene(const Scene& scene) {
  std::ostringstream out;
  const ProjectorSpec& pr = scene.projector;
  out << "[projector]\n";
  put_placement(out, pr.placement);
  put(out, "pixels_u", pr.pixels_u);
  put(out, "pixels_v", pr.pixels_v);
  put(out, "pitch", pr.pitch);
  put(out, "samples", pr.samples);

  for (const SceneElement& e : scene.elements) {
    out << '\n';
    if (const auto* lens = std::get_if<ThinLens>(&e.element)) {
      out << "[lens id=" << e.id << "]\n";
      put_placement(out, e.placement);
      put(out, "focal_length", lens->focal_length);
      put(out, "diameter", lens->diameter);
    } else if (const auto* ap = std::get_if<CircularAperture>(&e.element)) {
      out << "[aperture id=" << e.id << "]\n";
      put_placement(out, e.placement);
      put(out, "radius", ap->radius);
      put(out, "offset_u", ap->center_offset.u);
      put(out, "offset_v", ap->center_offset.v);
    } else {
      const auto& plate = std::get<TransferPlate>(e.element);
      out << "[plate id=" << e.id << "]\n";
      put_placement(out, e.placement);
      put(out, "eff_image", plate.eff_image);
      put(out, "eff_ghost_u", plate.eff_ghost_u);
      put(out, "eff_ghost_v", plate.eff_ghost_v);
      put(out, "eff_direct", plate.eff_direct);
      put(out, "theta_max", plate.theta_max_deg);
    }
  }

  const EyeModel& eye = scene.eye;
  out << "\n[eye]\n";
  put_placement(out, eye.placement);
  put(out, "pupil_radius", eye.pupil_radius);
  put(out, "offset_u", eye.offset.u);
  put(out, "offset_v", eye.offset.v);
  put(out, "focal_length", eye.focal_length);
  if (eye.lens_diameter) put(out, "lens_diameter", *eye.lens_diameter);
  put(out, "gap", eye.pupil_to_lens_gap);
  put(out, "retina_distance", eye.retina_distance);
  put(out, "retina_half_width_u", eye.retina_half_width_u);
  put(out, "retina_half_width_v", eye.retina_half_width_v);
  put(out, "retina_bins_u", eye.retina_bins_u);
  put(out, "retina_bins_v", eye.retina_bins_v);

  const RenderSettings& r = scene.render;
  out << "\n[render]\n";
  put(out, "max_events", r.max_events);
  put(out, "weight_cutoff", r.weight_cutoff);
  put(out, "coverage_threshold", r.coverage_threshold);
  put(out, "eyebox_plateau", r.eyebox_plateau);
  put(out, "baseline_distance", r.baseline_distance);
  return out.str();
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

std::string scene_hash(const Scene& scene) {
  std::ostringstream out;
  out << std::hex << std::hash<std::string>{}(print_scene(scene));
  return out.str();
}

}  // namespace rpsim
