// Command-line driver for the retinal projection simulator.
//
// Exit codes: 0 success, 1 invalid arguments or scene, 2 runtime failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "rpsim/errors.hpp"
#include "rpsim/experiments.hpp"
#include "rpsim/output.hpp"
#include "rpsim/scene_io.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

rpsim::Scene load_valid(const std::string& path) {
  rpsim::Scene scene = rpsim::load_scene(path);
  if (auto why = scene.check()) throw InvalidInput(path + ": " + *why);
  return scene;
}

rpsim::ClassFilter filter_from(const std::string& name) {
  if (name == "image") return rpsim::ClassFilter::ImageOnly;
  if (name == "ghost") return rpsim::ClassFilter::GhostOnly;
  return rpsim::ClassFilter::All;
}

void print_value(const std::string& label, double value) {
  std::cout << label << ' ' << rpsim::format_number(value) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ray-traced pupil-plane aerial-image retinal projection"};
  app.require_subcommand(1);

  std::string scene_path, out_prefix, filter = "all";
  std::uint64_t seed = 1;
  std::optional<int> rays;
  double min_mm = -6.0, max_mm = 6.0, step_mm = 0.1;
  double fmin = 14.0, fmax = 17.0;
  int steps = 13;
  double step_deg = 0.25;

  auto* render = app.add_subcommand("render", "Render the retina irradiance map");
  render->add_option("--scene", scene_path, "Scene file")->required();
  render->add_option("--seed", seed, "Sampling seed");
  render->add_option("--rays", rays, "Samples per pixel (overrides the scene)");
  render->add_option("--filter", filter, "Ray classes to image")->check(CLI::IsMember({"all", "image", "ghost"}));
  render->add_option("--out", out_prefix, "Output prefix for .pgm and .csv")->required();

  auto* eyebox = app.add_subcommand("eyebox", "Field coverage against eye translation");
  eyebox->add_option("--scene", scene_path, "Scene file")->required();
  eyebox->add_option("--min", min_mm, "First offset (mm)");
  eyebox->add_option("--max", max_mm, "Last offset (mm)");
  eyebox->add_option("--step", step_mm, "Offset step (mm)")->check(CLI::PositiveNumber);
  eyebox->add_option("--seed", seed, "Sampling seed");
  eyebox->add_option("--out", out_prefix, "Output prefix")->required();

  auto* focus = app.add_subcommand("focus-sweep", "RMS spot against eye focal length, proposed and baseline");
  focus->add_option("--scene", scene_path, "Scene file")->required();
  focus->add_option("--fmin", fmin, "Smallest eye focal length (mm)")->check(CLI::PositiveNumber);
  focus->add_option("--fmax", fmax, "Largest eye focal length (mm)")->check(CLI::PositiveNumber);
  focus->add_option("--steps", steps, "Number of focal lengths")->check(CLI::PositiveNumber);
  focus->add_option("--seed", seed, "Sampling seed");
  focus->add_option("--out", out_prefix, "Output prefix")->required();

  auto* ghosts = app.add_subcommand("ghosts", "Ghost to image retina weight ratio");
  ghosts->add_option("--scene", scene_path, "Scene file")->required();
  ghosts->add_option("--seed", seed, "Sampling seed");

  auto* fov = app.add_subcommand("fov", "Full viewing angle in degrees");
  fov->add_option("--scene", scene_path, "Scene file")->required();
  fov->add_option("--step", step_deg, "Angle step (degrees)")->check(CLI::PositiveNumber);
  fov->add_option("--seed", seed, "Sampling seed");

  auto* check = app.add_subcommand("check", "Parse and validate a scene");
  check->add_option("--scene", scene_path, "Scene file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  rpsim::Scene scene;
  try {
    scene = load_valid(scene_path);
  } catch (const rpsim::ParseError& e) {
    std::cerr << scene_path << ":" << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitRuntime;
  }

  try {
    if (*check) {
      std::cout << "ok " << scene.elements.size() << " elements, " << scene.projector.pixels_u << "x"
                << scene.projector.pixels_v << " pixels\n";
    } else if (*render) {
      if (rays) scene.projector.samples = *rays;
      const auto result = rpsim::render_retina(scene, seed, {filter_from(filter), std::nullopt});
      rpsim::write_pgm(result.map, out_prefix + ".pgm");
      rpsim::ScanResult per_pixel;
      for (std::size_t p = 0; p < result.pixel_delivered.size(); ++p) {
        per_pixel.points.push_back({static_cast<double>(p), result.pixel_delivered[p]});
      }
      rpsim::write_csv(per_pixel, out_prefix + ".csv");
      print_value("emitted", result.emitted());
      print_value("delivered", result.delivered());
    } else if (*eyebox) {
      const auto offsets = rpsim::scan_values(min_mm, max_mm, step_mm);
      const auto scan = rpsim::eyebox_scan(scene, offsets, seed);
      rpsim::write_csv(scan.coverage, out_prefix + ".csv");
      rpsim::write_csv(scan.intensity, out_prefix + "_intensity.csv");
      print_value("eyebox_extent_mm", scan.extent);
    } else if (*focus) {
      std::vector<double> fs;
      for (int k = 0; k < steps; ++k) {
        fs.push_back(steps == 1 ? fmin : fmin + (fmax - fmin) * k / (steps - 1));
      }
      const auto sweep = rpsim::focus_sweep(scene, fs, seed);
      rpsim::write_csv(sweep.proposed.mean_spot, out_prefix + "_proposed.csv");
      rpsim::write_csv(sweep.baseline.mean_spot, out_prefix + "_baseline.csv");
      print_value("proposed_max_rms_mm", sweep.proposed_max);
      print_value("baseline_max_rms_mm", sweep.baseline_max);
      print_value("ratio", sweep.proposed_max / sweep.baseline_max);
    } else if (*ghosts) {
      std::cout << rpsim::format_number(rpsim::ghost_ratio(scene, seed)) << '\n';
    } else if (*fov) {
      std::cout << rpsim::format_number(rpsim::fov_limit(scene, step_deg, seed)) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
