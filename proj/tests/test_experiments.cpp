#include <stdexcept>

#include "doctest.h"
#include "rpsim/errors.hpp"
#include "rpsim/experiments.hpp"
#include "support.hpp"

using namespace rpsim;
using doctest::Approx;

namespace {

Scene reference(int samples = 256) {
  Scene s = testing::shipped("fig3_reference.scene");
  s.projector.samples = samples;
  return s;
}

ScanResult scan_of(std::initializer_list<std::pair<double, double>> pts) {
  ScanResult s;
  for (auto [p, v] : pts) s.points.push_back({p, v});
  return s;
}

}  // namespace

TEST_CASE("rms_spot: examples") {
  const std::vector<WeightedPoint> pair{{{1, 0}, 1}, {{-1, 0}, 1}};
  CHECK(rms_spot(pair) == 1.0);
  const std::vector<WeightedPoint> single{{{3, 4}, 0.2}};
  CHECK(rms_spot(single) == 0.0);
  const std::vector<WeightedPoint> shifted{{{0, 0}, 1}, {{2, 0}, 1}};
  CHECK(rms_spot(shifted) == 1.0);
  const std::vector<WeightedPoint> weighted{{{0, 0}, 3}, {{4, 0}, 1}};
  CHECK(rms_spot(weighted) == Approx(std::sqrt(3.0)));
}

TEST_CASE("rms_spot: no weight") {
  CHECK_THROWS_AS(rms_spot({}), EmptySpot);
  const std::vector<WeightedPoint> zero{{{1, 1}, 0.0}};
  CHECK_THROWS_AS(rms_spot(zero), EmptySpot);
}

TEST_CASE("field_coverage: wide pupil sees every pixel") {
  Scene s = reference();
  s.eye.pupil_radius = 20.0;
  CHECK(field_coverage(s, 1) == 1.0);
}

TEST_CASE("field_coverage: an occluding pupil sees nothing") {
  Scene s = reference();
  s.eye.pupil_radius = 0.001;
  s.eye.offset = {10.0, 0.0};
  CHECK(field_coverage(s, 1) == 0.0);
}

TEST_CASE("field_coverage: half-radius iris shift keeps the field") {
  Scene s = reference(1024);
  const double centred = measure_coverage(s, 1).intensity;
  s.eye.offset = {0.5 * s.eye.pupil_radius, 0.0};
  const CoverageMeasure m = measure_coverage(s, 1);
  CHECK(m.coverage == 1.0);
  CHECK(m.intensity > 0.0);
  CHECK(m.intensity <= centred * 1.01);
}

TEST_CASE("scan_values: inclusive grid") {
  const auto v = scan_values(-0.2, 0.2, 0.1);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == -0.2);
  CHECK(v.back() == Approx(0.2));
  CHECK(scan_values(1.0, 1.0, 0.5).size() == 1);
  CHECK_THROWS_AS(scan_values(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scan_values(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("plateau_extent: widest qualifying run") {
  CHECK(plateau_extent(scan_of({{0, 1}, {1, 1}, {2, 0.5}, {3, 1}, {4, 1}, {5, 1}}), 0.95) == 2.0);
  CHECK(plateau_extent(scan_of({{0, 0.2}, {1, 0.1}}), 0.95) == 0.0);
  CHECK(plateau_extent(scan_of({{-1, 0.95}}), 0.95) == 0.0);
  CHECK(plateau_extent(scan_of({{-1, 0.96}, {0.5, 1.0}}), 0.95) == 1.5);
}

TEST_CASE("eyebox_scan: centred eye sees the field, a distant one does not") {
  Scene s = testing::shipped("fig3_eyebox_probe.scene");
  s.projector.pixels_u = s.projector.pixels_v = 1;
  const std::vector<double> offsets{-20.0, 0.0, 20.0};
  const EyeboxScan scan = eyebox_scan(s, offsets, 1);
  REQUIRE(scan.coverage.points.size() == 3);
  CHECK(scan.coverage.points[0].value == 0.0);
  CHECK(scan.coverage.points[1].value == 1.0);
  CHECK(scan.coverage.points[2].value == 0.0);
  CHECK(scan.intensity.points[1].value > 0.0);
  CHECK(scan.coverage.seed == 1);
  CHECK(scan.coverage.scene_hash == scene_hash(s));
}

TEST_CASE("eyebox_scan: offsets must increase") {
  const std::vector<double> bad{0.0, 0.0};
  CHECK_THROWS_AS(eyebox_scan(reference(), bad, 1), std::invalid_argument);
  CHECK_THROWS_AS(eyebox_scan(reference(), std::vector<double>{}, 1), std::invalid_argument);
}

TEST_CASE("eyebox_scan: coverage never recovers beyond the plateau") {
  Scene s = testing::shipped("fig3_eyebox_probe.scene");
  s.projector.samples = 1024;
  const auto offsets = scan_values(0.0, 7.0, 0.25);
  const EyeboxScan scan = eyebox_scan(s, offsets, 2);
  std::size_t k = 0;
  while (k < scan.coverage.points.size() && scan.coverage.points[k].value >= 0.95) ++k;
  REQUIRE(k > 0);
  REQUIRE(k < scan.coverage.points.size());
  for (std::size_t i = k + 1; i < scan.coverage.points.size(); ++i) {
    CHECK(scan.coverage.points[i].value <= scan.coverage.points[i - 1].value);
  }
  CHECK(scan.coverage.points.back().value == 0.0);
}

TEST_CASE("scans are deterministic") {
  const Scene s = reference(128);
  const std::vector<double> offsets{-1.0, 0.0, 1.0};
  const auto a = eyebox_scan(s, offsets, 3);
  const auto b = eyebox_scan(s, offsets, 3);
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    CHECK(a.intensity.points[i].value == b.intensity.points[i].value);
  }
  const std::vector<double> fs{14.0, 17.0};
  CHECK(focus_sweep(s, fs, 3).proposed_max == focus_sweep(s, fs, 3).proposed_max);
}

TEST_CASE("focus_sweep: eye focused on the source conjugate sees a point") {
  const Scene s = reference(256);
  const std::vector<double> fs{focused_focal_length(160.0, 17.0)};
  const SpotSweep sweep = spot_sweep(s, fs, 1);
  CHECK(sweep.mean_spot.points[0].value < 1e-9);
  CHECK(sweep.empty_pixels[0] == 0);
}

TEST_CASE("focus_sweep: baseline focused at the diffuser sees a point") {
  const Scene base = diffuser_baseline(reference(256));
  const std::vector<double> fs{focused_focal_length(250.0, 17.0)};
  CHECK(spot_sweep(base, fs, 1).mean_spot.points[0].value < 1e-9);
}

TEST_CASE("focus_sweep: focal lengths must increase") {
  const std::vector<double> fs{15.0, 14.0};
  CHECK_THROWS_AS(focus_sweep(reference(), fs, 1), std::invalid_argument);
}

TEST_CASE("focus_sweep: pixels without image light are reported, not fatal") {
  Scene s = reference(64);
  s.eye.offset = {30.0, 0.0};
  const std::vector<double> fs{15.0};
  const SpotSweep sweep = spot_sweep(s, fs, 1);
  CHECK(sweep.empty_pixels[0] == 25);
  CHECK(std::isnan(sweep.mean_spot.points[0].value));
}

TEST_CASE("diffuser_baseline: projector in front of the eye, no optics") {
  const Scene s = reference();
  const Scene b = diffuser_baseline(s);
  CHECK(b.elements.empty());
  CHECK(b.eye == s.eye);
  CHECK(b.projector.placement.position.z == Approx(200.0 - 250.0));
  CHECK(b.projector.pixels_u == s.projector.pixels_u);
  CHECK(b.projector.pitch == s.projector.pitch);
}

TEST_CASE("ghost_ratio: no ghost efficiency means no ghosts") {
  Scene s = testing::shipped("fig5_bench.scene");
  s.projector.samples = 256;
  for (auto& e : s.elements) {
    if (auto* p = std::get_if<TransferPlate>(&e.element)) p->eff_ghost_u = p->eff_ghost_v = 0.0;
  }
  CHECK(ghost_ratio(s, 1) == 0.0);
}

TEST_CASE("ghost_ratio: direct light never enters the ratio") {
  Scene s = testing::shipped("fig5_bench.scene");
  s.eye.pupil_radius = 25.0;
  s.projector.samples = 256;
  const double with_leak = ghost_ratio(s, 1);
  for (auto& e : s.elements) {
    if (auto* p = std::get_if<TransferPlate>(&e.element)) p->eff_direct = 0.0;
  }
  CHECK(ghost_ratio(s, 1) == with_leak);
  CHECK(with_leak > 0.0);
}

TEST_CASE("ghost_ratio: requires a plate and image light") {
  CHECK_THROWS_AS(ghost_ratio(diffuser_baseline(reference()), 1), std::invalid_argument);
  Scene s = reference(64);
  for (auto& e : s.elements) {
    if (auto* p = std::get_if<TransferPlate>(&e.element)) p->eff_image = 0.0;
  }
  CHECK_THROWS_AS(ghost_ratio(s, 1), DivisionUndefined);
}

TEST_CASE("ghost_ratio: shrinking the iris never lets ghosts gain on the shipped scenes") {
  // Once the iris is inside both the image and ghost footprints the ratio is flat, so
  // neighbouring radii may differ by sampling noise only.
  constexpr double noise = 0.01;
  for (const char* name : {"fig5_bench.scene", "fig3_reference.scene"}) {
    Scene s = testing::shipped(name);
    s.projector.samples = 16384;
    double previous = std::numeric_limits<double>::infinity();
    double widest = 0.0;
    for (double r : {25.0, 12.0, 8.0, 6.0, 4.0, 3.0, 2.0, 1.5, 1.0}) {
      s.eye.pupil_radius = r;
      const double ratio = ghost_ratio(s, 1);
      CAPTURE(name);
      CAPTURE(r);
      CHECK(ratio <= previous * (1.0 + noise));
      previous = ratio;
      if (r == 25.0) widest = ratio;
    }
    CHECK(previous < 0.5 * widest);
  }
}

TEST_CASE("fov_limit: narrow plate acceptance bounds the field") {
  Scene s = reference(256);
  for (auto& e : s.elements) {
    if (auto* p = std::get_if<TransferPlate>(&e.element)) p->theta_max_deg = 10.0;
  }
  const double fov = fov_limit(s, 0.5, 1);
  CHECK(fov <= 20.0);
  CHECK(fov >= 18.0);
}

TEST_CASE("fov_limit: the on-axis probe is always admitted") {
  const double fov = fov_limit(reference(64), 1.0, 1);
  CHECK(fov >= 2.0);
  CHECK_THROWS_AS(fov_limit(reference(), 0.0, 1), std::invalid_argument);
}

TEST_CASE("fov_limit: a blind eye reports no field") {
  Scene s = reference(64);
  s.eye.offset = {40.0, 0.0};
  CHECK(fov_limit(s, 1.0, 1) == 0.0);
}
