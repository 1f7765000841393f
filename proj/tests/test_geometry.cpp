#include "doctest.h"
#include "rpsim/geometry.hpp"
#include "support.hpp"

using namespace rpsim;
using doctest::Approx;

TEST_CASE("intersect_plane: axial ray meets z = 0 after 10 mm") {
  const auto hit = intersect_plane(Ray{{0, 0, -10}, {0, 0, 1}}, PlaneFrame::axial(0.0));
  REQUIRE(hit);
  CHECK(hit->t == 10.0);
  CHECK(hit->point == Vec3{0, 0, 0});
}

TEST_CASE("intersect_plane: parallel ray has no hit") {
  CHECK_FALSE(intersect_plane(Ray{{0, 0, 0}, {1, 0, 0}}, PlaneFrame::axial(5.0)));
}

TEST_CASE("intersect_plane: oblique ray by similar triangles") {
  const auto hit = intersect_plane(Ray{{1, 0, -5}, {0, 0.6, 0.8}}, PlaneFrame::axial(0.0));
  REQUIRE(hit);
  CHECK(hit->t == Approx(6.25).epsilon(1e-15));
  CHECK(hit->point.x == Approx(1.0));
  CHECK(hit->point.y == Approx(3.75).epsilon(1e-15));
  CHECK(hit->point.z == Approx(0.0));
}

TEST_CASE("intersect_plane: planes behind or within the advance guard are not hit") {
  const PlaneFrame plane = PlaneFrame::axial(0.0);
  CHECK_FALSE(intersect_plane(Ray{{0, 0, 1}, {0, 0, 1}}, plane));
  CHECK_FALSE(intersect_plane(Ray{{0, 0, 0}, {0, 0, 1}}, plane));
  CHECK_FALSE(intersect_plane(Ray{{0, 0, -5e-10}, {0, 0, 1}}, plane));
  CHECK(intersect_plane(Ray{{0, 0, -2e-9}, {0, 0, 1}}, plane));
  // Direction nearly in-plane: |d.n| below the parallel guard.
  CHECK_FALSE(intersect_plane(Ray{{0, 0, -1}, normalized({1, 0, 1e-13})}, plane));
}

TEST_CASE("intersect_plane: hit points lie in random planes") {
  std::mt19937_64 rng(11);
  int hits = 0;
  for (int i = 0; i < 10000; ++i) {
    const PlaneFrame f = testing::random_frame(rng);
    std::uniform_real_distribution<double> pos(-100.0, 100.0);
    const Ray ray{{pos(rng), pos(rng), pos(rng)}, testing::random_unit(rng)};
    if (const auto h = intersect_plane(ray, f)) {
      ++hits;
      CHECK(std::abs(dot(h->point - f.origin, f.n)) < 1e-9);
      CHECK(h->t > kAdvanceEpsilon);
    }
  }
  CHECK(hits > 1000);
}

TEST_CASE("transverse_decompose: examples") {
  const PlaneFrame z = PlaneFrame::axial(0.0);
  auto parts = transverse_decompose({0.6, 0, 0.8}, z);
  CHECK(parts.normal == Vec3{0, 0, 0.8});
  CHECK(parts.transverse.x == Approx(0.6));
  CHECK(parts.transverse.z == 0.0);

  parts = transverse_decompose({0, 0, 1}, z);
  CHECK(parts.normal == Vec3{0, 0, 1});
  CHECK(parts.transverse == Vec3{0, 0, 0});

  parts = transverse_decompose({1, 0, 0}, z);
  CHECK(parts.normal == Vec3{0, 0, 0});
  CHECK(parts.transverse == Vec3{1, 0, 0});
}

TEST_CASE("transverse_decompose: parts reassemble and are orthogonal") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    const PlaneFrame f = testing::random_frame(rng);
    const Vec3 d = testing::random_unit(rng);
    const auto parts = transverse_decompose(d, f);
    CHECK(norm(parts.normal + parts.transverse - d) < 1e-12);
    CHECK(std::abs(dot(parts.transverse, f.n)) < 1e-12);
    CHECK(norm(cross(parts.normal, f.n)) < 1e-12);
  }
}

TEST_CASE("tilted frames are right-handed orthonormal triads") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const PlaneFrame f = testing::random_frame(rng);
    CHECK(std::abs(norm(f.u) - 1.0) < 1e-12);
    CHECK(std::abs(norm(f.v) - 1.0) < 1e-12);
    CHECK(std::abs(norm(f.n) - 1.0) < 1e-12);
    CHECK(std::abs(dot(f.u, f.v)) < 1e-12);
    CHECK(std::abs(dot(f.u, f.n)) < 1e-12);
    CHECK(norm(cross(f.u, f.v) - f.n) < 1e-12);
  }
}

TEST_CASE("tilt about y turns the normal toward +x") {
  const PlaneFrame f = PlaneFrame::tilted({0, 0, 0}, 0.0, 30.0);
  CHECK(f.n.x == Approx(0.5));
  CHECK(f.n.z == Approx(std::sqrt(3.0) / 2.0));
  const PlaneFrame g = PlaneFrame::tilted({0, 0, 0}, 30.0, 0.0);
  CHECK(g.n.y == Approx(-0.5));
}

TEST_CASE("frame local and at are inverse in the plane") {
  const PlaneFrame f = PlaneFrame::tilted({1, 2, 3}, 10.0, -20.0);
  const InPlane p{0.7, -1.3};
  const InPlane back = f.local(f.at(p));
  CHECK(back.u == Approx(p.u));
  CHECK(back.v == Approx(p.v));
  CHECK(f.shifted(p).origin == f.at(p));
  CHECK(norm(f.advanced(2.0).origin - (f.origin + f.n * 2.0)) < 1e-15);
}

TEST_CASE("normalized vectors are unit length") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> big(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v{big(rng), big(rng), big(rng)};
    CHECK(std::abs(norm(normalized(v)) - 1.0) < 1e-12);
  }
}
