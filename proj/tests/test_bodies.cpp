#include <doctest.h>

#include "hobody/bodies.hpp"
#include "hobody/catalog.hpp"
#include "hobody/hull.hpp"
#include "hobody/lp.hpp"

#include <numbers>

using namespace hobody;

namespace {

std::vector<Vec> square_points(double lo, double hi) {
  return {make_vec({lo, lo}), make_vec({hi, lo}), make_vec({hi, hi}), make_vec({lo, hi})};
}

const Facet* facet_with_normal(const Polytope& p, const Vec& u) {
  for (const Facet& f : p.facets())
    if ((f.normal - u).norm() < 1e-12) return &f;
  return nullptr;
}

Vec closedness(const Polytope& p) {
  Vec s = Vec::Zero(p.dim());
  for (const Facet& f : p.facets()) s += f.measure * f.normal;
  return s;
}

}  // namespace

TEST_CASE("linear programs") {
  LinearProgram lp;
  lp.A.resize(3, 2);
  lp.A << 1, 1, 1, 0, 0, 1;
  lp.b.resize(3);
  lp.b << 4, 3, 3;
  lp.c.resize(2);
  lp.c << 1, 2;
  auto r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::optimal);
  CHECK(r.value == doctest::Approx(7.0));
  CHECK((lp.A * r.x - lp.b).maxCoeff() <= 1e-9);

  // Negative right-hand sides need phase one.
  lp.A.resize(2, 1);
  lp.A << -1, 1;
  lp.b.resize(2);
  lp.b << -2, 5;
  lp.c.resize(1);
  lp.c << -1;
  r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::optimal);
  CHECK(r.x(0) == doctest::Approx(2.0));

  lp.b << -6, 5;
  CHECK(solve_lp(lp).status == LPStatus::infeasible);

  lp.A.resize(1, 1);
  lp.A << -1;
  lp.b.resize(1);
  lp.b << 0;
  lp.c << 1;
  CHECK(solve_lp(lp).status == LPStatus::unbounded);
}

TEST_CASE("hull_from_vertices: square and triangle facet data") {
  const auto sq = square_points(0, 1);
  const Polytope p = hull_from_vertices(sq);
  CHECK(p.facets().size() == 4);
  for (const Facet& f : p.facets()) CHECK(f.measure == doctest::Approx(1.0));
  for (int i = 0; i < 2; ++i) {
    CHECK(facet_with_normal(p, unit_vector(2, i)) != nullptr);
    CHECK(facet_with_normal(p, -unit_vector(2, i)) != nullptr);
  }
  CHECK(p.volume() == doctest::Approx(1.0));

  const Polytope t = simplex(2);
  REQUIRE(t.facets().size() == 3);
  const Facet* diag = facet_with_normal(t, make_vec({1.0, 1.0}) / std::sqrt(2.0));
  REQUIRE(diag != nullptr);
  CHECK(diag->offset == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(diag->measure == doctest::Approx(std::sqrt(2.0)));
  const Facet* bottom = facet_with_normal(t, make_vec({0.0, -1.0}));
  REQUIRE(bottom != nullptr);
  CHECK(bottom->offset == doctest::Approx(0.0));
  CHECK(bottom->measure == doctest::Approx(1.0));
  CHECK(closedness(t).norm() <= 1e-9);
  CHECK(t.volume() == doctest::Approx(0.5));
}

TEST_CASE("degenerate input carries the achieved dimension") {
  std::vector<Vec> line{make_vec({0, 0}), make_vec({1, 1}), make_vec({2, 2})};
  try {
    hull_from_vertices(line);
    FAIL("expected DegenerateBody");
  } catch (const DegenerateBody& e) {
    CHECK(e.achieved_dim() == 1);
  }
  std::vector<Vec> plane{make_vec({0, 0, 0}), make_vec({1, 0, 0}), make_vec({0, 1, 0}),
                         make_vec({1, 1, 0})};
  CHECK_THROWS_AS(hull_from_vertices(plane), DegenerateBody);
}

TEST_CASE("hexagon volume and facet invariants on catalog bodies") {
  std::vector<Vec> hex{make_vec({1, 0}),  make_vec({-1, 0}), make_vec({0, 1}),
                       make_vec({0, -1}), make_vec({1, -1}), make_vec({-1, 1})};
  CHECK(hull_from_vertices(hex).volume() == doctest::Approx(3.0));
  for (int n = 2; n <= 4; ++n) {
    for (const auto& entry : builtin_catalog(n)) {
      const auto* p = std::get_if<Polytope>(&entry.body);
      if (!p) continue;
      CHECK(closedness(*p).norm() <= 1e-9);
      for (const Vec& v : p->vertices())
        for (const Facet& f : p->facets()) CHECK(v.dot(f.normal) <= f.offset + 1e-9);
    }
  }
  CHECK(cube(3).volume() == doctest::Approx(1.0));
  CHECK(cube(4).volume() == doctest::Approx(1.0));
  CHECK(cube(3).facets().size() == 6);
  CHECK(cube(4).facets().size() == 8);
  CHECK(simplex(3).volume() == doctest::Approx(1.0 / 6.0));
  CHECK(simplex(4).volume() == doctest::Approx(1.0 / 24.0));
  CHECK(cross_polytope(4).volume() == doctest::Approx(16.0 / 24.0));
  CHECK(cube(3).surface_area() == doctest::Approx(6.0));
}

TEST_CASE("support and radial functions") {
  const Polytope sq = hull_from_vertices(square_points(-1, 1));
  CHECK(sq.support(unit_vector(2, 0)) == doctest::Approx(1.0));
  CHECK(radial_polytope(sq, unit_vector(2, 0)) == doctest::Approx(1.0));
  CHECK(radial_polytope(sq, make_vec({1, 1}) / std::sqrt(2.0)) == doctest::Approx(std::sqrt(2.0)));
  const Polytope cross = cross_polytope(2);
  CHECK(radial_polytope(cross, make_vec({1, 1}) / std::sqrt(2.0)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(radial_polytope(simplex(2), unit_vector(2, 0)), InvalidBody);

  const Ellipsoid e = Ellipsoid::ball(2, 2.0);
  CHECK(e.support(make_vec({0.6, 0.8})) == doctest::Approx(2.0));
  CHECK(e.radial(make_vec({0.6, 0.8})) == doctest::Approx(2.0));

  const SegmentHull c({make_vec({1, 0}), make_vec({0, 1})});
  CHECK(c.support(make_vec({-1, -1})) == 0.0);
  CHECK(c.support(make_vec({2, -1})) == 2.0);

  // Radial consistency: rho u is on the boundary.
  for (const Vec& u : sphere_sample(2, 100, 5)) {
    const double r = radial_polytope(cross, u);
    CHECK(cross.contains((r - 1e-7) * u));
    CHECK_FALSE(cross.contains((r + 1e-6) * u));
  }
}

TEST_CASE("support is sublinear and 1-homogeneous") {
  for (const auto& entry : builtin_catalog(3)) {
    const auto pts = sphere_sample(3, 2000, 17);
    for (int i = 0; i < 1000; ++i) {
      const Vec& u = pts[2 * i];
      const Vec& v = pts[2 * i + 1];
      CHECK(support(entry.body, u + v) <= support(entry.body, u) + support(entry.body, v) + 1e-12);
      CHECK(support(entry.body, 2.5 * u) == doctest::Approx(2.5 * support(entry.body, u)));
    }
  }
}

TEST_CASE("mixed_volume_first") {
  const Polytope sq = hull_from_vertices(square_points(0, 1));
  CHECK(mixed_volume_first(sq, [&](const Vec& u) { return sq.support(u); }) == doctest::Approx(1.0));
  CHECK(mixed_volume_first(sq, [](const Vec& u) { return u.norm(); }) == doctest::Approx(2.0));
  const SegmentHull seg({make_vec({-1, 0})});
  const double v = mixed_volume_first(simplex(2), [&](const Vec& u) { return seg.support(u); });
  CHECK(2.0 * v == doctest::Approx(1.0));
}

TEST_CASE("Minkowski and Brunn-Minkowski on polytope pairs") {
  for (int n = 2; n <= 3; ++n) {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const Polytope p = random_polytope(n, s);
      const Polytope q = random_polytope(n, s + 10);
      std::vector<Vec> sum;
      for (const Vec& a : p.vertices())
        for (const Vec& b : q.vertices()) sum.push_back(0.5 * (a + b));
      const Polytope mid = hull_from_vertices(sum);
      CHECK(std::pow(mid.volume(), 1.0 / n) >=
            0.5 * (std::pow(p.volume(), 1.0 / n) + std::pow(q.volume(), 1.0 / n)) - 1e-9);
      const double v1 = mixed_volume_first(p, [&](const Vec& u) { return q.support(u); });
      CHECK(std::pow(v1, n) >= std::pow(p.volume(), n - 1) * q.volume() - 1e-9);
      const Polytope dilate = apply_linear(p, Mat::Identity(n, n) * 1.7).translated(Vec::Ones(n));
      const double eq = mixed_volume_first(p, [&](const Vec& u) { return dilate.support(u); });
      CHECK(std::abs(std::pow(eq, n) - std::pow(p.volume(), n - 1) * dilate.volume()) <= 1e-9);
    }
  }
}

TEST_CASE("mean width") {
  const auto ball = mean_width([](const Vec& u) { return u.norm(); }, 2, 1000, 1);
  CHECK(ball.value == doctest::Approx(1.0));
  const SegmentHull seg({make_vec({1, 0})});
  const auto w = mean_width([&](const Vec& u) { return seg.support(u); }, 2, 200000, 3);
  CHECK(std::abs(w.value - 1.0 / std::numbers::pi) <= 4.0 * w.std_error);
  CHECK(segment_hull_mean_width(seg) == doctest::Approx(1.0 / std::numbers::pi));
  const SegmentHull tri({make_vec({1, 0}), make_vec({0, 1})});
  const double expected = (2.0 + std::sqrt(2.0)) / (2.0 * std::numbers::pi);
  CHECK(segment_hull_mean_width(tri) == doctest::Approx(expected).epsilon(1e-12));
  const auto wt = mean_width([&](const Vec& u) { return tri.support(u); }, 2, 200000, 5);
  CHECK(std::abs(wt.value - expected) <= 4.0 * wt.std_error);
}

TEST_CASE("exact segment hull sphere integral agrees with Monte Carlo") {
  for (int n = 2; n <= 4; ++n) {
    for (int m = 1; m <= 3; ++m) {
      const auto dirs = sphere_sample(n * m, 3, static_cast<std::uint64_t>(10 * n + m));
      for (const Vec& d : dirs) {
        const SegmentHull c = SegmentHull::of(BlockVector(n, d));
        const double exact = segment_hull_sphere_integral(c);
        const auto mc = mc_sphere_integral([&](const Vec& u) { return c.support(u); }, n, 200000, 77);
        CHECK(std::abs(exact - mc.value) <= 4.0 * mc.std_error);
      }
    }
  }
  // Unit cube edge formula via a tetrahedral corner: conv{o, e1, e2, e3} in R^3.
  const SegmentHull corner({unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)});
  const auto mc = mc_sphere_integral([&](const Vec& u) { return corner.support(u); }, 3, 400000, 9);
  CHECK(std::abs(segment_hull_sphere_integral(corner) - mc.value) <= 4.0 * mc.std_error);
}

TEST_CASE("linear maps and lifts") {
  const Polytope sq = hull_from_vertices(square_points(0, 1));
  Mat t = Mat::Zero(2, 2);
  t(0, 0) = 2;
  t(1, 1) = 1;
  CHECK(apply_linear(sq, t).volume() == doctest::Approx(2.0));
  const BlockVector x = BlockVector::from_blocks({make_vec({1, 0}), make_vec({0, 1})});
  const BlockVector y = apply(lift(t, 2), x);
  CHECK(y.block(0) == make_vec({2, 0}));
  CHECK(y.block(1) == make_vec({0, 1}));
  CHECK_THROWS_AS(apply_linear(sq, Mat::Zero(2, 2)), SingularMap);

  const double a = 0.7;
  Mat rot(2, 2);
  rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  const Ellipsoid b = Ellipsoid::ball(2);
  const Ellipsoid rb = apply_linear(b, rot);
  for (const Vec& u : sphere_sample(2, 100, 3)) CHECK(rb.support(u) == doctest::Approx(b.support(u)));
}

TEST_CASE("ellipsoid volume and surface area") {
  CHECK(Ellipsoid::ball(3).surface_area() == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
  CHECK(Ellipsoid::ball(4, 2.0).surface_area() ==
        doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi * 8.0).epsilon(1e-10));
  Mat t = Mat::Zero(2, 2);
  t(0, 0) = 2.0;
  t(1, 1) = 1.0;
  const Ellipsoid e(Vec::Zero(2), t);
  // Perimeter 4 a E(k) with k^2 = 1 - b^2/a^2.
  const double perimeter = 4.0 * 2.0 * std::comp_ellint_2(std::sqrt(1.0 - 0.25));
  CHECK(e.surface_area() == doctest::Approx(perimeter).epsilon(1e-12));
  CHECK(e.volume() == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(standard_ellipsoid(3).is_ball() == false);
  CHECK(Ellipsoid::ball(3, 1.5).is_ball());
}

TEST_CASE("JSON catalog parsing") {
  const std::string text = R"([
  {"name": "tri", "type": "polytope", "dim": 2, "vertices": [[0,0],[1,0],[0,1]]},
  {"type": "ellipsoid", "dim": 2, "factor": [[2,0],[0,1]], "center": [0.5, 0]},
  {"type": "cube", "dim": 3},
  {"type": "ball", "dim": 2, "radius": 2}
])";
  const auto bodies = parse_catalog(text);
  REQUIRE(bodies.size() == 4);
  CHECK(bodies[0].name == "tri");
  CHECK(volume(bodies[0].body) == doctest::Approx(0.5));
  CHECK(volume(bodies[1].body) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(volume(bodies[2].body) == doctest::Approx(1.0));
  CHECK(volume(bodies[3].body) == doctest::Approx(4.0 * std::numbers::pi));

  try {
    parse_catalog("[\n {\"type\": \"cube\", \"dim\": 2},\n {\"type\": \"blob\", \"dim\": 2}\n]");
    FAIL("expected CatalogError");
  } catch (const CatalogError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_catalog("[\n {\"type\": \"cube\",\n \"dim\": }\n]");
    FAIL("expected CatalogError");
  } catch (const CatalogError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("hull volume survives near-duplicate and coplanar points") {
  for (int d = 3; d <= 4; ++d) {
    for (int trial = 0; trial < 40; ++trial) {
      CounterRng rng(trial, d);
      std::vector<Vec> pts;
      for (int mask = 0; mask < (1 << d); ++mask) {
        Vec v(d);
        for (int j = 0; j < d; ++j) v(j) = (mask >> j) & 1;
        pts.push_back(v);
        // Copies pulled inside by 1e-13 .. 1e-5.
        const double eps = std::pow(10.0, -5 - trial % 9);
        for (int k = 0; k < 2; ++k) {
          Vec w = v;
          for (int j = 0; j < d; ++j) w(j) += (v(j) > 0.5 ? -1 : 1) * eps * rng.uniform();
          pts.push_back(w);
        }
      }
      for (int k = 0; k < 20; ++k) {
        Vec v(d);
        for (int j = 0; j < d; ++j) v(j) = rng.uniform();
        v(k % d) = (k / d) % 2;
        pts.push_back(v);
      }
      CHECK(hull_volume(pts) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}
