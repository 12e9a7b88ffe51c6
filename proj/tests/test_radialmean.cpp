#include <doctest.h>

#include "hobody/catalog.hpp"
#include "hobody/projection.hpp"
#include "hobody/radialmean.hpp"

#include <chrono>

using namespace hobody;

namespace {

Polytope interval() { return Polytope::from_points(std::vector<Vec>{make_vec({0.0}), make_vec({1.0})}); }

DirectionTuple tuple(std::initializer_list<Vec> blocks) { return BlockVector::from_blocks(blocks); }

const std::vector<double> kGrid{-0.5, 0.0, 0.5, 1.0, 2.0, 4.0, 8.0};

}  // namespace

TEST_CASE("radial mean of the unit interval") {
  const Polytope seg = interval();
  const DirectionTuple one = tuple({make_vec({1.0})});
  CHECK(rmb_radial(seg, 1, 1.0, one) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rmb_radial(seg, 1, 2.0, one) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  for (double p : kGrid) {
    const double expected = p == 0.0 ? std::exp(-1.0) : std::pow(p + 1.0, -1.0 / p);
    CHECK(rmb_radial(seg, 1, p, one) == doctest::Approx(expected).epsilon(1e-11));
    CHECK(rmb_radial_gauss(seg, 1, p, one) == doctest::Approx(expected).epsilon(1e-8));
  }
  CHECK(rmb_radial(seg, 1, kInfiniteExponent, one) == doctest::Approx(1.0));
  CHECK(rmb_radial(seg, 1, 64.0, one) == doctest::Approx(std::pow(65.0, -1.0 / 64)).epsilon(1e-10));
  CHECK(rmb_radial(seg, 1, 1024.0, one) == doctest::Approx(std::pow(1025.0, -1.0 / 1024)).epsilon(1e-10));
  CHECK_THROWS_AS(rmb_radial(seg, 1, -1.0, one), OutOfRange);
  CHECK_THROWS_AS(rmb_radial(seg, 1, -2.0, one), OutOfRange);
  CHECK_THROWS_AS(rmb_radial_gauss(seg, 1, 1.0, one, 32), InvalidArgument);
}

TEST_CASE("block embedding reduces to m = 1") {
  const Polytope tri = simplex(2);
  for (const Vec& u : sphere_sample(2, 8, 5)) {
    const double single = rmb_radial(tri, 1, 1.5, tuple({u}));
    for (int m = 2; m <= 3; ++m)
      for (int j = 0; j < m; ++j)
        CHECK(rmb_radial(tri, m, 1.5, BlockVector::embed(u, j, m)) == doctest::Approx(single).epsilon(1e-10));
  }
}

TEST_CASE("exact and Gauss-Legendre routes agree") {
  for (int n = 2; n <= 3; ++n) {
    const std::vector<Polytope> bodies{simplex(n), cube(n), random_polytope(n, 2)};
    for (const Polytope& k : bodies) {
      for (int m = 1; m <= 2; ++m) {
        for (const Vec& u : sphere_sample(n * m, 2, 40 + n)) {
          const BlockVector t(n, u);
          for (double p : {-0.5, 0.0, 1.0, 3.0}) {
            CHECK(rmb_radial(k, m, p, t) == doctest::Approx(rmb_radial_gauss(k, m, p, t)).epsilon(1e-7));
          }
        }
      }
    }
  }
}

TEST_CASE("p = 0 agrees with the log-min Monte Carlo form") {
  const Polytope k = random_polytope(2, 6);
  for (int m = 1; m <= 2; ++m) {
    const BlockVector t(2, sphere_point(2 * m, 9, m));
    const MCEstimate mc = rmb_radial_zero_mc(k, t, 40000, 11);
    const double exact = rmb_radial(k, m, 0.0, t);
    CHECK(std::abs(mc.value - exact) <= std::max(4.0 * mc.std_error, 1e-3 * exact));
  }
}

TEST_CASE("monotone in p and the two limits") {
  for (int n = 2; n <= 3; ++n) {
    const Polytope k = random_polytope(n, 3);
    for (int m = 1; m <= 2; ++m) {
      for (const Vec& u : sphere_sample(n * m, 6, 77)) {
        const BlockVector t(n, u);
        double prev = 0.0;
        for (double p : kGrid) {
          const double rho = rmb_radial(k, m, p, t);
          CHECK(rho >= prev * (1 - 1e-12));
          prev = rho;
        }
        const double low = std::pow(0.001, -1.0 / 0.999) * rmb_radial(k, m, -0.999, t);
        CHECK(low == doctest::Approx(k.volume() / proj_support(k, t)).epsilon(0.01));
        // The approach to rho_D is logarithmically slow: at p = 64 the Berwald
        // bracket still allows a gap of order log(p) / p.
        const double rd = diff_body_radial(k, t);
        const double r64 = rmb_radial(k, m, 64.0, t);
        CHECK(r64 <= rd);
        CHECK(r64 * berwald_factor(n, 64.0) >= rd * (1 - 1e-9));
        CHECK(rmb_radial(k, m, 1024.0, t) == doctest::Approx(rd).epsilon(0.02));
      }
    }
  }
}

TEST_CASE("Berwald chain") {
  const BerwaldChain seg = berwald_chain_check(interval(), 1, tuple({make_vec({1.0})}), kGrid);
  for (const BerwaldRow& row : seg.rows) CHECK(row.g == doctest::Approx(1.0).epsilon(1e-10));

  const BerwaldChain tri = berwald_chain_check(simplex(2), 1, tuple({unit_vector(2, 0)}), {0.5, 1, 2, 4});
  CHECK(tri.spread < 1e-6);
  CHECK(tri.bracketed);

  const BerwaldChain sq = berwald_chain_check(cube(2), 1, tuple({unit_vector(2, 0)}), {0.5, 1, 2, 4});
  CHECK(sq.monotone);
  CHECK(sq.max_increase < -1e-4);
  CHECK(sq.rows[0].g == doctest::Approx(1.5625).epsilon(1e-10));
  CHECK(sq.rho_polar == doctest::Approx(2.0));

  for (int n = 2; n <= 3; ++n) {
    for (int m = 1; m <= 2; ++m) {
      const Polytope s = simplex(n);
      for (const Vec& u : sphere_sample(n * m, 5, 8)) {
        const BerwaldChain c = berwald_chain_check(s, m, BlockVector(n, u), kGrid);
        CHECK(c.spread < 1e-6);
        CHECK(c.rows.front().g == doctest::Approx(c.rho_difference).epsilon(1e-8));
        const BerwaldChain q = berwald_chain_check(cube(n), m, BlockVector(n, u), kGrid);
        CHECK(q.monotone);
        CHECK(q.bracketed);
      }
    }
  }
  CHECK_THROWS_AS(berwald_chain_check(cube(2), 1, tuple({unit_vector(2, 0)}), {2.0, 1.0}), InvalidArgument);
}

TEST_CASE("volume identity at p = nm") {
  const VolumeIdentity seg = rmb_volume_identity(interval(), 1, 2000, 1);
  CHECK(seg.volume.value == doctest::Approx(1.0).epsilon(1e-10));
  const VolumeIdentity tri = rmb_volume_identity(simplex(2), 1, 4000, 2);
  CHECK(tri.discrepancy <= std::max(3 * tri.volume.std_error, 0.01 * tri.expected));
  const VolumeIdentity sq = rmb_volume_identity(cube(2), 2, 4000, 3);
  CHECK(sq.discrepancy <= std::max(3 * sq.volume.std_error, 0.01 * sq.expected));
}

TEST_CASE("per-direction cost") {
  const Polytope k = random_polytope(3, 1);
  const auto start = std::chrono::steady_clock::now();
  double sum = 0.0;
  for (const Vec& u : sphere_sample(6, 50, 2)) sum += rmb_radial(k, 2, 6.0, BlockVector(3, u));
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("50 radial evaluations, n=3 m=2: " << ms << " ms");
  CHECK(sum > 0.0);
}
