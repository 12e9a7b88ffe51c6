#pragma once

// Steiner symmetrization S_xi of polytopes and the higher-order symmetral
//
//   S-bar_xi L = { (x_i + (t_i - s_i)/2 xi)_i : (x_i + t_i xi)_i in L, (x_i + s_i xi)_i in L },
//
// with x_i in xi-perp, for bodies L in R^{nm}.

#include "hobody/bodies.hpp"
#include "hobody/quadrature.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace hobody {

/// Classical Steiner symmetral of a polytope about xi-perp.
class SteinerSymmetral {
 public:
  SteinerSymmetral(Polytope source, const Vec& xi);

  const Polytope& source() const { return source_; }
  const Vec& xi() const { return xi_; }

  /// [t_min, t_max] of P on the line x + R xi; empty when t_min > t_max.
  std::pair<double, double> chord(const Vec& x) const;
  bool contains(const Vec& z, double tol = kGeomTol) const;
  /// Equal to Vol(P) by Fubini.
  double volume() const { return source_.volume(); }

  /// The symmetral as a polytope, exact for n <= 3: the chord length is affine on
  /// the cells cut out by the projected edges, so its values at projected vertices
  /// and edge crossings determine the body.
  Polytope polytope() const;

 private:
  Polytope source_;
  Vec xi_;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd rate_;  ///< <a_j, xi>
};

SteinerSymmetral steiner(const Polytope& p, const Vec& xi);

/// Convex body given by membership, a bounding box and one interior point.
struct ConvexOracle {
  int dim = 0;
  std::function<bool(const Vec&)> contains;
  Vec lower;
  Vec upper;
  Vec interior;
};

ConvexOracle convex_oracle(const Polytope& p);
ConvexOracle convex_oracle(const Ellipsoid& e);

/// Membership in S-bar_xi L for a polytope L in R^{nm}: feasibility of an LP in
/// the m fibre offsets (s = t - 2r eliminated).
bool higher_steiner_membership(const Polytope& l, const Vec& xi, const Vec& z, double tol = kGeomTol);

/// Same decision for a convex membership oracle. The larger of the two copies'
/// gauges (each found by bisection on membership) is convex in the fibre
/// offsets and is minimized by alternating line searches; the point is a member
/// when the minimum is at most 1. Throws PrecisionFailure when the search does
/// not settle within 1000 rounds.
bool higher_steiner_membership(const ConvexOracle& l, const Vec& xi, const Vec& z);

/// Box containing S-bar_xi L: the midpoint box of L and its blockwise reflection.
std::pair<Vec, Vec> higher_steiner_box(const Polytope& l, const Vec& xi);

/// Bounding-box Monte Carlo estimate of Vol_{nm}(S-bar_xi L).
MCEstimate higher_steiner_volume(const Polytope& l, const Vec& xi, std::size_t count,
                                 std::uint64_t seed);

/// Radial function of S-bar_xi L at theta for a polytope L with o interior:
/// 1 / min_tau max(g(x + tau xi), g(x + (tau - 2r) xi)) with g the gauge of L, one LP.
double higher_steiner_radial(const Polytope& l, const Vec& xi, const Vec& theta);

/// Radial function of S-bar_xi Pi^{o,m} K. Pi^{o,m} K is the polytope
/// {y : sum_F a_F max_i <y_i, u_F>_- <= 1}, so the gauge minimization is one LP
/// with auxiliary variables per facet.
double steiner_polar_projection_radial(const Polytope& k, const Vec& xi, const DirectionTuple& theta);

/// Bisection on membership in S-bar_xi Pi^{o,m} K (LP per step); independent
/// check of the radial LP.
double steiner_polar_projection_radial_bisect(const Polytope& k, const Vec& xi,
                                              const DirectionTuple& theta, double rel_tol = 1e-9);

struct InclusionRow {
  DirectionTuple theta;
  double left = 0.0;    ///< rho of S-bar_xi Pi^{o,m} K
  double right = 0.0;   ///< rho of Pi^{o,m} S_xi K
  double margin = 0.0;  ///< (right - left) / right
};

struct InclusionReport {
  std::vector<InclusionRow> rows;
  double min_margin = 0.0;
  bool holds = false;   ///< min_margin >= -slack
};

/// S-bar_xi Pi^{o,m} K subset of Pi^{o,m} S_xi K along the given directions.
InclusionReport steiner_inclusion_check(const Polytope& k, const Vec& xi,
                                        const std::vector<DirectionTuple>& directions,
                                        double slack = 0.01);

/// Same with `count` uniform directions on S^{nm-1}.
InclusionReport steiner_inclusion_check(const Polytope& k, int m, const Vec& xi, std::size_t count,
                                        std::uint64_t seed, double slack = 0.01);

struct PettyStep {
  MCEstimate before;   ///< Vol(K)^{nm-m} Vol(Pi^{o,m} K)
  MCEstimate after;    ///< same for S_xi K
  double std_error = 0.0;
  bool holds = false;  ///< before <= after + 3 std_error
};

/// One step of the Petty chain; both sides share the seed.
PettyStep petty_step(const Polytope& k, int m, const Vec& xi, std::size_t count, std::uint64_t seed);

}  // namespace hobody
