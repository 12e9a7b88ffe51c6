#pragma once

// Higher-order radial mean bodies R_p^m K, through the Mellin transform of
// the m-covariogram along rays:
//
//   p > 0       rho^p = (p / V) int_0^{rho_D} g(r) r^{p-1} dr
//   -1 < p < 0  rho^p = p int_0^{rho_D} (g(r)/V - 1) r^{p-1} dr + rho_D^p
//   p = 0       log rho = log rho_D + (1/V) int_0^{rho_D} (g(r) - V) / r dr
//   p = inf     rho = rho_D

#include "hobody/bodies.hpp"
#include "hobody/covariogram.hpp"
#include "hobody/quadrature.hpp"

#include <limits>
#include <vector>

namespace hobody {

inline constexpr double kInfiniteExponent = std::numeric_limits<double>::infinity();

/// Exact radial function from the piecewise-polynomial covariogram on the ray.
double rmb_radial(const RayCovariogram& ray, double p);
double rmb_radial(const Polytope& k, int m, double p, const DirectionTuple& theta);

/// Adaptive Gauss-Legendre evaluation of the same integrals (independent route).
/// Panels are halved until successive estimates agree to 1e-8 relative;
/// throws PrecisionFailure if that needs more than the refinement budget.
double rmb_radial_gauss(const Polytope& k, int m, double p, const DirectionTuple& theta,
                        int quad_points = 64);

/// p = 0 by Monte Carlo over K: log rho_0 = E_{y in K}[log min_i rho_{K - y}(-theta_i)]
/// for the m-fold tuple; returns (rho_0, standard error of log rho_0).
MCEstimate rmb_radial_zero_mc(const Polytope& k, const DirectionTuple& theta, std::size_t count,
                              std::uint64_t seed);

StarBodyOracle rmb_oracle(const Polytope& k, int m, double p);

struct VolumeIdentity {
  MCEstimate volume;       ///< Vol_{nm}(R^m_{nm} K)
  double expected = 0.0;   ///< Vol_n(K)^m
  double discrepancy = 0.0;
};

VolumeIdentity rmb_volume_identity(const Polytope& k, int m, std::size_t count, std::uint64_t seed);

struct BerwaldRow {
  double p = 0.0;
  double rho = 0.0;
  double g = 0.0;  ///< binom(p+n, n)^{1/p} rho (limit e^{H_n} rho at p = 0)
};

struct BerwaldChain {
  std::vector<BerwaldRow> rows;
  double rho_difference = 0.0;   ///< rho_{D^m K}(theta), the p -> infinity end
  double rho_polar = 0.0;        ///< n Vol(K) rho_{Pi^{o,m} K}(theta), the p -> -1 end
  double max_increase = 0.0;     ///< largest G(p_{k+1}) - G(p_k), positive means a violation
  double spread = 0.0;           ///< max G - min G
  bool monotone = false;         ///< max_increase <= tolerance
  bool bracketed = false;        ///< rho_D <= G(p) <= n Vol rho_polar for all rows
};

/// G(p) = binom(p+n, n)^{1/p} rho_{R_p^m K}(theta), expected non-increasing in p.
BerwaldChain berwald_chain_check(const Polytope& k, int m, const DirectionTuple& theta,
                                 const std::vector<double>& p_list, double tolerance = 1e-6);

/// Normalizing factor binom(p+n, n)^{1/p}, continuous at p = 0.
double berwald_factor(int n, double p);

}  // namespace hobody
