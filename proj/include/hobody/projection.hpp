#pragma once

// Higher-order projection bodies Pi^m K and their polars.
//
//   h_{Pi^m K}(theta) = n V(K[n-1], C_{-theta}),  C_theta = conv{o, theta_1, ..., theta_m}.

#include "hobody/bodies.hpp"
#include "hobody/quadrature.hpp"

namespace hobody {

/// Exact facet sum  sum_F a_F max_i <theta_i, u_F>_- .
double proj_support(const Polytope& k, const DirectionTuple& theta);

/// h_{Pi^m (R B_2^n)}(theta) = R^{n-1} times the integral of h_{C_theta} over S^{n-1}; exact.
double proj_support_ball(double radius, int n, const DirectionTuple& theta);

/// Monte Carlo estimate of the same quantity through the mean width of C_theta.
MCEstimate proj_support_ball_mc(double radius, int n, const DirectionTuple& theta,
                                std::size_t count, std::uint64_t seed);

/// Ellipsoids reduce to the ball: h_{Pi^m TB}(theta) = |det T| h_{Pi^m B}(T^{-1} theta) blockwise.
double proj_support(const Ellipsoid& e, const DirectionTuple& theta);

double proj_support(const Body& k, const DirectionTuple& theta);

/// Radial oracle of Pi^{o,m} K on S^{nm-1}: rho = 1 / h_{Pi^m K}.
/// Bounding radius from a support scan over `scan` directions with 10% slack.
StarBodyOracle polar_proj_oracle(const Body& k, int m, std::size_t scan = 10'000,
                                 std::uint64_t seed = 0x5343414EULL);

/// Vol_n(K)^{nm-m} Vol_{nm}(Pi^{o,m} K).
MCEstimate petty_product(const Body& k, int m, std::size_t count, std::uint64_t seed);

/// Vol_{nm}(Pi^{o,m} K) Vol_{n-1}(boundary K)^{nm}.
MCEstimate petty_isoperimetric(const Body& k, int m, std::size_t count, std::uint64_t seed);

/// Vol_n(Pi^o B_2^n) = kappa_n / kappa_{n-1}^n.
double ball_polar_projection_volume(int n);

/// Vol_{nm}(Pi^{o,m} B_2^n): closed form for m = 1, Monte Carlo otherwise.
MCEstimate ball_polar_projection_volume(int n, int m, std::size_t count, std::uint64_t seed);

/// Lower bound binom(nm+n, n) / n^{nm} on the Petty product.
double zhang_bound(int n, int m);

}  // namespace hobody
