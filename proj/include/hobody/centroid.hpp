#pragma once

// Higher-order centroid bodies Gamma^m L of star bodies L in R^{nm}:
//
//   h_{Gamma^m L}(theta) = (1/Vol(L)) int_L max_i <x_i, theta>_- dx,
//
// together with the dual mixed volume V~_{-1}, the duality identity linking
// them to Pi^{o,m} K, and the random-simplex functional.
//
// Every estimator draws X = (x_1, ..., x_m) uniformly in L through the
// counter-based stream `seed`, so calls sharing a seed share their samples.

#include "hobody/bodies.hpp"
#include "hobody/quadrature.hpp"

#include <vector>

namespace hobody {

/// Monte Carlo support evaluator of Gamma^m L; the samples are drawn once.
class CentroidBody {
 public:
  CentroidBody(const StarBodyOracle& l, int n, std::size_t count, std::uint64_t seed);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<BlockVector>& samples() const { return samples_; }

  MCEstimate support(const Vec& theta) const;
  /// A point of the boundary of the sampled body with outer normal u.
  Vec support_point(const Vec& u) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<BlockVector> samples_;
};

/// Mean of max_i <x_i, theta>_- over uniform samples of L; m = dim(L) / dim(theta).
MCEstimate centroid_support(const StarBodyOracle& l, const Vec& theta, std::size_t count,
                            std::uint64_t seed);

/// Exact h_{Gamma^m L}(theta) for a polytope L of R^{nm}. The integrand is
/// linear on each cell {<x_i, theta> <= min(0, <x_j, theta>)}, so the integral
/// reduces to cell volumes and centroids.
double centroid_support_exact(const Polytope& l, const Vec& theta);

/// Same samples mapped through T-bar: estimates h_{Gamma^m (T-bar L)}(theta).
MCEstimate centroid_support_mapped(const StarBodyOracle& l, const Mat& t, const Vec& theta,
                                   std::size_t count, std::uint64_t seed);

/// Radial oracle of T-bar L = diag(T, ..., T) L.
StarBodyOracle transformed_oracle(const StarBodyOracle& l, const Mat& t);

/// h_{M^m L}(theta) = Vol(L) h_{Gamma^m L}(theta).
MCEstimate moment_support(const StarBodyOracle& l, const Vec& theta, std::size_t count,
                          std::uint64_t seed);

/// V~_{-1}(L[nm+1], M) = (1/(nm)) int_S rho_L^{nm+1} rho_M^{-1}.
MCEstimate dual_mixed_vol_neg1(const StarBodyOracle& l, const StarBodyOracle& m, std::size_t count,
                               std::uint64_t seed);

/// V(K[n-1], Gamma^m L), averaged sample by sample as V(K[n-1], C_{-X}).
MCEstimate centroid_mixed_volume(const Body& k, const StarBodyOracle& l, std::size_t count,
                                 std::uint64_t seed);

struct DualityCheck {
  MCEstimate lhs;          ///< V~_{-1}(L[nm+1], Pi^{o,m} K)
  MCEstimate rhs;          ///< Vol(L) (nm+1)/m V(K[n-1], Gamma^m L)
  double discrepancy = 0.0;
  double std_error = 0.0;  ///< combined
};

DualityCheck duality_check(const Body& k, const StarBodyOracle& l, std::size_t count,
                           std::uint64_t seed);

/// E_{X in L} V(K[n-1], C_X), or C_{-X} when `reflected`.
MCEstimate random_simplex_expectation(const Body& k, const StarBodyOracle& l, std::size_t count,
                                      std::uint64_t seed, bool reflected = false);

struct CentroidVolume {
  double inner = 0.0;    ///< hull of support points of the sampled body
  double outer = 0.0;    ///< intersection of the supporting halfspaces
  MCEstimate volume;     ///< inner volume, with the first-order sampling error
  double approximation = 0.0;  ///< outer - inner
};

/// Vol_n(Gamma^m L) from `directions` support evaluations (n <= 3).
CentroidVolume centroid_volume(const StarBodyOracle& l, int n, std::size_t count,
                               std::uint64_t seed, std::size_t directions = 1000);

struct FunctionalValue {
  MCEstimate value;
  double approximation = 0.0;  ///< deterministic bound from the polytope sandwich
};

/// Vol_n(Gamma^m L) / Vol_{nm}(L)^{1/m}.
FunctionalValue busemann_petty_functional(const StarBodyOracle& l, int n, std::size_t count,
                                          std::uint64_t seed);

/// The same functional at L = Pi^{o,m} B_2^n, where Gamma^m L is the ball of
/// radius m / ((nm+1) kappa_n); only Vol(Pi^{o,m} B) is estimated for m >= 2.
MCEstimate busemann_petty_reference(int n, int m, std::size_t count, std::uint64_t seed);

/// Vol(L)^{-1/(nm)} Vol(K)^{-(n-1)/n} E_L V(K[n-1], C_X).
MCEstimate random_simplex_functional(const Body& k, const StarBodyOracle& l, std::size_t count,
                                     std::uint64_t seed);

/// Value at (B_2^n, Pi^{o,m} B_2^n), where the expectation equals m / (nm+1).
MCEstimate random_simplex_reference(int n, int m, std::size_t count, std::uint64_t seed);

/// The constant h_{Gamma^m (Pi^{o,m} B)} = m / ((nm+1) kappa_n).
double ball_centroid_radius(int n, int m);

}  // namespace hobody
