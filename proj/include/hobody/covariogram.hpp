#pragma once

// The m-covariogram g_{K,m}(x) = Vol(K ∩ (x_1 + K) ∩ ... ∩ (x_m + K)), the
// higher-order difference body D^m(K), and the derivative of g at the origin.

#include "hobody/bodies.hpp"
#include "hobody/quadrature.hpp"

#include <array>
#include <optional>
#include <vector>

namespace hobody {

/// Vertices of a bounded full-dimensional H-polytope {A y <= b}, with the
/// n constraint indices that define each vertex.
struct HalfspaceVertices {
  std::vector<Vec> vertices;
  std::vector<std::array<int, 4>> active;
  Vec interior;            ///< Chebyshev center
  double inradius = 0.0;
};

/// Largest ball inside {A y <= b}: returns (center, radius); radius <= 0 when the set is thin or empty.
std::pair<Vec, double> chebyshev_center(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

/// Vertex enumeration through the hull of the polar point set about the
/// Chebyshev center; nullopt when the set is empty or has empty interior.
std::optional<HalfspaceVertices> enumerate_vertices(const Eigen::MatrixXd& A,
                                                    const Eigen::VectorXd& b,
                                                    double min_inradius = 1e-12);

/// Volume of {A y <= b} (bounded), zero when empty or thin.
double halfspace_volume(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

/// g_{P,m}(x) from the F shifted offsets b_j + min(0, min_i <a_j, x_i>).
double m_covariogram(const Polytope& p, const ShiftTuple& x);

/// Same value from the full (m+1)F-row system; kept as an independent check.
double m_covariogram_full(const Polytope& p, const ShiftTuple& x);

/// c_j = max_i <a_j, theta_i>_-, so that g(r theta) = Vol{A y <= b - r c}.
Eigen::VectorXd ray_offsets(const Polytope& p, const DirectionTuple& theta);

/// rho_{D^m P}(theta): max r subject to A y + r c <= b.
double diff_body_radial(const Polytope& p, const DirectionTuple& theta);

/// rho_{D^m P}(theta) from max r s.t. A y <= b, A (y - r theta_i) <= b for all i.
double diff_body_radial_full(const Polytope& p, const DirectionTuple& theta);

StarBodyOracle diff_body_oracle(const Polytope& p, int m);

/// MC estimate of Vol_{nm}(D^m P).
MCEstimate diff_body_volume(const Polytope& p, int m, std::size_t count, std::uint64_t seed);

/// One polynomial piece of r -> g(r theta) on [a, b], in t = (r - center) / scale.
struct CovariogramPiece {
  double a = 0.0;
  double b = 0.0;
  double center = 0.0;
  double scale = 1.0;
  int degree = 0;
  std::array<double, 5> coef{};  ///< coefficients of t^k, k <= degree

  double operator()(double r) const;
  /// Coefficients of r^k about r = 0.
  std::array<double, 5> monomial() const;
};

/// Exact piecewise-polynomial restriction of the covariogram to a ray.
///
/// Between combinatorial events every vertex of {A y <= b - r c} moves linearly,
/// so g is a polynomial of degree <= n; the pieces are found by locating the
/// next event from a probe inside each unresolved interval.
class RayCovariogram {
 public:
  RayCovariogram(const Polytope& p, const DirectionTuple& theta);

  double volume() const { return volume_; }
  double radius() const { return radius_; }
  const std::vector<CovariogramPiece>& pieces() const { return pieces_; }
  double operator()(double r) const;

 private:
  void cover(double a, double b, int depth);

  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd c_;
  double volume_ = 0.0;
  double radius_ = 0.0;
  std::vector<CovariogramPiece> pieces_;
};

struct DerivativeCheck {
  double slope = 0.0;        ///< extrapolated one-sided derivative at 0+
  double expected = 0.0;     ///< -h_{Pi^m P}(theta)
  double discrepancy = 0.0;
};

/// Polynomial (Neville) extrapolation to step 0 of one-sided difference quotients.
DerivativeCheck covariogram_derivative_check(const Polytope& p, const DirectionTuple& theta,
                                             const std::vector<double>& steps);

}  // namespace hobody
