#pragma once

// Exact kernels for polytopes, ellipsoids and the segment hulls C = conv{o, theta_i}.

#include "hobody/core.hpp"
#include "hobody/quadrature.hpp"

#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace hobody {

/// Point of R^{nm} viewed as m blocks of R^n.
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(int n, int m) : n_(n), flat_(Vec::Zero(n * m)) {}
  BlockVector(int n, Vec flat);

  static BlockVector from_blocks(const std::vector<Vec>& blocks);
  /// (o, ..., u, ..., o) with u in block j.
  static BlockVector embed(const Vec& u, int j, int m);

  int n() const { return n_; }
  int m() const { return n_ == 0 ? 0 : static_cast<int>(flat_.size()) / n_; }
  const Vec& flat() const { return flat_; }
  Vec& flat() { return flat_; }

  Vec block(int i) const { return flat_.segment(i * n_, n_); }
  void set_block(int i, const Vec& v) { flat_.segment(i * n_, n_) = v; }

  double norm() const { return flat_.norm(); }
  BlockVector operator-() const { return BlockVector(n_, -flat_); }
  BlockVector operator*(double s) const { return BlockVector(n_, s * flat_); }

 private:
  int n_ = 0;
  Vec flat_;
};

/// theta-bar = (theta_1, ..., theta_m); a point of S^{nm-1} when normalized.
using DirectionTuple = BlockVector;
/// x-bar = (x_1, ..., x_m), translations of the m shifted copies.
using ShiftTuple = BlockVector;

struct Facet {
  Vec normal;          ///< unit outward normal u_F
  double offset = 0.0; ///< b_F, facet on <x, u_F> = b_F
  double measure = 0.0;///< (n-1)-volume a_F
};

/// Full-dimensional convex polytope; V-representation with derived facet data.
class Polytope {
 public:
  /// Convex hull of the points; throws DegenerateBody for lower-dimensional input.
  static Polytope from_points(std::span<const Vec> points);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  double support(const Vec& u) const;
  /// Radial function about the origin; throws InvalidBody unless o is interior.
  double radial(const Vec& u) const;
  double volume() const { return volume_; }
  double surface_area() const;
  Vec vertex_centroid() const;
  bool contains(const Vec& x, double tol = kGeomTol) const;
  bool origin_interior(double tol = kGeomTol) const;

  /// Facet normals as rows, and the matching offsets.
  Eigen::MatrixXd normal_matrix() const;
  Eigen::VectorXd offsets() const;

  Polytope translated(const Vec& t) const;
  Polytope reflected() const;

 private:
  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  double volume_ = 0.0;
};

/// E = T B_2^n + c.
class Ellipsoid {
 public:
  Ellipsoid(Vec center, Mat factor);
  static Ellipsoid ball(int n, double radius = 1.0, Vec center = Vec());

  int dim() const { return static_cast<int>(center_.size()); }
  const Vec& center() const { return center_; }
  const Mat& factor() const { return factor_; }

  double support(const Vec& u) const { return center_.dot(u) + (factor_.transpose() * u).norm(); }
  double radial(const Vec& u) const;
  double volume() const;
  /// Vol_{n-1}(boundary) = |det T| * integral over S^{n-1} of |T^{-1} u|.
  double surface_area() const;
  bool contains(const Vec& x, double tol = kGeomTol) const;
  /// True when the factor is a multiple of the identity.
  bool is_ball(double tol = 1e-12) const;

 private:
  Vec center_;
  Mat factor_;
  Mat inverse_;
};

/// conv{o, theta_1, ..., theta_m}; may be lower-dimensional.
class SegmentHull {
 public:
  explicit SegmentHull(std::vector<Vec> generators) : generators_(std::move(generators)) {}
  static SegmentHull of(const BlockVector& tuple);

  int dim() const { return generators_.empty() ? 0 : static_cast<int>(generators_[0].size()); }
  const std::vector<Vec>& generators() const { return generators_; }
  double support(const Vec& u) const;

 private:
  std::vector<Vec> generators_;
};

using Body = std::variant<Polytope, Ellipsoid>;
using SupportFunction = std::function<double(const Vec&)>;

int dim(const Body& body);
double support(const Body& body, const Vec& u);
double volume(const Body& body);
double surface_area(const Body& body);
SupportFunction support_function(const Body& body);

/// Polytope from a vertex list (the hull_from_vertices operation).
Polytope hull_from_vertices(std::span<const Vec> points);

/// Radial oracle of a body about the origin, with its exact volume attached.
/// Throws InvalidBody unless the origin is interior.
StarBodyOracle star_oracle(const Body& body);

/// Radial function of a polytope about the origin.
double radial_polytope(const Polytope& p, const Vec& u);

/// V(P[n-1], L) = (1/n) sum_F h_L(u_F) a_F.
double mixed_volume_first(const Polytope& p, const SupportFunction& h);

/// Mean width normalized so that w_n(B_2^n) = 1, estimated by sphere sampling.
MCEstimate mean_width(const SupportFunction& h, int n, std::size_t count, std::uint64_t seed);

/// Exact integral of h_C over S^{n-1} for C = conv{o, theta_i} of affine dimension <= 3.
double segment_hull_sphere_integral(const SegmentHull& c);

/// Exact mean width (w_n normalization) of a segment hull.
double segment_hull_mean_width(const SegmentHull& c);

/// Image of a body under a nonsingular linear map.
Polytope apply_linear(const Polytope& p, const Mat& t);
Ellipsoid apply_linear(const Ellipsoid& e, const Mat& t);
Body apply_linear(const Body& body, const Mat& t);

/// Block-diagonal map T-bar = diag(T, ..., T) acting on R^{nm}.
Mat lift(const Mat& t, int m);
BlockVector apply(const Mat& lifted, const BlockVector& x);

/// Throws SingularMap when |det T| < 1e-12.
void require_nonsingular(const Mat& t);

/// Deterministic product-rule integral of f over S^{n-1} (used for smooth integrands).
double sphere_cubature(const std::function<double(const Vec&)>& f, int n, int order = 96);

}  // namespace hobody
