#include "hobody/bodies.hpp"

#include "hobody/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace hobody {

// ---------------------------------------------------------------------------
// BlockVector

BlockVector::BlockVector(int n, Vec flat) : n_(n), flat_(std::move(flat)) {
  if (n < 1 || flat_.size() % n != 0)
    throw InvalidArgument("block vector length is not a multiple of the block size");
}

BlockVector BlockVector::from_blocks(const std::vector<Vec>& blocks) {
  if (blocks.empty()) throw InvalidArgument("tuple needs at least one block");
  const int n = static_cast<int>(blocks[0].size());
  BlockVector out(n, static_cast<int>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() != n) throw InvalidArgument("tuple blocks differ in dimension");
    out.set_block(static_cast<int>(i), blocks[i]);
  }
  return out;
}

BlockVector BlockVector::embed(const Vec& u, int j, int m) {
  if (j < 0 || j >= m) throw OutOfRange("block index outside the tuple");
  BlockVector out(static_cast<int>(u.size()), m);
  out.set_block(j, u);
  return out;
}

// ---------------------------------------------------------------------------
// Polytope

Polytope Polytope::from_points(std::span<const Vec> points) {
  const Hull hull = convex_hull(points);
  Polytope p;
  p.dim_ = hull.dim;
  p.volume_ = hull.volume;
  for (int idx : hull.vertices) p.vertices_.push_back(points[idx]);

  // Merge coplanar simplicial facets into geometric facets.
  for (const HullFacet& f : hull.facets) {
    auto same = std::find_if(p.facets_.begin(), p.facets_.end(), [&](const Facet& g) {
      return (g.normal - f.normal).norm() < 1e-8 && std::abs(g.offset - f.offset) < 1e-8;
    });
    if (same != p.facets_.end()) {
      same->measure += f.measure;
    } else {
      p.facets_.push_back(Facet{f.normal, f.offset, f.measure});
    }
  }
  return p;
}

double Polytope::support(const Vec& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& v : vertices_) best = std::max(best, v.dot(u));
  return best;
}

double Polytope::radial(const Vec& u) const {
  if (!origin_interior()) throw InvalidBody("origin is not an interior point of the polytope");
  double best = std::numeric_limits<double>::infinity();
  for (const Facet& f : facets_) {
    const double c = f.normal.dot(u);
    if (c > 0.0) best = std::min(best, f.offset / c);
  }
  return best;
}

double Polytope::surface_area() const {
  double s = 0.0;
  for (const Facet& f : facets_) s += f.measure;
  return s;
}

Vec Polytope::vertex_centroid() const {
  Vec c = Vec::Zero(dim_);
  for (const Vec& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

bool Polytope::contains(const Vec& x, double tol) const {
  for (const Facet& f : facets_)
    if (f.normal.dot(x) > f.offset + tol) return false;
  return true;
}

bool Polytope::origin_interior(double tol) const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return f.offset > tol; });
}

Eigen::MatrixXd Polytope::normal_matrix() const {
  Eigen::MatrixXd a(facets_.size(), dim_);
  for (std::size_t i = 0; i < facets_.size(); ++i) a.row(i) = facets_[i].normal.transpose();
  return a;
}

Eigen::VectorXd Polytope::offsets() const {
  Eigen::VectorXd b(facets_.size());
  for (std::size_t i = 0; i < facets_.size(); ++i) b(i) = facets_[i].offset;
  return b;
}

Polytope Polytope::translated(const Vec& t) const {
  Polytope p = *this;
  for (Vec& v : p.vertices_) v += t;
  for (Facet& f : p.facets_) f.offset += f.normal.dot(t);
  return p;
}

Polytope Polytope::reflected() const {
  Polytope p = *this;
  for (Vec& v : p.vertices_) v = -v;
  for (Facet& f : p.facets_) f.normal = -f.normal;
  return p;
}

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(Vec center, Mat factor) : center_(std::move(center)), factor_(std::move(factor)) {
  if (factor_.rows() != center_.size() || factor_.cols() != center_.size())
    throw InvalidArgument("ellipsoid factor and center dimensions differ");
  require_nonsingular(factor_);
  inverse_ = factor_.inverse();
}

Ellipsoid Ellipsoid::ball(int n, double radius, Vec center) {
  if (radius <= 0.0) throw InvalidArgument("ball radius must be positive");
  if (center.size() == 0) center = Vec::Zero(n);
  return Ellipsoid(std::move(center), Mat::Identity(n, n) * radius);
}

double Ellipsoid::radial(const Vec& u) const {
  // Solve |T^{-1}(lambda u - c)| = 1 for the positive root.
  const Vec a = inverse_ * u;
  const Vec w = inverse_ * center_;
  const double ww = w.squaredNorm();
  if (ww >= 1.0 - kGeomTol) throw InvalidBody("origin is not an interior point of the ellipsoid");
  const double aa = a.squaredNorm();
  const double aw = a.dot(w);
  return (aw + std::sqrt(aw * aw - aa * (ww - 1.0))) / aa;
}

double Ellipsoid::volume() const { return std::abs(factor_.determinant()) * ball_volume(dim()); }

double Ellipsoid::surface_area() const {
  const int n = dim();
  const double det = std::abs(factor_.determinant());
  return det * sphere_cubature([&](const Vec& u) { return (inverse_ * u).norm(); }, n);
}

bool Ellipsoid::contains(const Vec& x, double tol) const {
  return (inverse_ * (x - center_)).norm() <= 1.0 + tol;
}

bool Ellipsoid::is_ball(double tol) const {
  const Mat g = factor_ * factor_.transpose();
  const double s = g.trace() / dim();
  return (g - s * Mat::Identity(dim(), dim())).norm() <= tol * std::max(1.0, s);
}

// ---------------------------------------------------------------------------
// SegmentHull

SegmentHull SegmentHull::of(const BlockVector& tuple) {
  std::vector<Vec> g;
  for (int i = 0; i < tuple.m(); ++i) g.push_back(tuple.block(i));
  return SegmentHull(std::move(g));
}

double SegmentHull::support(const Vec& u) const {
  double best = 0.0;
  for (const Vec& t : generators_) best = std::max(best, t.dot(u));
  return best;
}

// ---------------------------------------------------------------------------
// Body dispatch

int dim(const Body& body) {
  return std::visit([](const auto& b) { return b.dim(); }, body);
}

double support(const Body& body, const Vec& u) {
  return std::visit([&](const auto& b) { return b.support(u); }, body);
}

double volume(const Body& body) {
  return std::visit([](const auto& b) { return b.volume(); }, body);
}

double surface_area(const Body& body) {
  return std::visit([](const auto& b) { return b.surface_area(); }, body);
}

SupportFunction support_function(const Body& body) {
  return [body](const Vec& u) { return support(body, u); };
}

Polytope hull_from_vertices(std::span<const Vec> points) { return Polytope::from_points(points); }

double radial_polytope(const Polytope& p, const Vec& u) { return p.radial(u); }

StarBodyOracle star_oracle(const Body& body) {
  StarBodyOracle o;
  o.dim = dim(body);
  o.exact_volume = volume(body);
  if (const auto* p = std::get_if<Polytope>(&body)) {
    if (!p->origin_interior()) throw InvalidBody("origin is not an interior point of the polytope");
    for (const Vec& v : p->vertices()) o.bounding_radius = std::max(o.bounding_radius, v.norm());
    // Facets with positive offsets only; the origin check is done once here.
    o.radial = [facets = p->facets()](const Vec& u) {
      double best = std::numeric_limits<double>::infinity();
      for (const Facet& f : facets) {
        const double c = f.normal.dot(u);
        if (c > 0.0) best = std::min(best, f.offset / c);
      }
      return best;
    };
  } else {
    const auto& e = std::get<Ellipsoid>(body);
    e.radial(unit_vector(e.dim(), 0));
    o.bounding_radius = e.center().norm() + e.factor().operatorNorm();
    o.radial = [e](const Vec& u) { return e.radial(u); };
  }
  return o;
}

double mixed_volume_first(const Polytope& p, const SupportFunction& h) {
  double s = 0.0;
  for (const Facet& f : p.facets()) s += h(f.normal) * f.measure;
  return s / p.dim();
}

MCEstimate mean_width(const SupportFunction& h, int n, std::size_t count, std::uint64_t seed) {
  MCEstimate e = mc_sphere_integral(h, n, count, seed);
  const double scale = sphere_area(n);
  e.value /= scale;
  e.std_error /= scale;
  return e;
}

// ---------------------------------------------------------------------------
// Exact sphere integral of a segment hull support function

namespace {

/// Integral of h over S^{k-1} for the hull of {o} and the given points in R^k, k <= 3.
double full_dim_sphere_integral(const std::vector<Vec>& pts, int k) {
  if (k == 1) {
    double hi = 0.0, lo = 0.0;
    for (const Vec& q : pts) {
      hi = std::max(hi, q(0));
      lo = std::min(lo, q(0));
    }
    return hi - lo;
  }
  std::vector<Vec> all = pts;
  all.push_back(Vec::Zero(k));
  const Hull hull = convex_hull(all);
  if (k == 2) {
    double perimeter = 0.0;
    for (const HullFacet& f : hull.facets) perimeter += f.measure;
    return perimeter;
  }
  // k == 3: half the sum over edges of length times exterior dihedral angle.
  std::map<std::pair<int, int>, std::vector<int>> edges;
  for (int fi = 0; fi < static_cast<int>(hull.facets.size()); ++fi) {
    const auto& v = hull.facets[fi].vertices;
    for (int a = 0; a < 3; ++a) {
      int i = v[a], j = v[(a + 1) % 3];
      if (i > j) std::swap(i, j);
      edges[{i, j}].push_back(fi);
    }
  }
  double total = 0.0;
  for (const auto& [e, fs] : edges) {
    if (fs.size() != 2) throw PrecisionFailure("hull boundary is not a closed surface");
    const double c = std::clamp(hull.facets[fs[0]].normal.dot(hull.facets[fs[1]].normal), -1.0, 1.0);
    total += (all[e.first] - all[e.second]).norm() * std::acos(c);
  }
  return 0.5 * total;
}

/// E|P u| for u uniform on S^{n-1} and P the projection onto a k-dimensional subspace.
double mean_projection_length(int n, int k) {
  return std::exp(std::lgamma(0.5 * n) + std::lgamma(0.5 * (k + 1)) - std::lgamma(0.5 * k) -
                  std::lgamma(0.5 * (n + 1)));
}

}  // namespace

double segment_hull_sphere_integral(const SegmentHull& c) {
  const int n = c.dim();
  if (n == 0) return 0.0;
  double scale = 0.0;
  for (const Vec& t : c.generators()) scale = std::max(scale, t.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;

  std::vector<Vec> basis;
  for (const Vec& t : c.generators()) {
    Vec r = t;
    for (const Vec& b : basis) r -= r.dot(b) * b;
    if (r.norm() > kGeomTol * scale) basis.push_back(r / r.norm());
  }
  const int k = static_cast<int>(basis.size());
  if (k == 0) return 0.0;
  if (k > 3) throw InvalidArgument("exact segment hull integral supports affine dimension <= 3");

  std::vector<Vec> pts;
  for (const Vec& t : c.generators()) {
    Vec q(k);
    for (int j = 0; j < k; ++j) q(j) = basis[j].dot(t);
    pts.push_back(q);
  }
  const double ik = full_dim_sphere_integral(pts, k);
  return sphere_area(n) * mean_projection_length(n, k) * ik / sphere_area(k);
}

double segment_hull_mean_width(const SegmentHull& c) {
  return segment_hull_sphere_integral(c) / sphere_area(c.dim());
}

// ---------------------------------------------------------------------------
// Linear images

void require_nonsingular(const Mat& t) {
  if (t.rows() != t.cols()) throw InvalidArgument("linear map must be square");
  if (std::abs(t.determinant()) < 1e-12) throw SingularMap("linear map is singular (|det T| < 1e-12)");
}

Polytope apply_linear(const Polytope& p, const Mat& t) {
  require_nonsingular(t);
  if (t.rows() != p.dim()) throw InvalidArgument("linear map dimension differs from the body");
  std::vector<Vec> pts;
  for (const Vec& v : p.vertices()) pts.push_back(t * v);
  return Polytope::from_points(pts);
}

Ellipsoid apply_linear(const Ellipsoid& e, const Mat& t) {
  require_nonsingular(t);
  if (t.rows() != e.dim()) throw InvalidArgument("linear map dimension differs from the body");
  return Ellipsoid(t * e.center(), t * e.factor());
}

Body apply_linear(const Body& body, const Mat& t) {
  return std::visit([&](const auto& b) -> Body { return apply_linear(b, t); }, body);
}

Mat lift(const Mat& t, int m) {
  const int n = static_cast<int>(t.rows());
  if (n * m > kMaxDim) throw InvalidArgument("lifted dimension exceeds kMaxDim");
  Mat out = Mat::Zero(n * m, n * m);
  for (int i = 0; i < m; ++i) out.block(i * n, i * n, n, n) = t;
  return out;
}

BlockVector apply(const Mat& lifted, const BlockVector& x) {
  return BlockVector(x.n(), lifted * x.flat());
}

// ---------------------------------------------------------------------------
// Product rule on the sphere

namespace {

double cubature_rec(const std::function<double(const Vec&)>& f, int n, int order,
                    const GaussRule& rule) {
  if (n == 1) return f(make_vec({1.0})) + f(make_vec({-1.0}));
  if (n == 2) {
    // Trapezoid rule is spectrally accurate for smooth periodic integrands.
    const int count = 2 * order;
    double s = 0.0;
    for (int i = 0; i < count; ++i) {
      const double phi = 2.0 * std::numbers::pi * i / count;
      s += f(make_vec({std::cos(phi), std::sin(phi)}));
    }
    return s * 2.0 * std::numbers::pi / count;
  }
  // u = (sin(a) v, cos(a)), du = sin^{n-2}(a) da dv.
  double s = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double a = 0.5 * std::numbers::pi * (rule.nodes[q] + 1.0);
    const double sa = std::sin(a), ca = std::cos(a);
    auto g = [&](const Vec& v) {
      Vec u(n);
      u.head(n - 1) = sa * v;
      u(n - 1) = ca;
      return f(u);
    };
    s += rule.weights[q] * 0.5 * std::numbers::pi * std::pow(sa, n - 2) *
         cubature_rec(g, n - 1, order, rule);
  }
  return s;
}

}  // namespace

double sphere_cubature(const std::function<double(const Vec&)>& f, int n, int order) {
  if (n < 1) throw InvalidArgument("dimension must be at least 1");
  const GaussRule rule = gauss_legendre(order);
  return cubature_rec(f, n, order, rule);
}

}  // namespace hobody
