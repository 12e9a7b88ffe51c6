#include "hobody/projection.hpp"

#include <algorithm>
#include <cmath>

namespace hobody {

double proj_support(const Polytope& k, const DirectionTuple& theta) {
  if (theta.n() != k.dim()) throw InvalidArgument("direction blocks differ from the body dimension");
  double s = 0.0;
  for (const Facet& f : k.facets()) {
    double worst = 0.0;
    for (int i = 0; i < theta.m(); ++i) worst = std::max(worst, negative_part(theta.block(i).dot(f.normal)));
    s += f.measure * worst;
  }
  return s;
}

double proj_support_ball(double radius, int n, const DirectionTuple& theta) {
  if (radius <= 0.0) throw InvalidArgument("ball radius must be positive");
  if (theta.n() != n) throw InvalidArgument("direction blocks differ from the ball dimension");
  return std::pow(radius, n - 1) * segment_hull_sphere_integral(SegmentHull::of(theta));
}

MCEstimate proj_support_ball_mc(double radius, int n, const DirectionTuple& theta,
                                std::size_t count, std::uint64_t seed) {
  const SegmentHull c = SegmentHull::of(theta);
  MCEstimate w = mean_width([&](const Vec& u) { return c.support(u); }, n, count, seed);
  const double scale = std::pow(radius, n - 1) * sphere_area(n);
  w.value *= scale;
  w.std_error *= scale;
  return w;
}

double proj_support(const Ellipsoid& e, const DirectionTuple& theta) {
  const int n = e.dim();
  const Mat& t = e.factor();
  const Mat tinv = t.inverse();
  BlockVector mapped(n, theta.m());
  for (int i = 0; i < theta.m(); ++i) mapped.set_block(i, tinv * theta.block(i));
  return std::abs(t.determinant()) * proj_support_ball(1.0, n, mapped);
}

double proj_support(const Body& k, const DirectionTuple& theta) {
  return std::visit([&](const auto& b) { return proj_support(b, theta); }, k);
}

StarBodyOracle polar_proj_oracle(const Body& k, int m, std::size_t scan, std::uint64_t seed) {
  const int n = dim(k);
  if (m < 1) throw InvalidArgument("multiplicity m must be positive");
  StarBodyOracle o;
  o.dim = n * m;
  o.radial = [k, n](const Vec& u) {
    const double h = proj_support(k, BlockVector(n, u));
    if (!(h > 1e-12))
      throw DegenerateBody("projection body support vanishes at " + to_string(u) +
                               "; the body is lower-dimensional",
                           n - 1);
    return 1.0 / h;
  };
  double min_h = std::numeric_limits<double>::infinity();
  for (const Vec& u : sphere_sample(n * m, scan, seed))
    min_h = std::min(min_h, proj_support(k, BlockVector(n, u)));
  if (!(min_h > 1e-12)) throw DegenerateBody("projection body support vanishes on the scan", n - 1);
  o.bounding_radius = 1.1 / min_h;
  return o;
}

MCEstimate petty_product(const Body& k, int m, std::size_t count, std::uint64_t seed) {
  const int n = dim(k);
  MCEstimate v = star_body_volume(polar_proj_oracle(k, m), count, seed);
  const double factor = std::pow(volume(k), n * m - m);
  v.value *= factor;
  v.std_error *= factor;
  return v;
}

MCEstimate petty_isoperimetric(const Body& k, int m, std::size_t count, std::uint64_t seed) {
  const int n = dim(k);
  MCEstimate v = star_body_volume(polar_proj_oracle(k, m), count, seed);
  const double factor = std::pow(surface_area(k), n * m);
  v.value *= factor;
  v.std_error *= factor;
  return v;
}

double ball_polar_projection_volume(int n) {
  return ball_volume(n) / std::pow(ball_volume(n - 1), n);
}

MCEstimate ball_polar_projection_volume(int n, int m, std::size_t count, std::uint64_t seed) {
  if (m == 1) return MCEstimate{ball_polar_projection_volume(n), 0.0, 0, seed};
  return star_body_volume(polar_proj_oracle(Ellipsoid::ball(n), m), count, seed);
}

double zhang_bound(int n, int m) {
  return binomial(n * m + n, n) / std::pow(static_cast<double>(n), n * m);
}

}  // namespace hobody
