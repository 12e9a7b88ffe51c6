#include "hobody/centroid.hpp"

#include "hobody/covariogram.hpp"
#include "hobody/hull.hpp"
#include "hobody/projection.hpp"
#include "hobody/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hobody {

namespace {

int block_count(const StarBodyOracle& l, int n) {
  if (n < 1 || l.dim % n != 0) throw InvalidArgument("star body dimension is not a multiple of n");
  return l.dim / n;
}

double max_negative(const Vec& x, int n, int m, const Vec& theta) {
  double best = 0.0;
  for (int i = 0; i < m; ++i) best = std::max(best, negative_part(x.segment(i * n, n).dot(theta)));
  return best;
}

MCEstimate body_volume(const StarBodyOracle& l, std::size_t count, std::uint64_t seed) {
  if (l.exact_volume) return MCEstimate{*l.exact_volume, 0.0, 0, seed};
  return star_body_volume(l, count, derive_seed(seed, 0x564F4C));
}

MCEstimate scaled(MCEstimate e, double s) {
  e.value *= s;
  e.std_error *= std::abs(s);
  return e;
}

/// Roughly uniform directions: equal angles for n = 2, a Fibonacci lattice for n = 3.
std::vector<Vec> scan_directions(int n, std::size_t count) {
  std::vector<Vec> dirs;
  if (n == 1) return {make_vec({1.0}), make_vec({-1.0})};
  if (n == 2) {
    for (std::size_t j = 0; j < count; ++j) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
      dirs.push_back(make_vec({std::cos(a), std::sin(a)}));
    }
    return dirs;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(1.0 - z * z);
      const double a = golden * static_cast<double>(j);
      dirs.push_back(make_vec({r * std::cos(a), r * std::sin(a), z}));
    }
    return dirs;
  }
  throw InvalidArgument("centroid body volume is implemented for n <= 3");
}

}  // namespace

CentroidBody::CentroidBody(const StarBodyOracle& l, int n, std::size_t count, std::uint64_t seed)
    : n_(n), m_(block_count(l, n)), seed_(seed) {
  for (Vec& x : sample_star_body(l, count, seed)) samples_.emplace_back(n, std::move(x));
}

MCEstimate CentroidBody::support(const Vec& theta) const {
  if (theta.size() != n_) throw InvalidArgument("direction has the wrong dimension");
  std::vector<double> values(samples_.size());
  for (std::size_t k = 0; k < samples_.size(); ++k)
    values[k] = max_negative(samples_[k].flat(), n_, m_, theta);
  return detail::summarize(values, seed_, 1.0);
}

Vec CentroidBody::support_point(const Vec& u) const {
  // Gradient of the empirical support function: the average of the maximizing -x_i.
  Vec g = Vec::Zero(n_);
  for (const BlockVector& x : samples_) {
    double best = 0.0;
    int arg = -1;
    for (int i = 0; i < m_; ++i) {
      const double v = -x.block(i).dot(u);
      if (v > best) best = v, arg = i;
    }
    if (arg >= 0) g -= x.block(arg);
  }
  return g / static_cast<double>(samples_.size());
}

MCEstimate centroid_support(const StarBodyOracle& l, const Vec& theta, std::size_t count,
                            std::uint64_t seed) {
  const int n = static_cast<int>(theta.size());
  const int m = block_count(l, n);
  if (theta.norm() == 0.0) throw InvalidArgument("direction must be nonzero");
  return mc_star_average(l, [&](const Vec& x) { return max_negative(x, n, m, theta); }, count, seed);
}

double centroid_support_exact(const Polytope& l, const Vec& theta) {
  const int n = static_cast<int>(theta.size());
  const int d = l.dim();
  if (n < 1 || d % n != 0) throw InvalidArgument("polytope dimension is not a multiple of n");
  if (theta.norm() == 0.0) throw InvalidArgument("direction must be nonzero");
  const int m = d / n;
  const Eigen::MatrixXd a = l.normal_matrix();
  const Eigen::VectorXd b = l.offsets();
  const Eigen::Index f = a.rows();

  double integral = 0.0;
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd ai(f + m, d);
    Eigen::VectorXd bi = Eigen::VectorXd::Zero(f + m);
    ai.topRows(f) = a;
    bi.head(f) = b;
    ai.bottomRows(m).setZero();
    ai.block(f, i * n, 1, n) = theta.transpose();  // <x_i, theta> <= 0
    for (int j = 0, r = 1; j < m; ++j) {
      if (j == i) continue;
      ai.block(f + r, i * n, 1, n) = theta.transpose();
      ai.block(f + r, j * n, 1, n) = -theta.transpose();
      ++r;
    }
    const auto hv = enumerate_vertices(ai, bi);
    if (!hv) continue;
    Hull hull;
    try {
      hull = convex_hull(hv->vertices);
    } catch (const DegenerateBody&) {
      continue;
    }
    // Cone decomposition from an interior point; a linear function integrates
    // over a simplex as volume times its value at the centroid.
    const Vec& z = hull.interior;
    Mat edges(d, d);
    for (const HullFacet& facet : hull.facets) {
      Vec centroid = z;
      for (int k = 0; k < d; ++k) {
        const Vec& v = hv->vertices[facet.vertices[k]];
        edges.col(k) = v - z;
        centroid += v;
      }
      centroid /= d + 1;
      const double vol = std::abs(edges.determinant()) / std::tgamma(d + 1.0);
      integral -= vol * centroid.segment(i * n, n).dot(theta);
    }
  }
  return integral / l.volume();
}

MCEstimate centroid_support_mapped(const StarBodyOracle& l, const Mat& t, const Vec& theta,
                                   std::size_t count, std::uint64_t seed) {
  const int n = static_cast<int>(theta.size());
  const int m = block_count(l, n);
  if (t.rows() != n || t.cols() != n) throw InvalidArgument("map dimension differs from the direction");
  const Mat lifted = lift(t, m);
  return mc_star_average(l, [&](const Vec& x) { return max_negative(lifted * x, n, m, theta); },
                         count, seed);
}

StarBodyOracle transformed_oracle(const StarBodyOracle& l, const Mat& t) {
  require_nonsingular(t);
  const int n = static_cast<int>(t.rows());
  const int m = block_count(l, n);
  const Mat inv = lift(t.inverse(), m);
  StarBodyOracle o;
  o.dim = l.dim;
  o.radial = [l, inv](const Vec& u) {
    // rho_{TL}(u) = 1 / ||T^{-1} u||_L with ||v||_L = |v| / rho_L(v / |v|).
    const Vec v = inv * u;
    const double r = v.norm();
    return l.radial(v / r) / r;
  };
  const Eigen::JacobiSVD<Mat> svd(t);
  o.bounding_radius = svd.singularValues()(0) * l.bounding_radius;
  if (l.exact_volume) o.exact_volume = std::pow(std::abs(t.determinant()), m) * *l.exact_volume;
  return o;
}

MCEstimate moment_support(const StarBodyOracle& l, const Vec& theta, std::size_t count,
                          std::uint64_t seed) {
  const MCEstimate h = centroid_support(l, theta, count, seed);
  const MCEstimate v = body_volume(l, count, seed);
  return MCEstimate{v.value * h.value, product_error(v.value, v.std_error, h.value, h.std_error),
                    h.samples, seed};
}

MCEstimate dual_mixed_vol_neg1(const StarBodyOracle& l, const StarBodyOracle& m, std::size_t count,
                               std::uint64_t seed) {
  if (l.dim != m.dim) throw InvalidArgument("star bodies live in different dimensions");
  const int d = l.dim;
  auto f = [&](const Vec& u) {
    const double rm = m.radial(u);
    if (!(rm >= 1e-12))
      throw DegenerateBody("radial function of the second body vanishes at " + to_string(u), d - 1);
    return std::pow(l.radial(u), d + 1) / rm;
  };
  return scaled(mc_sphere_integral(f, d, count, seed), 1.0 / d);
}

MCEstimate random_simplex_expectation(const Body& k, const StarBodyOracle& l, std::size_t count,
                                      std::uint64_t seed, bool reflected) {
  const int n = dim(k);
  block_count(l, n);
  // V(K[n-1], C_X) = h_{Pi^m K}(-X) / n.
  const double sign = reflected ? 1.0 : -1.0;
  return mc_star_average(
      l, [&](const Vec& x) { return proj_support(k, BlockVector(n, sign * x)) / n; }, count, seed);
}

MCEstimate centroid_mixed_volume(const Body& k, const StarBodyOracle& l, std::size_t count,
                                 std::uint64_t seed) {
  // h_{Gamma^m L} is the sample average of h_{C_{-X}}, and V(K[n-1], .) is linear.
  return random_simplex_expectation(k, l, count, seed, true);
}

DualityCheck duality_check(const Body& k, const StarBodyOracle& l, std::size_t count,
                           std::uint64_t seed) {
  const int n = dim(k);
  const int m = block_count(l, n);
  DualityCheck out;
  out.lhs = dual_mixed_vol_neg1(l, polar_proj_oracle(k, m), count, derive_seed(seed, 1));
  const MCEstimate mv = centroid_mixed_volume(k, l, count, seed);
  const MCEstimate vol = body_volume(l, count, seed);
  const double c = (n * m + 1.0) / m;
  out.rhs = MCEstimate{c * vol.value * mv.value,
                       c * product_error(vol.value, vol.std_error, mv.value, mv.std_error),
                       mv.samples, seed};
  out.discrepancy = std::abs(out.lhs.value - out.rhs.value);
  out.std_error = combined_error(out.lhs.std_error, out.rhs.std_error);
  return out;
}

CentroidVolume centroid_volume(const StarBodyOracle& l, int n, std::size_t count,
                               std::uint64_t seed, std::size_t directions) {
  const CentroidBody gamma(l, n, count, seed);
  const std::vector<Vec> dirs = scan_directions(n, directions);
  std::vector<Vec> points;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(dirs.size()), n);
  Eigen::VectorXd b(static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    const Vec p = gamma.support_point(dirs[j]);
    points.push_back(p);
    a.row(static_cast<Eigen::Index>(j)) = dirs[j].transpose();
    b(static_cast<Eigen::Index>(j)) = p.dot(dirs[j]);
  }
  CentroidVolume out;
  const Polytope inner = Polytope::from_points(points);
  out.inner = inner.volume();
  out.outer = n == 1 ? out.inner : halfspace_volume(a, b);
  out.approximation = out.outer - out.inner;

  // First variation of volume: dVol = sum_F a_F dh(u_F), one term per sample.
  std::vector<double> psi(gamma.samples().size());
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] = proj_support(inner, gamma.samples()[k]);
  const MCEstimate spread = detail::summarize(psi, seed, 1.0);
  out.volume = MCEstimate{out.inner, spread.std_error, count, seed};
  return out;
}

FunctionalValue busemann_petty_functional(const StarBodyOracle& l, int n, std::size_t count,
                                          std::uint64_t seed) {
  const int m = block_count(l, n);
  const CentroidVolume g = centroid_volume(l, n, count, seed);
  const MCEstimate v = body_volume(l, count, seed);
  const double value = g.volume.value / std::pow(v.value, 1.0 / m);
  const double rel = std::hypot(g.volume.std_error / g.volume.value, v.std_error / (m * v.value));
  FunctionalValue out;
  out.value = MCEstimate{value, value * rel, count, seed};
  out.approximation = g.approximation / std::pow(v.value, 1.0 / m);
  return out;
}

double ball_centroid_radius(int n, int m) { return m / ((n * m + 1.0) * ball_volume(n)); }

MCEstimate busemann_petty_reference(int n, int m, std::size_t count, std::uint64_t seed) {
  const MCEstimate v = ball_polar_projection_volume(n, m, count, seed);
  const double gamma = ball_volume(n) * std::pow(ball_centroid_radius(n, m), n);
  const double value = gamma / std::pow(v.value, 1.0 / m);
  return MCEstimate{value, value * v.std_error / (m * v.value), v.samples, seed};
}

MCEstimate random_simplex_functional(const Body& k, const StarBodyOracle& l, std::size_t count,
                                     std::uint64_t seed) {
  const int n = dim(k);
  const int d = l.dim;
  const MCEstimate e = random_simplex_expectation(k, l, count, seed);
  const MCEstimate v = body_volume(l, count, seed);
  const double norm = std::pow(v.value, -1.0 / d) * std::pow(volume(k), -(n - 1.0) / n);
  const double rel = std::hypot(e.std_error / e.value, v.std_error / (d * v.value));
  return MCEstimate{norm * e.value, norm * e.value * rel, e.samples, seed};
}

MCEstimate random_simplex_reference(int n, int m, std::size_t count, std::uint64_t seed) {
  const MCEstimate v = ball_polar_projection_volume(n, m, count, seed);
  const int d = n * m;
  const double value = std::pow(v.value, -1.0 / d) * std::pow(ball_volume(n), -(n - 1.0) / n) *
                       m / (d + 1.0);
  return MCEstimate{value, value * v.std_error / (d * v.value), v.samples, seed};
}

}  // namespace hobody
