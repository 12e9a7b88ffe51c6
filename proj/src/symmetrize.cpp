#include "hobody/symmetrize.hpp"

#include "hobody/lp.hpp"
#include "hobody/projection.hpp"
#include "hobody/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <optional>

namespace hobody {

namespace {

Vec unit_direction(const Vec& xi) {
  const double len = xi.norm();
  if (!(len > 1e-12)) throw InvalidArgument("symmetrization direction must be nonzero");
  return xi / len;
}

int block_count(int dim, const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  if (n < 1 || dim % n != 0) throw InvalidArgument("body dimension is not a multiple of dim(xi)");
  return dim / n;
}

/// Blockwise split z_i = x_i + r_i xi with x_i orthogonal to xi.
void split(const Vec& z, const Vec& xi, int m, Vec& x, Vec& r) {
  const int n = static_cast<int>(xi.size());
  x = z;
  r.resize(m);
  for (int i = 0; i < m; ++i) {
    r(i) = z.segment(i * n, n).dot(xi);
    x.segment(i * n, n) -= r(i) * xi;
  }
}

/// C(j, i) = <a_j restricted to block i, xi>.
Eigen::MatrixXd fibre_rates(const Eigen::MatrixXd& a, const Vec& xi, int m) {
  const int n = static_cast<int>(xi.size());
  Eigen::MatrixXd c(a.rows(), m);
  for (int i = 0; i < m; ++i) c.col(i) = a.middleCols(i * n, n) * xi;
  return c;
}

/// Orthonormal basis of xi-perp as columns.
Mat perp_basis(const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  const Mat q = Eigen::HouseholderQR<Mat>(Mat(xi)).householderQ();
  return q.rightCols(n - 1);
}

/// Vertex pairs sharing at least n - 1 facets.
std::vector<std::pair<int, int>> polytope_edges(const Polytope& p) {
  const int n = p.dim();
  const auto& vs = p.vertices();
  const auto& fs = p.facets();
  std::vector<std::vector<int>> incident(vs.size());
  for (std::size_t v = 0; v < vs.size(); ++v)
    for (std::size_t f = 0; f < fs.size(); ++f)
      if (std::abs(fs[f].normal.dot(vs[v]) - fs[f].offset) <= 1e-9 * (1.0 + std::abs(fs[f].offset)))
        incident[v].push_back(static_cast<int>(f));
  std::vector<std::pair<int, int>> edges;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      std::vector<int> common;
      std::set_intersection(incident[a].begin(), incident[a].end(), incident[b].begin(),
                            incident[b].end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) >= n - 1) edges.emplace_back(a, b);
    }
  return edges;
}

/// Gauge of a convex body about an interior point, by bisection on membership.
double oracle_gauge(const ConvexOracle& l, const Vec& y) {
  const Vec d = y - l.interior;
  if (d.norm() == 0.0) return 0.0;
  auto inside = [&](double lambda) { return l.contains(l.interior + d / lambda); };
  double hi = 1.0;
  int grow = 0;
  while (!inside(hi)) {
    hi *= 2.0;
    if (++grow > 200) throw PrecisionFailure("gauge search left the representable range");
  }
  double lo = 0.0;
  for (int k = 0; k < 100 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Golden-section minimum of a convex function on [a, b].
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < 90 && b - a > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++k) {
    if (fc <= fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a), fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// LP over (tau, z, w, w') for the gauge of S-bar_xi Pi^{o,m} K at x + r xi.
/// With `fixed_level` the objective is dropped and z is pinned to that level.
LinearProgram polar_projection_lp(const Polytope& k, const Vec& xi, const Vec& x, const Vec& r,
                                  std::optional<double> fixed_level) {
  const int n = k.dim();
  const int m = static_cast<int>(r.size());
  const int nf = static_cast<int>(k.facets().size());
  const int z = m, w0 = m + 1, v0 = m + 1 + nf;
  const int vars = m + 1 + 2 * nf;
  const int rows = 2 * nf * m + 2 + (fixed_level ? 1 : 0);
  LinearProgram lp;
  lp.A = Eigen::MatrixXd::Zero(rows, vars);
  lp.b = Eigen::VectorXd::Zero(rows);
  lp.c = Eigen::VectorXd::Zero(vars);
  lp.nonnegative.assign(vars, false);
  for (int j = 0; j < 2 * nf; ++j) lp.nonnegative[w0 + j] = true;
  int row = 0;
  for (int f = 0; f < nf; ++f) {
    const Facet& face = k.facets()[f];
    const double rate = xi.dot(face.normal);
    for (int i = 0; i < m; ++i) {
      const double base = x.segment(i * n, n).dot(face.normal);
      // w_F >= -<x_i + tau_i xi, u_F>
      lp.A(row, i) = -rate;
      lp.A(row, w0 + f) = -1.0;
      lp.b(row++) = base;
      // w'_F >= -<x_i + (tau_i - 2 r_i) xi, u_F>
      lp.A(row, i) = -rate;
      lp.A(row, v0 + f) = -1.0;
      lp.b(row++) = base - 2.0 * r(i) * rate;
    }
  }
  for (int f = 0; f < nf; ++f) {
    lp.A(row, w0 + f) = k.facets()[f].measure;
    lp.A(row + 1, v0 + f) = k.facets()[f].measure;
  }
  lp.A(row, z) = -1.0;
  lp.A(row + 1, z) = -1.0;
  row += 2;
  if (fixed_level) {
    lp.A(row, z) = 1.0;
    lp.b(row) = *fixed_level;
  } else {
    lp.c(z) = -1.0;
  }
  return lp;
}

}  // namespace

// ---------------------------------------------------------------------------
// Classical Steiner symmetral

SteinerSymmetral::SteinerSymmetral(Polytope source, const Vec& xi)
    : source_(std::move(source)), xi_(unit_direction(xi)) {
  if (xi_.size() != source_.dim()) throw InvalidArgument("direction dimension differs from the polytope");
  a_ = source_.normal_matrix();
  b_ = source_.offsets();
  rate_ = a_ * Eigen::VectorXd(xi_);
}

std::pair<double, double> SteinerSymmetral::chord(const Vec& x) const {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < a_.rows(); ++j) {
    const double room = b_(j) - a_.row(j).dot(Eigen::VectorXd(x));
    if (std::abs(rate_(j)) <= 1e-14) {
      if (room < -kGeomTol) return {1.0, 0.0};
    } else if (rate_(j) > 0.0) {
      hi = std::min(hi, room / rate_(j));
    } else {
      lo = std::max(lo, room / rate_(j));
    }
  }
  return {lo, hi};
}

bool SteinerSymmetral::contains(const Vec& z, double tol) const {
  const double t = z.dot(xi_);
  const auto [lo, hi] = chord(z - t * xi_);
  return 2.0 * std::abs(t) <= hi - lo + 2.0 * tol;
}

Polytope SteinerSymmetral::polytope() const {
  const int n = source_.dim();
  if (n > 3) throw InvalidArgument("polytopal Steiner symmetral is implemented for n <= 3");
  auto project = [&](const Vec& v) { return Vec(v - v.dot(xi_) * xi_); };
  std::vector<Vec> base;
  for (const Vec& v : source_.vertices()) base.push_back(project(v));
  if (n == 3) {
    const Mat perp = perp_basis(xi_);
    const auto edges = polytope_edges(source_);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Vec p0 = perp.transpose() * base[edges[e].first];
      const Vec p1 = perp.transpose() * base[edges[e].second];
      for (std::size_t f = e + 1; f < edges.size(); ++f) {
        const Vec q0 = perp.transpose() * base[edges[f].first];
        const Vec q1 = perp.transpose() * base[edges[f].second];
        const Vec d1 = p1 - p0, d2 = q1 - q0, w = q0 - p0;
        const double den = d1(0) * d2(1) - d1(1) * d2(0);
        if (std::abs(den) <= 1e-14 * (d1.norm() * d2.norm() + 1e-300)) continue;
        const double s = (w(0) * d2(1) - w(1) * d2(0)) / den;
        const double u = (w(0) * d1(1) - w(1) * d1(0)) / den;
        if (s <= 1e-12 || s >= 1.0 - 1e-12 || u <= 1e-12 || u >= 1.0 - 1e-12) continue;
        base.push_back(perp * (p0 + s * d1));
      }
    }
  }
  std::vector<Vec> points;
  for (const Vec& x : base) {
    const auto [lo, hi] = chord(x);
    const double half = 0.5 * std::max(0.0, hi - lo);
    points.push_back(x + half * xi_);
    points.push_back(x - half * xi_);
  }
  return Polytope::from_points(points);
}

SteinerSymmetral steiner(const Polytope& p, const Vec& xi) { return SteinerSymmetral(p, xi); }

// ---------------------------------------------------------------------------
// Higher-order symmetral

ConvexOracle convex_oracle(const Polytope& p) {
  ConvexOracle o;
  o.dim = p.dim();
  o.contains = [p](const Vec& y) { return p.contains(y, 0.0); };
  o.lower = o.upper = p.vertices()[0];
  for (const Vec& v : p.vertices()) {
    o.lower = o.lower.cwiseMin(v);
    o.upper = o.upper.cwiseMax(v);
  }
  o.interior = p.vertex_centroid();
  return o;
}

ConvexOracle convex_oracle(const Ellipsoid& e) {
  ConvexOracle o;
  o.dim = e.dim();
  o.contains = [e](const Vec& y) { return e.contains(y, 0.0); };
  const Vec half = e.factor().rowwise().norm();
  o.lower = e.center() - half;
  o.upper = e.center() + half;
  o.interior = e.center();
  return o;
}

bool higher_steiner_membership(const Polytope& l, const Vec& xi_in, const Vec& z, double tol) {
  const Vec xi = unit_direction(xi_in);
  const int m = block_count(l.dim(), xi);
  if (z.size() != l.dim()) throw InvalidArgument("point dimension differs from the body");
  Vec x, r;
  split(z, xi, m, x, r);
  const Eigen::MatrixXd a = l.normal_matrix();
  const Eigen::VectorXd room = l.offsets() - a * Eigen::VectorXd(x);
  const Eigen::MatrixXd c = fibre_rates(a, xi, m);
  // C tau <= b - A x  and  C (tau - 2r) <= b - A x.
  Eigen::MatrixXd lhs(2 * a.rows(), m);
  Eigen::VectorXd rhs(2 * a.rows());
  lhs << c, c;
  rhs << room, room + 2.0 * c * Eigen::VectorXd(r);
  return lp_feasible(lhs, rhs, tol);
}

bool higher_steiner_membership(const ConvexOracle& l, const Vec& xi_in, const Vec& z) {
  const Vec xi = unit_direction(xi_in);
  const int m = block_count(l.dim, xi);
  const int n = static_cast<int>(xi.size());
  if (z.size() != l.dim) throw InvalidArgument("point dimension differs from the body");
  Vec x, r;
  split(z, xi, m, x, r);
  auto place = [&](const Eigen::VectorXd& tau, double shift) {
    Vec y = x;
    for (int i = 0; i < m; ++i) y.segment(i * n, n) += (tau(i) - shift * r(i)) * xi;
    return y;
  };
  auto objective = [&](const Eigen::VectorXd& tau) {
    return std::max(oracle_gauge(l, place(tau, 0.0)), oracle_gauge(l, place(tau, 2.0)));
  };

  // Offsets beyond this bound put a copy outside the bounding box at gauge > 1.
  const double reach =
      2.0 * std::max(l.lower.cwiseAbs().maxCoeff(), l.upper.cwiseAbs().maxCoeff()) * std::sqrt(n) +
      2.0 * r.cwiseAbs().maxCoeff() + 1.0;
  Eigen::VectorXd tau = r;  // t = r, s = -r is the natural start
  double best = objective(tau);
  CounterRng rng(0x53544549ULL, 0);
  for (int round = 0; round < 1000; ++round) {
    if (best <= 1.0) return true;
    const double start = best;
    for (int k = 0; k < 2 * m; ++k) {
      Eigen::VectorXd dir = Eigen::VectorXd::Zero(m);
      if (k < m) {
        dir(k) = 1.0;
      } else {
        for (int i = 0; i < m; ++i) dir(i) = rng.normal();
        dir.normalize();
      }
      const auto [s, value] = golden_min(
          [&](double s) { return objective(tau + s * dir); }, -reach, reach);
      if (value < best) {
        tau += s * dir;
        best = value;
      }
      if (best <= 1.0) return true;
    }
    if (start - best <= 1e-12 * start) return best <= 1.0 + 1e-9;
  }
  throw PrecisionFailure("fibre search did not settle within 1000 rounds");
}

std::pair<Vec, Vec> higher_steiner_box(const Polytope& l, const Vec& xi_in) {
  const Vec xi = unit_direction(xi_in);
  const int m = block_count(l.dim(), xi);
  const int n = static_cast<int>(xi.size());
  Vec lo = l.vertices()[0], hi = lo, rlo, rhi;
  bool first = true;
  for (Vec v : l.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
    for (int i = 0; i < m; ++i) v.segment(i * n, n) -= 2.0 * v.segment(i * n, n).dot(xi) * xi;
    if (first) rlo = rhi = v, first = false;
    rlo = rlo.cwiseMin(v);
    rhi = rhi.cwiseMax(v);
  }
  // z = (y + R y') / 2 with y, y' in L and R the blockwise reflection.
  return {0.5 * (lo + rlo), 0.5 * (hi + rhi)};
}

MCEstimate higher_steiner_volume(const Polytope& l, const Vec& xi, std::size_t count,
                                 std::uint64_t seed) {
  const auto [lo, hi] = higher_steiner_box(l, xi);
  const int d = l.dim();
  const double box = (hi - lo).prod();
  auto sample = [&](std::size_t i) {
    CounterRng rng(seed, i);
    Vec z(d);
    for (int k = 0; k < d; ++k) z(k) = lo(k) + (hi(k) - lo(k)) * rng.uniform();
    return higher_steiner_membership(l, xi, z) ? 1.0 : 0.0;
  };
  return mc_average(count, seed, sample, box);
}

double higher_steiner_radial(const Polytope& l, const Vec& xi_in, const Vec& theta) {
  const Vec xi = unit_direction(xi_in);
  const int m = block_count(l.dim(), xi);
  if (!l.origin_interior()) throw InvalidBody("origin is not an interior point of the polytope");
  Vec x, r;
  split(theta, xi, m, x, r);
  const Eigen::MatrixXd a = l.normal_matrix();
  const Eigen::VectorXd b = l.offsets();
  const Eigen::MatrixXd c = fibre_rates(a, xi, m);
  const Eigen::VectorXd ax = a * Eigen::VectorXd(x);
  const Eigen::VectorXd cr = c * Eigen::VectorXd(r);
  // <a_j, y> <= z b_j for both copies; minimize z over (tau, z).
  const Eigen::Index f = a.rows();
  LinearProgram lp;
  lp.A = Eigen::MatrixXd::Zero(2 * f, m + 1);
  lp.A.topLeftCorner(f, m) = c;
  lp.A.bottomLeftCorner(f, m) = c;
  lp.A.col(m) << -b, -b;
  lp.b.resize(2 * f);
  lp.b << -ax, -ax + 2.0 * cr;
  lp.c = Eigen::VectorXd::Zero(m + 1);
  lp.c(m) = -1.0;
  const LPResult res = solve_lp(lp);
  if (res.status != LPStatus::optimal || !(res.x(m) > 0.0))
    throw PrecisionFailure("gauge LP of the symmetral failed");
  return 1.0 / res.x(m);
}

double steiner_polar_projection_radial(const Polytope& k, const Vec& xi_in, const DirectionTuple& theta) {
  const Vec xi = unit_direction(xi_in);
  if (theta.n() != k.dim()) throw InvalidArgument("direction blocks differ from the body dimension");
  const int m = theta.m();
  Vec x, r;
  split(theta.flat(), xi, m, x, r);
  const LPResult res = solve_lp(polar_projection_lp(k, xi, x, r, std::nullopt));
  if (res.status != LPStatus::optimal || !(res.x(m) > 1e-12))
    throw PrecisionFailure("gauge LP of the symmetral failed");
  return 1.0 / res.x(m);
}

double steiner_polar_projection_radial_bisect(const Polytope& k, const Vec& xi_in,
                                              const DirectionTuple& theta, double rel_tol) {
  const Vec xi = unit_direction(xi_in);
  if (theta.n() != k.dim()) throw InvalidArgument("direction blocks differ from the body dimension");
  const int m = theta.m();
  Vec x0, r0;
  split(theta.flat(), xi, m, x0, r0);
  auto member = [&](double lambda) {
    const LinearProgram lp = polar_projection_lp(k, xi, lambda * x0, lambda * r0, 1.0);
    return solve_lp(lp).status == LPStatus::optimal;
  };
  // The symmetral lies in the ball of radius max rho_{Pi^{o,m} K}.
  double lo = 0.0, hi = 1.0;
  while (member(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw PrecisionFailure("symmetral radial bracket diverged");
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (member(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

InclusionReport steiner_inclusion_check(const Polytope& k, const Vec& xi,
                                        const std::vector<DirectionTuple>& directions, double slack) {
  const Polytope sym = steiner(k, xi).polytope();
  InclusionReport out;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (const DirectionTuple& theta : directions) {
    InclusionRow row;
    row.theta = theta;
    row.left = steiner_polar_projection_radial(k, xi, theta);
    row.right = 1.0 / proj_support(sym, theta);
    row.margin = (row.right - row.left) / row.right;
    out.min_margin = std::min(out.min_margin, row.margin);
    out.rows.push_back(row);
  }
  if (out.rows.empty()) out.min_margin = 0.0;
  out.holds = out.min_margin >= -slack;
  return out;
}

InclusionReport steiner_inclusion_check(const Polytope& k, int m, const Vec& xi, std::size_t count,
                                        std::uint64_t seed, double slack) {
  std::vector<DirectionTuple> dirs;
  for (const Vec& u : sphere_sample(k.dim() * m, count, seed)) dirs.emplace_back(k.dim(), u);
  return steiner_inclusion_check(k, xi, dirs, slack);
}

PettyStep petty_step(const Polytope& k, int m, const Vec& xi, std::size_t count, std::uint64_t seed) {
  PettyStep out;
  out.before = petty_product(k, m, count, seed);
  out.after = petty_product(steiner(k, xi).polytope(), m, count, seed);
  out.std_error = combined_error(out.before.std_error, out.after.std_error);
  out.holds = out.before.value <= out.after.value + 3.0 * out.std_error;
  return out;
}

}  // namespace hobody
