#include "hobody/covariogram.hpp"

#include "hobody/hull.hpp"
#include "hobody/lp.hpp"
#include "hobody/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hobody {

namespace {

constexpr std::size_t kFallbackSamples = 100'000;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Monte Carlo volume over the LP bounding box; used only if vertex enumeration fails.
double mc_halfspace_volume(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(A.cols());
  Vec lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    LinearProgram lp{A, b, Eigen::VectorXd::Unit(n, k), {}};
    const LPResult up = solve_lp(lp);
    lp.c = -lp.c;
    const LPResult down = solve_lp(lp);
    if (up.status != LPStatus::optimal || down.status != LPStatus::optimal) return 0.0;
    hi(k) = up.value;
    lo(k) = -down.value;
  }
  const double box = (hi - lo).prod();
  if (box <= 0.0) return 0.0;
  const auto inside = [&](std::size_t i) {
    CounterRng rng(0x48414C46u, i);
    Vec x(n);
    for (int k = 0; k < n; ++k) x(k) = lo(k) + (hi(k) - lo(k)) * rng.uniform();
    return (A * x - b).maxCoeff() <= 0.0 ? 1.0 : 0.0;
  };
  return mc_average(kFallbackSamples, 0x48414C46u, inside, box).value;
}

}  // namespace

std::pair<Vec, double> chebyshev_center(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(A.cols());
  LinearProgram lp;
  lp.A.resize(A.rows(), n + 1);
  lp.A.leftCols(n) = A;
  lp.A.col(n) = A.rowwise().norm();
  lp.b = b;
  lp.c = Eigen::VectorXd::Unit(n + 1, n);
  const LPResult r = solve_lp(lp);
  if (r.status == LPStatus::unbounded) throw InvalidBody("halfspace system is unbounded");
  if (r.status != LPStatus::optimal) return {Vec::Zero(n), -1.0};
  return {Vec(r.x.head(n)), r.x(n)};
}

std::optional<HalfspaceVertices> enumerate_vertices(const Eigen::MatrixXd& A,
                                                    const Eigen::VectorXd& b,
                                                    double min_inradius) {
  const int n = static_cast<int>(A.cols());
  auto [z, radius] = chebyshev_center(A, b);
  if (radius <= min_inradius) return std::nullopt;

  std::vector<Vec> dual(A.rows());
  for (Eigen::Index j = 0; j < A.rows(); ++j) {
    const double slack = b(j) - A.row(j).dot(z);
    dual[j] = A.row(j).transpose() / slack;
  }
  Hull hull;
  try {
    hull = convex_hull(dual);
  } catch (const DegenerateBody&) {
    throw InvalidBody("halfspace normals do not positively span; the set is unbounded");
  }
  HalfspaceVertices out;
  out.interior = z;
  out.inradius = radius;
  const double scale = 1.0 + b.cwiseAbs().maxCoeff();
  auto excess = [&](const Vec& v) {
    double worst = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < A.rows(); ++j) worst = std::max(worst, A.row(j).dot(v) - b(j));
    return worst;
  };
  for (const HullFacet& f : hull.facets) {
    // Re-solve on the active set; the dual facet normal loses accuracy on slivers.
    Mat as(n, n);
    Vec bs(n);
    std::array<int, 4> act{-1, -1, -1, -1};
    for (int k = 0; k < n; ++k) {
      act[k] = f.vertices[k];
      as.row(k) = A.row(act[k]);
      bs(k) = b(act[k]);
    }
    Vec v = z + f.normal / f.offset;
    double v_excess = excess(v);
    const Eigen::FullPivLU<Mat> lu(as);
    if (lu.isInvertible()) {
      const Vec w = lu.solve(bs);
      const double w_excess = excess(w);
      if (w_excess <= v_excess) {
        v = w;
        v_excess = w_excess;
      }
    }
    if (v_excess > 1e-9 * scale) continue;
    out.vertices.push_back(v);
    out.active.push_back(act);
  }
  return out;
}

double halfspace_volume(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  try {
    const auto hv = enumerate_vertices(A, b);
    if (!hv) return 0.0;
    return hull_volume(hv->vertices);
  } catch (const PrecisionFailure&) {
    return mc_halfspace_volume(A, b);
  }
}

double m_covariogram(const Polytope& p, const ShiftTuple& x) {
  const Eigen::MatrixXd A = p.normal_matrix();
  Eigen::VectorXd b = p.offsets();
  for (int i = 0; i < x.m(); ++i) {
    const Eigen::VectorXd shift = A * Eigen::VectorXd(x.block(i));
    b = b.cwiseMin(p.offsets() + shift);
  }
  return halfspace_volume(A, b);
}

double m_covariogram_full(const Polytope& p, const ShiftTuple& x) {
  const Eigen::MatrixXd A = p.normal_matrix();
  const Eigen::VectorXd b = p.offsets();
  const Eigen::Index f = A.rows();
  const int m = x.m();
  Eigen::MatrixXd big(f * (m + 1), A.cols());
  Eigen::VectorXd rhs(f * (m + 1));
  big.topRows(f) = A;
  rhs.head(f) = b;
  for (int i = 0; i < m; ++i) {
    big.middleRows(f * (i + 1), f) = A;
    rhs.segment(f * (i + 1), f) = b + A * Eigen::VectorXd(x.block(i));
  }
  return halfspace_volume(big, rhs);
}

Eigen::VectorXd ray_offsets(const Polytope& p, const DirectionTuple& theta) {
  const Eigen::MatrixXd A = p.normal_matrix();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(A.rows());
  for (int i = 0; i < theta.m(); ++i) {
    const Eigen::VectorXd d = A * Eigen::VectorXd(theta.block(i));
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = std::max(c(j), negative_part(d(j)));
  }
  return c;
}

double diff_body_radial(const Polytope& p, const DirectionTuple& theta) {
  const int n = p.dim();
  LinearProgram lp;
  lp.A.resize(p.facets().size(), n + 1);
  lp.A.leftCols(n) = p.normal_matrix();
  lp.A.col(n) = ray_offsets(p, theta);
  lp.b = p.offsets();
  lp.c = Eigen::VectorXd::Unit(n + 1, n);
  lp.nonnegative.assign(n + 1, false);
  lp.nonnegative[n] = true;
  const LPResult r = solve_lp(lp);
  if (r.status != LPStatus::optimal) throw InvalidBody("difference body radial LP is unbounded");
  return r.value;
}

double diff_body_radial_full(const Polytope& p, const DirectionTuple& theta) {
  const int n = p.dim();
  const int m = theta.m();
  const Eigen::MatrixXd A = p.normal_matrix();
  const Eigen::Index f = A.rows();
  LinearProgram lp;
  lp.A = Eigen::MatrixXd::Zero(f * (m + 1), n + 1);
  lp.b.resize(f * (m + 1));
  lp.A.topLeftCorner(f, n) = A;
  lp.b.head(f) = p.offsets();
  for (int i = 0; i < m; ++i) {
    lp.A.block(f * (i + 1), 0, f, n) = A;
    lp.A.block(f * (i + 1), n, f, 1) = -A * Eigen::VectorXd(theta.block(i));
    lp.b.segment(f * (i + 1), f) = p.offsets();
  }
  lp.c = Eigen::VectorXd::Unit(n + 1, n);
  lp.nonnegative.assign(n + 1, false);
  lp.nonnegative[n] = true;
  const LPResult r = solve_lp(lp);
  if (r.status != LPStatus::optimal) throw InvalidBody("difference body radial LP is unbounded");
  return r.value;
}

StarBodyOracle diff_body_oracle(const Polytope& p, int m) {
  double diam = 0.0;
  for (const Vec& a : p.vertices())
    for (const Vec& b : p.vertices()) diam = std::max(diam, (a - b).norm());
  const int n = p.dim();
  StarBodyOracle o;
  o.dim = n * m;
  o.radial = [p, n](const Vec& u) { return diff_body_radial(p, BlockVector(n, u)); };
  o.bounding_radius = std::sqrt(static_cast<double>(m)) * diam;
  return o;
}

MCEstimate diff_body_volume(const Polytope& p, int m, std::size_t count, std::uint64_t seed) {
  return star_body_volume(diff_body_oracle(p, m), count, seed);
}

// ---------------------------------------------------------------------------
// Piecewise-polynomial covariogram along a ray

double CovariogramPiece::operator()(double r) const {
  const double t = (r - center) / scale;
  double s = 0.0;
  for (int k = degree; k >= 0; --k) s = s * t + coef[k];
  return s;
}

std::array<double, 5> CovariogramPiece::monomial() const {
  // Expand sum_k coef_k ((r - mid) / half)^k in powers of r.
  std::array<double, 5> out{};
  const double h = scale;
  const double c = center;
  for (int k = 0; k <= degree; ++k) {
    const double ck = coef[k] / std::pow(h, k);
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      // term binom(k, j) r^j (-c)^{k-j}
      out[j] += ck * binom * std::pow(-c, k - j);
      binom = binom * (k - j) / (j + 1);
    }
  }
  return out;
}

RayCovariogram::RayCovariogram(const Polytope& p, const DirectionTuple& theta)
    : a_(p.normal_matrix()), b_(p.offsets()), c_(ray_offsets(p, theta)) {
  if (theta.n() != p.dim()) throw InvalidArgument("direction blocks differ from the body dimension");
  volume_ = p.volume();
  radius_ = diff_body_radial(p, theta);
  cover(0.0, radius_, 0);
  std::sort(pieces_.begin(), pieces_.end(),
            [](const CovariogramPiece& x, const CovariogramPiece& y) { return x.a < y.a; });
  if (pieces_.empty()) throw PrecisionFailure("covariogram ray decomposition produced no pieces");
  // Close negligible gaps left between pieces; the polynomials extend across them.
  pieces_.front().a = 0.0;
  for (std::size_t i = 1; i < pieces_.size(); ++i) pieces_[i].a = pieces_[i - 1].b;
  pieces_.back().b = radius_;
  {
    // Pin g(0) = Vol(P) on the first piece so that subtracted integrands vanish at 0.
    CovariogramPiece& first = pieces_.front();
    first.coef[0] += volume_ - first(0.0);
  }
}

double RayCovariogram::operator()(double r) const {
  if (r < 0.0) throw InvalidArgument("ray parameter must be non-negative");
  if (r >= radius_) return 0.0;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), r,
                             [](double x, const CovariogramPiece& q) { return x < q.a; });
  if (it != pieces_.begin()) --it;
  return std::max(0.0, (*it)(r));
}

void RayCovariogram::cover(double a, double b, int depth) {
  const double scale = std::max(1.0, radius_);
  if (b - a <= 1e-13 * scale) return;
  if (depth > 200 || pieces_.size() > 5000)
    throw PrecisionFailure("covariogram ray decomposition did not terminate");

  const int n = static_cast<int>(a_.cols());
  const double rp = 0.5 * (a + b);
  const Eigen::VectorXd bp = b_ - rp * c_;
  const auto hv = enumerate_vertices(a_, bp, 1e-11 * scale);
  if (!hv) {
    // The inradius is concave in r and already negligible here, so g ~ 0 beyond rp.
    pieces_.push_back(CovariogramPiece{rp, b, rp, 1.0, 0, {}});
    cover(a, rp, depth + 1);
    return;
  }

  // Linear vertex trajectories v(r) = p_S - r w_S.
  const std::size_t nv = hv->vertices.size();
  std::vector<Vec> base(nv), vel(nv), at_probe(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    Mat as(n, n);
    Vec bs(n), cs(n);
    for (int i = 0; i < n; ++i) {
      const int j = hv->active[k][i];
      as.row(i) = a_.row(j);
      bs(i) = b_(j);
      cs(i) = c_(j);
    }
    const Eigen::FullPivLU<Mat> lu(as);
    if (!lu.isInvertible()) throw PrecisionFailure("singular active set in vertex enumeration");
    base[k] = lu.solve(bs);
    vel[k] = lu.solve(cs);
    at_probe[k] = base[k] - rp * vel[k];
  }

  double lo = a, hi = b;
  bool degenerate = false;
  for (std::size_t k = 0; k < nv && !degenerate; ++k) {
    for (Eigen::Index j = 0; j < a_.rows(); ++j) {
      const auto& act = hv->active[k];
      if (std::find(act.begin(), act.begin() + n, static_cast<int>(j)) != act.begin() + n) continue;
      const double slack = bp(j) - a_.row(j).dot(Eigen::VectorXd(at_probe[k]));
      const double rate = c_(j) - a_.row(j).dot(Eigen::VectorXd(vel[k]));
      if (std::abs(slack) <= 1e-10 * scale) {
        if (std::abs(rate) <= 1e-10) continue;  // tight along the whole piece
        degenerate = true;
        break;
      }
      const double hit = rp + slack / rate;
      if (rate > 0.0) hi = std::min(hi, hit);
      else if (rate < 0.0) lo = std::max(lo, hit);
    }
  }
  if (degenerate || hi <= lo) {
    cover(a, rp, depth + 1);
    cover(rp, b, depth + 1);
    return;
  }

  Hull hull;
  try {
    hull = convex_hull(at_probe);
  } catch (const DegenerateBody&) {
    pieces_.push_back(CovariogramPiece{rp, b, rp, 1.0, 0, {}});
    cover(a, rp, depth + 1);
    return;
  }
  const Vec z = hv->interior;
  std::vector<double> orient(hull.facets.size());
  auto signed_cone = [&](const HullFacet& f, double r) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.col(i) = base[f.vertices[i]] - r * vel[f.vertices[i]] - z;
    return m.determinant();
  };
  for (std::size_t fi = 0; fi < hull.facets.size(); ++fi)
    orient[fi] = signed_cone(hull.facets[fi], rp) >= 0.0 ? 1.0 : -1.0;
  const double nfact = factorial(n);
  auto volume_at = [&](double r) {
    double s = 0.0;
    for (std::size_t fi = 0; fi < hull.facets.size(); ++fi) s += orient[fi] * signed_cone(hull.facets[fi], r);
    return s / nfact;
  };

  // The volume is an exact polynomial of degree n, so interpolate it on a window
  // wide enough to stay well conditioned even when the piece itself is a sliver.
  lo = std::min(lo, rp);
  hi = std::max(hi, rp);
  const double half = std::max(0.5 * (hi - lo), 1e-3 * scale);
  CovariogramPiece piece{lo, hi, 0.5 * (lo + hi), half, n, {}};
  Eigen::MatrixXd vander(n + 1, n + 1);
  Eigen::VectorXd vals(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * (n + 1)));
    for (int k = 0; k <= n; ++k) vander(i, k) = std::pow(t, k);
    vals(i) = volume_at(piece.center + piece.scale * t);
  }
  const Eigen::VectorXd coef = vander.partialPivLu().solve(vals);
  for (int k = 0; k <= n; ++k) piece.coef[k] = coef(k);
  if (std::abs(piece(rp) - hull.volume) > 1e-9 * std::max(1.0, volume_))
    throw PrecisionFailure("covariogram piece does not reproduce the probe volume");
  pieces_.push_back(piece);

  if (lo > a) cover(a, lo, depth + 1);
  if (hi < b) cover(hi, b, depth + 1);
}

// ---------------------------------------------------------------------------

DerivativeCheck covariogram_derivative_check(const Polytope& p, const DirectionTuple& theta,
                                             const std::vector<double>& steps) {
  if (steps.empty()) throw InvalidArgument("derivative check needs at least one step");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] <= 0.0) throw InvalidArgument("steps must be positive");
    if (i > 0 && steps[i] >= steps[i - 1]) throw InvalidArgument("steps must be decreasing");
  }
  const double rho = diff_body_radial(p, theta);
  if (steps.front() > rho)
    throw StepOutOfRange("step " + std::to_string(steps.front()) +
                         " exceeds the difference body radius " + std::to_string(rho));

  const double g0 = p.volume();
  std::vector<double> h(steps), q(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i)
    q[i] = (m_covariogram(p, theta * steps[i]) - g0) / steps[i];
  // Neville's scheme evaluated at h = 0.
  for (std::size_t level = 1; level < q.size(); ++level)
    for (std::size_t i = q.size() - 1; i >= level; --i)
      q[i] = (h[i - level] * q[i] - h[i] * q[i - 1]) / (h[i - level] - h[i]);

  DerivativeCheck out;
  out.slope = q.back();
  out.expected = -proj_support(p, theta);
  out.discrepancy = std::abs(out.slope - out.expected);
  return out;
}

}  // namespace hobody
