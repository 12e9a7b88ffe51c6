#include "hobody/radialmean.hpp"

#include "hobody/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace hobody {

namespace {

enum class Branch { positive, zero, negative };

Branch branch_of(double p) {
  if (!(p > -1.0)) throw OutOfRange("radial mean exponent must exceed -1, got " + std::to_string(p));
  if (p > 0.0) return Branch::positive;
  if (p < 0.0) return Branch::negative;
  return Branch::zero;
}

/// Integrand of the Mellin transform for the given branch, with g already divided by V.
double mellin_integrand(Branch br, double p, double gv, double r) {
  switch (br) {
    case Branch::positive: return gv * std::pow(r, p - 1.0);
    case Branch::negative: return (gv - 1.0) * std::pow(r, p - 1.0);
    case Branch::zero: return (gv - 1.0) / r;
  }
  return 0.0;
}

/// Turns the branch integral, taken in units s = r / rho_D, into the radial value.
double finish(Branch br, double p, double integral, double rho_d) {
  double ratio = 0.0;
  switch (br) {
    case Branch::positive: ratio = std::pow(p * integral, 1.0 / p); break;
    case Branch::negative: {
      const double rp = p * integral + 1.0;
      if (!(rp > 0.0)) throw PrecisionFailure("negative-order Mellin transform is not positive");
      ratio = std::pow(rp, 1.0 / p);
      break;
    }
    case Branch::zero: ratio = std::exp(integral); break;
  }
  const double rho = rho_d * ratio;
  if (!std::isfinite(rho) || rho <= 0.0) throw PrecisionFailure("radial mean value is not finite");
  return rho;
}

/// Rule exact for the polynomial part of s^{p-1} q(s) when p is a moderate integer.
const GaussRule& rule_for(double p, int degree) {
  thread_local std::map<int, GaussRule> cache;
  const int points = std::clamp(static_cast<int>(std::ceil(0.5 * (p + degree))) + 1, 32, 640);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, gauss_legendre(points)).first;
  return it->second;
}

/// Integral of the branch integrand over one piece, in units s = r / rho_D.
double piece_integral(const CovariogramPiece& piece, Branch br, double p, double vol, double rho_d) {
  const double a = piece.a / rho_d, b = piece.b / rho_d, w = b - a;
  if (w <= 0.0) return 0.0;
  if (a <= 0.1 * w) {
    // Expansion about s = 0 is well conditioned here.
    auto e = piece.monomial();
    double unit = 1.0;
    for (int k = 0; k <= piece.degree; ++k, unit *= rho_d) e[k] *= unit / vol;
    double s = 0.0;
    switch (br) {
      case Branch::positive:
        for (int k = 0; k <= piece.degree; ++k) s += e[k] * (std::pow(b, k + p) - std::pow(a, k + p)) / (k + p);
        return s;
      case Branch::negative:
        if (a > 0.0) s += (e[0] - 1.0) * (std::pow(b, p) - std::pow(a, p)) / p;
        for (int k = 1; k <= piece.degree; ++k) s += e[k] * (std::pow(b, k + p) - std::pow(a, k + p)) / (k + p);
        return s;
      case Branch::zero:
        if (a > 0.0) s += (e[0] - 1.0) * std::log(b / a);
        for (int k = 1; k <= piece.degree; ++k) s += e[k] * (std::pow(b, k) - std::pow(a, k)) / k;
        return s;
    }
  }
  const GaussRule& rule = rule_for(p, piece.degree);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = a + 0.5 * w * (rule.nodes[i] + 1.0);
    s += rule.weights[i] * mellin_integrand(br, p, piece(x * rho_d) / vol, x);
  }
  return 0.5 * w * s;
}

}  // namespace

double berwald_factor(int n, double p) {
  if (p == 0.0) {
    double h = 0.0;
    for (int k = 1; k <= n; ++k) h += 1.0 / k;
    return std::exp(h);
  }
  return std::pow(binomial(p + n, n), 1.0 / p);
}

double rmb_radial(const RayCovariogram& ray, double p) {
  if (std::isinf(p) && p > 0.0) return ray.radius();
  const Branch br = branch_of(p);
  double integral = 0.0;
  for (const CovariogramPiece& piece : ray.pieces())
    integral += piece_integral(piece, br, p, ray.volume(), ray.radius());
  return finish(br, p, integral, ray.radius());
}

double rmb_radial(const Polytope& k, int m, double p, const DirectionTuple& theta) {
  if (theta.m() != m) throw InvalidArgument("direction tuple does not have m blocks");
  if (std::isinf(p) && p > 0.0) return diff_body_radial(k, theta);
  branch_of(p);
  return rmb_radial(RayCovariogram(k, theta), p);
}

double rmb_radial_gauss(const Polytope& k, int m, double p, const DirectionTuple& theta,
                        int quad_points) {
  if (quad_points < 64) throw InvalidArgument("Gauss-Legendre route needs at least 64 points");
  if (theta.m() != m) throw InvalidArgument("direction tuple does not have m blocks");
  if (std::isinf(p) && p > 0.0) return diff_body_radial(k, theta);
  const Branch br = branch_of(p);
  const double rho_d = diff_body_radial(k, theta);
  const double vol = k.volume();
  const GaussRule rule = gauss_legendre(quad_points);

  // r = rho_D s^q smooths the algebraic behaviour of the integrand at r = 0;
  // the integral is kept in units of rho_D.
  const double lead = br == Branch::positive ? p : br == Branch::negative ? 1.0 + p : 1.0;
  const double q = std::max(1.0, std::ceil(4.0 / lead));
  auto gv_at = [&](double x) { return m_covariogram(k, theta * (rho_d * x)) / vol; };
  auto f = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double x = std::pow(s, q);
    return mellin_integrand(br, p, gv_at(x), x) * q * std::pow(s, q - 1.0);
  };

  // For p <= 0 the factor g/V - 1 cancels catastrophically near 0, so [0, x0]
  // is integrated from the first-order expansion with a slope read off at x0.
  constexpr double x0 = 1e-6;
  double tail = 0.0, s0 = 0.0;
  if (br != Branch::positive) {
    const double slope = (gv_at(x0) - 1.0) / x0;
    tail = br == Branch::zero ? slope * x0 : slope * std::pow(x0, p + 1.0) / (p + 1.0);
    s0 = std::pow(x0, 1.0 / q);
  }
  auto panel = [&](double a, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(a + 0.5 * (b - a) * (rule.nodes[i] + 1.0));
    return 0.5 * (b - a) * s;
  };

  const double whole = panel(s0, 1.0);
  const double tol = 1e-8 * std::max(std::abs(whole), 1e-300);
  double worst = 0.0;
  std::function<double(double, double, double, int)> adapt = [&](double a, double b, double est,
                                                                  int depth) -> double {
    const double c = 0.5 * (a + b);
    const double left = panel(a, c), right = panel(c, b);
    const double diff = std::abs(left + right - est);
    if (diff <= tol * (b - a) || depth >= 30) {
      if (depth >= 30) worst = std::max(worst, diff / std::max(std::abs(whole), 1e-300));
      return left + right;
    }
    return adapt(a, c, left, depth + 1) + adapt(c, b, right, depth + 1);
  };
  const double integral = tail + adapt(s0, 1.0, whole, 0);
  if (worst > 1e-6) throw PrecisionFailure("Gauss-Legendre refinement did not converge");
  return finish(br, p, integral, rho_d);
}

MCEstimate rmb_radial_zero_mc(const Polytope& k, const DirectionTuple& theta, std::size_t count,
                              std::uint64_t seed) {
  const int n = k.dim();
  Vec lo = k.vertices()[0], hi = k.vertices()[0];
  for (const Vec& v : k.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  auto sample = [&](std::size_t i) {
    CounterRng rng(seed, i);
    Vec y(n);
    do {
      for (int j = 0; j < n; ++j) y(j) = lo(j) + (hi(j) - lo(j)) * rng.uniform();
    } while (!k.contains(y, 0.0));
    // min_i rho_{K-y}(-theta_i): largest r with y - r theta_i in K for every i.
    double r = std::numeric_limits<double>::infinity();
    for (const Facet& f : k.facets()) {
      const double slack = f.offset - f.normal.dot(y);
      for (int b = 0; b < theta.m(); ++b) {
        const double rate = -f.normal.dot(theta.block(b));
        if (rate > 0.0) r = std::min(r, slack / rate);
      }
    }
    return std::log(r);
  };
  const MCEstimate lg = mc_average(count, seed, sample);
  const double rho = std::exp(lg.value);
  return MCEstimate{rho, rho * lg.std_error, lg.samples, seed};
}

StarBodyOracle rmb_oracle(const Polytope& k, int m, double p) {
  branch_of(std::isinf(p) ? 1.0 : p);
  const int n = k.dim();
  double diam = 0.0;
  for (const Vec& a : k.vertices())
    for (const Vec& b : k.vertices()) diam = std::max(diam, (a - b).norm());
  StarBodyOracle o;
  o.dim = n * m;
  o.radial = [k, n, m, p](const Vec& u) { return rmb_radial(k, m, p, BlockVector(n, u)); };
  o.bounding_radius = std::sqrt(static_cast<double>(m)) * diam;
  return o;
}

VolumeIdentity rmb_volume_identity(const Polytope& k, int m, std::size_t count, std::uint64_t seed) {
  const int n = k.dim();
  VolumeIdentity out;
  out.volume = star_body_volume(rmb_oracle(k, m, static_cast<double>(n * m)), count, seed);
  out.expected = std::pow(k.volume(), m);
  out.discrepancy = std::abs(out.volume.value - out.expected);
  return out;
}

BerwaldChain berwald_chain_check(const Polytope& k, int m, const DirectionTuple& theta,
                                 const std::vector<double>& p_list, double tolerance) {
  if (!std::is_sorted(p_list.begin(), p_list.end()))
    throw InvalidArgument("exponent list must be sorted ascending");
  if (theta.m() != m) throw InvalidArgument("direction tuple does not have m blocks");
  const int n = k.dim();
  const RayCovariogram ray(k, theta);
  BerwaldChain out;
  out.rho_difference = ray.radius();
  out.rho_polar = n * k.volume() / proj_support(k, theta);
  double gmin = std::numeric_limits<double>::infinity(), gmax = -gmin;
  out.bracketed = true;
  for (double p : p_list) {
    BerwaldRow row;
    row.p = p;
    row.rho = rmb_radial(ray, p);
    row.g = berwald_factor(n, p) * row.rho;
    gmin = std::min(gmin, row.g);
    gmax = std::max(gmax, row.g);
    const double slack = tolerance * std::max(1.0, row.g);
    if (row.g < out.rho_difference - slack || row.g > out.rho_polar + slack) out.bracketed = false;
    out.rows.push_back(row);
  }
  out.max_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    out.max_increase = std::max(out.max_increase, out.rows[i].g - out.rows[i - 1].g);
  if (out.rows.size() < 2) out.max_increase = 0.0;
  out.spread = out.rows.empty() ? 0.0 : gmax - gmin;
  out.monotone = out.max_increase <= tolerance;
  return out;
}

}  // namespace hobody
