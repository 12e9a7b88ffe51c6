#include "hobody/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace hobody {

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ')';
  return os.str();
}

std::size_t default_samples(int d) {
  if (d <= 4) return 200'000;
  if (d <= 8) return 1'000'000;
  return 4'000'000;
}

namespace {

void check_dim(int d) {
  if (d < 1) throw InvalidArgument("dimension must be at least 1");
  if (d > kMaxDim) throw InvalidArgument("dimension exceeds kMaxDim");
}

void check_count(std::size_t count) {
  if (count == 0) throw InvalidArgument("sample count must be positive");
}

Vec draw_direction(int d, CounterRng& rng) {
  Vec v(d);
  if (d == 1) {
    v(0) = (rng.next() >> 63) ? 1.0 : -1.0;
    return v;
  }
  for (;;) {
    for (int k = 0; k < d; ++k) v(k) = rng.normal();
    const double norm = v.norm();
    if (norm > 1e-150) return v / norm;
  }
}

double checked_radius(const StarBodyOracle& body, const Vec& u) {
  const double r = body.radial(u);
  if (!std::isfinite(r) || r <= 0.0)
    throw InvalidBody("radial function is not positive and finite at " + to_string(u));
  return r;
}

Vec draw_star_point(const StarBodyOracle& body, CounterRng& rng) {
  // Directions are accepted with probability (rho(u) / R)^d, which makes the
  // direction density proportional to rho^d as uniformity in L requires.
  const double bound = body.bounding_radius;
  if (!(bound > 0.0)) throw InvalidArgument("star body needs a positive bounding radius");
  for (long attempt = 0; attempt < 100'000'000; ++attempt) {
    const Vec u = draw_direction(body.dim, rng);
    const double rho = checked_radius(body, u);
    if (rng.uniform() > std::pow(rho / bound, body.dim)) continue;
    return rho * std::pow(rng.uniform(), 1.0 / body.dim) * u;
  }
  throw PrecisionFailure("rejection sampler did not accept a direction; bounding radius too loose");
}

std::vector<Vec> sphere_sample_impl(int d, std::size_t count, std::uint64_t seed, bool parallel) {
  check_dim(d);
  check_count(count);
  std::vector<Vec> out(count);
  const auto n = static_cast<std::int64_t>(count);
#if defined(HOBODY_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::int64_t i = 0; i < n; ++i) out[i] = sphere_point(d, seed, static_cast<std::size_t>(i));
  (void)parallel;
  return out;
}

MCEstimate sphere_integral_impl(const SphereFunction& f, int d, std::size_t count,
                                std::uint64_t seed, bool parallel) {
  check_dim(d);
  check_count(count);
  auto sample = [&](std::size_t i) {
    const Vec u = sphere_point(d, seed, i);
    const double y = f(u);
    if (!std::isfinite(y)) throw NonFiniteValue("integrand is not finite at direction " + to_string(u));
    return y;
  };
  return mc_average(count, seed, sample, sphere_area(d), parallel);
}

std::vector<Vec> star_sample_impl(const StarBodyOracle& body, std::size_t count,
                                  std::uint64_t seed, bool parallel) {
  check_dim(body.dim);
  check_count(count);
  std::vector<Vec> out(count);
  detail::evaluate_samples(
      count,
      [&](std::size_t i) {
        out[i] = star_body_point(body, seed, i);
        return 0.0;
      },
      parallel);
  return out;
}

MCEstimate star_volume_impl(const StarBodyOracle& body, std::size_t count, std::uint64_t seed,
                            bool parallel) {
  check_dim(body.dim);
  const int d = body.dim;
  SphereFunction f = [&](const Vec& u) { return std::pow(checked_radius(body, u), d) / d; };
  return sphere_integral_impl(f, d, count, seed, parallel);
}

}  // namespace

Vec sphere_point(int d, std::uint64_t seed, std::size_t index) {
  CounterRng rng(seed, index);
  return draw_direction(d, rng);
}

Vec star_body_point(const StarBodyOracle& body, std::uint64_t seed, std::size_t index) {
  CounterRng rng(seed, index);
  return draw_star_point(body, rng);
}

std::vector<Vec> sphere_sample(int d, std::size_t count, std::uint64_t seed) {
  return sphere_sample_impl(d, count, seed, true);
}

MCEstimate mc_sphere_integral(const SphereFunction& f, int d, std::size_t count,
                              std::uint64_t seed) {
  return sphere_integral_impl(f, d, count, seed, true);
}

std::vector<Vec> sample_star_body(const StarBodyOracle& body, std::size_t count,
                                  std::uint64_t seed) {
  return star_sample_impl(body, count, seed, true);
}

MCEstimate star_body_volume(const StarBodyOracle& body, std::size_t count, std::uint64_t seed) {
  return star_volume_impl(body, count, seed, true);
}

MCEstimate mc_star_average(const StarBodyOracle& body, const std::function<double(const Vec&)>& f,
                           std::size_t count, std::uint64_t seed) {
  check_dim(body.dim);
  check_count(count);
  return mc_average(count, seed, [&](std::size_t i) {
    const Vec x = star_body_point(body, seed, i);
    const double y = f(x);
    if (!std::isfinite(y)) throw NonFiniteValue("integrand is not finite at " + to_string(x));
    return y;
  });
}

namespace reference {

std::vector<Vec> sphere_sample(int d, std::size_t count, std::uint64_t seed) {
  return sphere_sample_impl(d, count, seed, false);
}

MCEstimate mc_sphere_integral(const SphereFunction& f, int d, std::size_t count,
                              std::uint64_t seed) {
  return sphere_integral_impl(f, d, count, seed, false);
}

std::vector<Vec> sample_star_body(const StarBodyOracle& body, std::size_t count,
                                  std::uint64_t seed) {
  return star_sample_impl(body, count, seed, false);
}

MCEstimate star_body_volume(const StarBodyOracle& body, std::size_t count, std::uint64_t seed) {
  return star_volume_impl(body, count, seed, false);
}

}  // namespace reference

GaussRule gauss_legendre(int points) {
  if (points < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (int i = 0; i < (points + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  return rule;
}

namespace detail {

MCEstimate summarize(const std::vector<double>& values, std::uint64_t seed, double scale) {
  const std::size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  MCEstimate est;
  est.value = scale * mean;
  est.std_error = std::abs(scale) * std::sqrt(var / static_cast<double>(n));
  est.samples = n;
  est.seed = seed;
  return est;
}

}  // namespace detail

}  // namespace hobody
