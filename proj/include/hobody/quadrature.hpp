#pragma once

// Monte Carlo integration over spheres and star bodies.
//
// Every kernel evaluates sample i from its own counter-based stream, stores the
// per-sample values and reduces them serially in index order.  The parallel
// kernels (OpenMP) and the serial reference kernels in namespace `reference`
// therefore return bit-identical estimates.

#include "hobody/core.hpp"
#include "hobody/rng.hpp"

#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace hobody {

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Radial-function description of a star body about the origin.
struct StarBodyOracle {
  int dim = 0;
  std::function<double(const Vec&)> radial;  ///< evaluated on unit vectors
  double bounding_radius = 0.0;
  std::optional<double> exact_volume;  ///< known closed-form volume, when available
};

using SphereFunction = std::function<double(const Vec&)>;

/// Default sample budget per estimate in dimension d.
std::size_t default_samples(int d);

/// Uniform direction i of the stream `seed` on S^{d-1}.
Vec sphere_point(int d, std::uint64_t seed, std::size_t index);

/// Uniform point i of the stream `seed` inside L.
Vec star_body_point(const StarBodyOracle& body, std::uint64_t seed, std::size_t index);

std::vector<Vec> sphere_sample(int d, std::size_t count, std::uint64_t seed);

/// Estimate of the integral of f over S^{d-1} against the unnormalized surface
/// measure (total mass d * kappa_d).
MCEstimate mc_sphere_integral(const SphereFunction& f, int d, std::size_t count,
                              std::uint64_t seed);

std::vector<Vec> sample_star_body(const StarBodyOracle& body, std::size_t count,
                                  std::uint64_t seed);

/// Vol_d(L) = (1/d) * integral of rho_L^d over the sphere.
MCEstimate star_body_volume(const StarBodyOracle& body, std::size_t count, std::uint64_t seed);

/// Average of f over points uniformly distributed in L.
MCEstimate mc_star_average(const StarBodyOracle& body, const std::function<double(const Vec&)>& f,
                           std::size_t count, std::uint64_t seed);

/// Serial implementations kept as the ground truth for the parallel kernels.
namespace reference {
std::vector<Vec> sphere_sample(int d, std::size_t count, std::uint64_t seed);
MCEstimate mc_sphere_integral(const SphereFunction& f, int d, std::size_t count,
                              std::uint64_t seed);
std::vector<Vec> sample_star_body(const StarBodyOracle& body, std::size_t count,
                                  std::uint64_t seed);
MCEstimate star_body_volume(const StarBodyOracle& body, std::size_t count, std::uint64_t seed);
}  // namespace reference

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int points);

/// Combined standard error of independent estimates.
inline double combined_error(double a, double b) { return std::hypot(a, b); }

/// Standard error of a product of independent estimates (first-order).
inline double product_error(double x, double sx, double y, double sy) {
  return std::hypot(sx * y, x * sy);
}

namespace detail {

/// Mean and standard error of per-sample values, reduced in index order.
MCEstimate summarize(const std::vector<double>& values, std::uint64_t seed, double scale);

/// Fills values[i] = sample(i) for i < count; rethrows the lowest-index failure.
template <class Sample>
std::vector<double> evaluate_samples(std::size_t count, Sample&& sample, bool parallel) {
  std::vector<double> values(count);
  std::exception_ptr failure;
  std::size_t failure_index = std::numeric_limits<std::size_t>::max();
  const auto n = static_cast<std::int64_t>(count);
#if defined(HOBODY_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      values[static_cast<std::size_t>(i)] = sample(static_cast<std::size_t>(i));
    } catch (...) {
#if defined(HOBODY_HAVE_OPENMP)
#pragma omp critical(hobody_sample_failure)
#endif
      {
        if (static_cast<std::size_t>(i) < failure_index) {
          failure_index = static_cast<std::size_t>(i);
          failure = std::current_exception();
        }
      }
    }
  }
  (void)parallel;
  if (failure) std::rethrow_exception(failure);
  return values;
}

}  // namespace detail

/// Generic parallel estimator: mean of sample(i) over i < count, times scale.
template <class Sample>
MCEstimate mc_average(std::size_t count, std::uint64_t seed, Sample&& sample, double scale = 1.0,
                      bool parallel = true) {
  if (count == 0) throw InvalidArgument("sample count must be positive");
  auto values = detail::evaluate_samples(count, std::forward<Sample>(sample), parallel);
  return detail::summarize(values, seed, scale);
}

}  // namespace hobody
