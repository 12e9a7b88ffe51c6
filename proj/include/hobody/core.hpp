#pragma once

// Shared vocabulary: small fixed-capacity vectors, dimension constants and the
// error hierarchy used across every module.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hobody {

/// Largest ambient dimension handled anywhere (nm <= 12 plus headroom).
inline constexpr int kMaxDim = 16;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

/// Absolute tolerance for geometric predicates on O(1) coordinates.
inline constexpr double kGeomTol = 1e-9;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A body violates a precondition (origin not interior, non-positive radial value, ...).
class InvalidBody : public Error {
 public:
  using Error::Error;
};

/// Input spans fewer dimensions than required.
class DegenerateBody : public Error {
 public:
  DegenerateBody(const std::string& what, int achieved_dim)
      : Error(what), achieved_dim_(achieved_dim) {}
  int achieved_dim() const noexcept { return achieved_dim_; }

 private:
  int achieved_dim_;
};

class SingularMap : public Error {
 public:
  using Error::Error;
};

class PrecisionFailure : public Error {
 public:
  using Error::Error;
};

class StepOutOfRange : public Error {
 public:
  using Error::Error;
};

/// An integrand produced NaN or infinity.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Constants of the unit ball

/// Volume of the d-dimensional Euclidean unit ball.
inline double ball_volume(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

/// Surface measure of S^{d-1}, i.e. d * ball_volume(d).
inline double sphere_area(int d) { return d * ball_volume(d); }

/// Generalized binomial coefficient Gamma(x+1) / (Gamma(k+1) Gamma(x-k+1)).
inline double binomial(double x, double k) {
  return std::exp(std::lgamma(x + 1.0) - std::lgamma(k + 1.0) - std::lgamma(x - k + 1.0));
}

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Vec unit_vector(int d, int axis) {
  Vec v = Vec::Zero(d);
  v(axis) = 1.0;
  return v;
}

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }
inline double negative_part(double x) { return x < 0.0 ? -x : 0.0; }

std::string to_string(const Vec& v);

}  // namespace hobody
