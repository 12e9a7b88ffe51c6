#pragma once

// Named test bodies: built-in families per dimension and a JSON catalog reader.

#include "hobody/bodies.hpp"

#include <string>
#include <vector>

namespace hobody {

struct CatalogBody {
  std::string name;
  Body body;
};

/// Raised for malformed catalog files; `line` is 1-based, 0 when unknown.
class CatalogError : public Error {
 public:
  CatalogError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// conv{o, e_1, ..., e_n}.
Polytope simplex(int n);
/// [0,1]^n.
Polytope cube(int n);
/// conv{+-e_i}.
Polytope cross_polytope(int n);
/// Regular k-gon inscribed in the circle of the given radius.
Polytope regular_polygon(int k, double radius = 1.0);
/// Hull of 2n+6 random points on the unit sphere (seeded).
Polytope random_polytope(int n, std::uint64_t seed);
/// conv{o, e_1, e_2} with corners rounded by a small disc, as a polygon.
Polytope rounded_triangle(double radius = 0.05, int arc_points = 16);
/// Axis-aligned ellipsoid with semi-axes 1, 1/2, 1/3, ... after a fixed rotation.
Ellipsoid standard_ellipsoid(int n);

/// Built-in bodies of dimension n: simplex, cube, cross-polytope, ball,
/// ellipsoid, ten random polytopes, plus the 64-gon and rounded triangle for n = 2.
std::vector<CatalogBody> builtin_catalog(int n);

/// Parses a JSON catalog: an array of entries, or an object with a "bodies" array.
/// Entry: {"name"?, "type": polytope|ellipsoid|ball|simplex|cube, "dim", "vertices"|"factor", "center"?, "radius"?}.
std::vector<CatalogBody> parse_catalog(const std::string& text);
std::vector<CatalogBody> load_catalog(const std::string& path);

bool is_simplex_name(const std::string& name);

}  // namespace hobody
