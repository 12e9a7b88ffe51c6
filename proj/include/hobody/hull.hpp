#pragma once

// Convex hulls of point sets in dimension 1..4.
//
// d = 2 uses Andrew's monotone chain; d = 3, 4 use beneath-beyond insertion
// producing a simplicial boundary.  Coplanar simplicial facets are left
// unmerged here; Polytope groups them into geometric facets.

#include "hobody/core.hpp"

#include <array>
#include <span>
#include <vector>

namespace hobody {

inline constexpr int kMaxHullDim = 4;

struct HullFacet {
  std::array<int, kMaxHullDim> vertices{};  ///< first `dim` entries are used
  Vec normal;                               ///< unit outward normal
  double offset = 0.0;                      ///< facet lies on <x, normal> = offset
  double measure = 0.0;                     ///< (dim-1)-volume of the simplex
};

struct Hull {
  int dim = 0;
  std::vector<int> vertices;  ///< indices of input points that are hull vertices
  std::vector<HullFacet> facets;
  Vec interior;               ///< a strictly interior point
  double volume = 0.0;
};

/// Dimension of the affine hull of the points (-1 when empty).
int affine_dimension(std::span<const Vec> points, double tol = kGeomTol);

/// Full-dimensional hull; throws DegenerateBody carrying the achieved dimension.
Hull convex_hull(std::span<const Vec> points, double tol = kGeomTol);

/// Volume of conv(points); zero when the points are lower-dimensional.
double hull_volume(std::span<const Vec> points, double tol = kGeomTol);

}  // namespace hobody
