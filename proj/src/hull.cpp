#include "hobody/hull.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hobody {

namespace {

double coordinate_scale(std::span<const Vec> points) {
  double s = 1.0;
  for (const Vec& p : points) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

/// Greedy selection of affinely independent points; returns the chosen indices.
std::vector<int> independent_subset(std::span<const Vec> points, double tol) {
  std::vector<int> chosen;
  if (points.empty()) return chosen;
  const int d = static_cast<int>(points[0].size());
  int first = 0;
  for (int i = 1; i < static_cast<int>(points.size()); ++i)
    if (points[i](0) < points[first](0)) first = i;
  chosen.push_back(first);
  std::vector<Vec> basis;
  while (static_cast<int>(chosen.size()) <= d) {
    double best = -1.0;
    int best_i = -1;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
      Vec r = points[i] - points[first];
      for (const Vec& b : basis) r -= r.dot(b) * b;
      const double dist = r.norm();
      if (dist > best) {
        best = dist;
        best_i = i;
      }
    }
    if (best <= tol) break;
    Vec r = points[best_i] - points[first];
    for (const Vec& b : basis) r -= r.dot(b) * b;
    basis.push_back(r / r.norm());
    chosen.push_back(best_i);
  }
  return chosen;
}

double det3(const double* a, const double* b, const double* c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Generalized cross product of the d-1 edge vectors; its norm is the
/// (d-1)-volume of the spanned parallelotope.
Vec cross(const std::vector<Vec>& edges, int d) {
  Vec n(d);
  if (d == 2) {
    n << edges[0](1), -edges[0](0);
  } else if (d == 3) {
    n = Eigen::Vector3d(edges[0](0), edges[0](1), edges[0](2))
            .cross(Eigen::Vector3d(edges[1](0), edges[1](1), edges[1](2)));
  } else {
    // d == 4: cofactor expansion along an implicit first row of basis vectors.
    for (int j = 0; j < 4; ++j) {
      double rows[3][3];
      for (int r = 0; r < 3; ++r) {
        int col = 0;
        for (int k = 0; k < 4; ++k)
          if (k != j) rows[r][col++] = edges[r](k);
      }
      const double minor = det3(rows[0], rows[1], rows[2]);
      n(j) = (j % 2 == 0) ? minor : -minor;
    }
  }
  return n;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Hull hull_1d(std::span<const Vec> points) {
  int lo = 0, hi = 0;
  for (int i = 1; i < static_cast<int>(points.size()); ++i) {
    if (points[i](0) < points[lo](0)) lo = i;
    if (points[i](0) > points[hi](0)) hi = i;
  }
  Hull h;
  h.dim = 1;
  h.vertices = {lo, hi};
  HullFacet left, right;
  left.vertices[0] = lo;
  left.normal = make_vec({-1.0});
  left.offset = -points[lo](0);
  left.measure = 1.0;
  right.vertices[0] = hi;
  right.normal = make_vec({1.0});
  right.offset = points[hi](0);
  right.measure = 1.0;
  h.facets = {left, right};
  h.interior = make_vec({0.5 * (points[lo](0) + points[hi](0))});
  h.volume = points[hi](0) - points[lo](0);
  return h;
}

Hull hull_2d(std::span<const Vec> points, double tol) {
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (points[a](0) != points[b](0)) return points[a](0) < points[b](0);
    return points[a](1) < points[b](1);
  });
  auto turn = [&](int o, int a, int b) {
    const Vec& P = points[o];
    const double ax = points[a](0) - P(0), ay = points[a](1) - P(1);
    const double bx = points[b](0) - P(0), by = points[b](1) - P(1);
    const double la = std::hypot(ax, ay), lb = std::hypot(bx, by);
    // Normalized cross product so that the collinearity test is a distance.
    return (ax * by - ay * bx) / std::max({la, lb, 1e-300});
  };
  std::vector<int> chain(2 * points.size());
  int k = 0;
  for (int idx : order) {
    while (k >= 2 && turn(chain[k - 2], chain[k - 1], idx) <= tol) --k;
    chain[k++] = idx;
  }
  for (int i = static_cast<int>(order.size()) - 2, lower = k + 1; i >= 0; --i) {
    const int idx = order[i];
    while (k >= lower && turn(chain[k - 2], chain[k - 1], idx) <= tol) --k;
    chain[k++] = idx;
  }
  chain.resize(k - 1);  // counter-clockwise, last point repeats the first

  Hull h;
  h.dim = 2;
  h.vertices = chain;
  Vec c = Vec::Zero(2);
  for (int idx : chain) c += points[idx];
  c /= static_cast<double>(chain.size());
  h.interior = c;
  double area = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Vec& a = points[chain[i]];
    const Vec& b = points[chain[(i + 1) % chain.size()]];
    HullFacet f;
    f.vertices[0] = chain[i];
    f.vertices[1] = chain[(i + 1) % chain.size()];
    const double dx = b(0) - a(0), dy = b(1) - a(1);
    const double len = std::hypot(dx, dy);
    f.normal = make_vec({dy / len, -dx / len});
    f.offset = f.normal.dot(a);
    f.measure = len;
    area += a(0) * b(1) - a(1) * b(0);
    h.facets.push_back(f);
  }
  h.volume = 0.5 * area;
  return h;
}

/// Determinant of the leading d x d block (d = 3, 4) and the matching permanent
/// of absolute products, which bounds the rounding error.
double det_rows(const std::array<std::array<double, 4>, 4>& m, int d, double& permanent) {
  if (d == 3) {
    const double a = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double b = m[1][0] * m[2][2] - m[1][2] * m[2][0];
    const double c = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    permanent = std::abs(m[0][0]) * (std::abs(m[1][1] * m[2][2]) + std::abs(m[1][2] * m[2][1])) +
                std::abs(m[0][1]) * (std::abs(m[1][0] * m[2][2]) + std::abs(m[1][2] * m[2][0])) +
                std::abs(m[0][2]) * (std::abs(m[1][0] * m[2][1]) + std::abs(m[1][1] * m[2][0]));
    return m[0][0] * a - m[0][1] * b + m[0][2] * c;
  }
  double det = 0.0, perm = 0.0;
  for (int j = 0; j < 4; ++j) {
    std::array<std::array<double, 4>, 4> minor{};
    for (int r = 1; r < 4; ++r) {
      int col = 0;
      for (int k = 0; k < 4; ++k)
        if (k != j) minor[r - 1][col++] = m[r][k];
    }
    double sub_perm = 0.0;
    const double sub = det_rows(minor, 3, sub_perm);
    det += (j % 2 == 0 ? m[0][j] : -m[0][j]) * sub;
    perm += std::abs(m[0][j]) * sub_perm;
  }
  permanent = perm;
  return det;
}

/// Exact sign through integers: every double is M 2^e with a 53-bit M, so all
/// inputs share the grid 2^{e_min}.  Workspace is reused to avoid allocation.
class ExactDet {
 public:
  ExactDet() {
    for (auto& row : m_)
      for (auto& x : row) mpz_init(x);
    for (auto& x : t_) mpz_init(x);
  }
  ~ExactDet() {
    for (auto& row : m_)
      for (auto& x : row) mpz_clear(x);
    for (auto& x : t_) mpz_clear(x);
  }
  ExactDet(const ExactDet&) = delete;
  ExactDet& operator=(const ExactDet&) = delete;

  int sign(const std::array<const Vec*, kMaxHullDim + 1>& pts, int d) {
    int emin = std::numeric_limits<int>::max();
    for (int i = 0; i <= d; ++i)
      for (int k = 0; k < d; ++k) {
        const double x = (*pts[i])(k);
        if (x == 0.0) continue;
        int e = 0;
        std::frexp(x, &e);
        emin = std::min(emin, e - 53);
      }
    if (emin == std::numeric_limits<int>::max()) return 0;
    for (int r = 0; r < d; ++r)
      for (int k = 0; k < d; ++k) {
        load(t_[0], (*pts[r + 1])(k), emin);
        load(t_[1], (*pts[0])(k), emin);
        mpz_sub(m_[r][k], t_[0], t_[1]);
      }
    if (d == 3) {
      det3(0, 1, 2, 0, 1, 2, t_[2]);
      return mpz_sgn(t_[2]);
    }
    // Expansion along row 0 with 3x3 minors on rows 1..3.
    mpz_set_ui(t_[3], 0);
    static constexpr int cols[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    for (int j = 0; j < 4; ++j) {
      det3(1, 2, 3, cols[j][0], cols[j][1], cols[j][2], t_[2]);
      if (j % 2 == 0) mpz_addmul(t_[3], m_[0][j], t_[2]);
      else mpz_submul(t_[3], m_[0][j], t_[2]);
    }
    return mpz_sgn(t_[3]);
  }

 private:
  static void load(mpz_t out, double x, int emin) {
    if (x == 0.0) {
      mpz_set_ui(out, 0);
      return;
    }
    int e = 0;
    const double f = std::frexp(x, &e);
    mpz_set_d(out, std::ldexp(f, 53));
    mpz_mul_2exp(out, out, static_cast<mp_bitcnt_t>(e - 53 - emin));
  }

  void det3(int r0, int r1, int r2, int c0, int c1, int c2, mpz_t out) {
    // out = m[r0][c0](m[r1][c1] m[r2][c2] - m[r1][c2] m[r2][c1]) - ...
    mpz_set_ui(out, 0);
    const int c[3] = {c0, c1, c2};
    for (int j = 0; j < 3; ++j) {
      const int a = c[(j + 1) % 3], b = c[(j + 2) % 3];
      mpz_mul(t_[4], m_[r1][a], m_[r2][b]);
      mpz_submul(t_[4], m_[r1][b], m_[r2][a]);
      mpz_addmul(out, m_[r0][c[j]], t_[4]);
    }
  }

  mpz_t m_[4][4];
  mpz_t t_[5];
};

int orientation(std::span<const Vec> points, const std::array<int, kMaxHullDim>& idx, int d,
                const Vec& q) {
  std::array<const Vec*, kMaxHullDim + 1> pts{};
  for (int r = 0; r < d; ++r) pts[r] = &points[idx[r]];
  pts[d] = &q;
  std::array<std::array<double, 4>, 4> m{};
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) m[r][k] = (*pts[r + 1])(k) - (*pts[0])(k);
  double perm = 0.0;
  const double det = det_rows(m, d, perm);
  if (std::abs(det) > (d == 3 ? 1e-14 : 1e-13) * perm) return det > 0.0 ? 1 : -1;
  thread_local ExactDet exact;
  return exact.sign(pts, d);
}

struct WorkFacet {
  std::array<int, kMaxHullDim> v{};  ///< ordered so that the interior has negative orientation
  Vec normal;
  double offset = 0.0;
  double measure = 0.0;
  bool alive = true;
};

bool make_facet(std::span<const Vec> points, std::array<int, kMaxHullDim> idx, int d,
                const Vec& interior, WorkFacet& out) {
  const int side = orientation(points, idx, d, interior);
  if (side == 0) return false;
  if (side > 0) std::swap(idx[0], idx[1]);
  std::vector<Vec> edges;
  edges.reserve(d - 1);
  for (int k = 1; k < d; ++k) edges.push_back(points[idx[k]] - points[idx[0]]);
  Vec n = cross(edges, d);
  const double len = n.norm();
  out.v = idx;
  out.measure = len / factorial(d - 1);
  out.alive = true;
  if (len > 0.0) {
    out.normal = n / len;
    out.offset = out.normal.dot(points[idx[0]]);
    if (out.normal.dot(interior) > out.offset) {
      out.normal = -out.normal;
      out.offset = -out.offset;
    }
  } else {
    out.normal = Vec::Zero(d);
    out.offset = 0.0;
  }
  return true;
}

/// Beneath-beyond insertion with exact-sign visibility.
Hull hull_nd(std::span<const Vec> points, const std::vector<int>& simplex, double tol) {
  const int d = static_cast<int>(points[0].size());
  Vec interior = Vec::Zero(d);
  for (int idx : simplex) interior += points[idx];
  interior /= static_cast<double>(simplex.size());

  std::vector<WorkFacet> facets;
  for (int skip = 0; skip <= d; ++skip) {
    std::array<int, kMaxHullDim> idx{};
    int k = 0;
    for (int j = 0; j <= d; ++j)
      if (j != skip) idx[k++] = simplex[j];
    WorkFacet f;
    make_facet(points, idx, d, interior, f);
    facets.push_back(f);
  }

  std::vector<char> skip_point(points.size(), 0);
  for (int idx : simplex) skip_point[idx] = 1;
  // Points within tol of an earlier one add nothing and only create slivers.
  std::vector<int> kept(simplex.begin(), simplex.end());
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    if (skip_point[p]) continue;
    for (int q : kept) {
      if ((points[p] - points[q]).norm() <= tol) {
        skip_point[p] = 1;
        break;
      }
    }
    if (!skip_point[p]) kept.push_back(p);
  }

  using Ridge = std::array<int, kMaxHullDim - 1>;
  std::vector<Ridge> ridges;
  std::vector<std::array<int, kMaxHullDim>> horizon;
  std::vector<int> visible;
  std::vector<int> pending;
  for (int p = 0; p < static_cast<int>(points.size()); ++p)
    if (!skip_point[p]) pending.push_back(p);
  for (const int p : pending) {
    visible.clear();
    for (int f = 0; f < static_cast<int>(facets.size()); ++f)
      if (orientation(points, facets[f].v, d, points[p]) > 0) visible.push_back(f);
    if (visible.empty()) continue;

    ridges.clear();
    for (int f : visible) {
      for (int skip = 0; skip < d; ++skip) {
        Ridge r;
        r.fill(-1);
        int k = 0;
        for (int j = 0; j < d; ++j)
          if (j != skip) r[k++] = facets[f].v[j];
        std::sort(r.begin(), r.begin() + (d - 1));
        ridges.push_back(r);
      }
      facets[f].alive = false;
    }
    std::sort(ridges.begin(), ridges.end());
    for (std::size_t i = 0; i < ridges.size();) {
      std::size_t j = i;
      while (j < ridges.size() && ridges[j] == ridges[i]) ++j;
      if (j - i == 1) {
        std::array<int, kMaxHullDim> idx{};
        for (int k = 0; k < d - 1; ++k) idx[k] = ridges[i][k];
        idx[d - 1] = p;
        WorkFacet nf;
        if (make_facet(points, idx, d, interior, nf)) facets.push_back(nf);
      }
      i = j;
    }
    std::erase_if(facets, [](const WorkFacet& f) { return !f.alive; });
  }

  Hull h;
  h.dim = d;
  h.interior = interior;
  std::vector<char> is_vertex(points.size(), 0);
  for (const WorkFacet& f : facets) {
    // Cone volume from the vertices themselves, so slivers contribute ~0.
    std::array<std::array<double, 4>, 4> m{};
    for (int r = 0; r < d; ++r)
      for (int k = 0; k < d; ++k) m[r][k] = points[f.v[r]](k) - interior(k);
    double perm = 0.0;
    h.volume += (d % 2 == 1 ? 1.0 : -1.0) * det_rows(m, d, perm) / factorial(d);
    for (int k = 0; k < d; ++k) is_vertex[f.v[k]] = 1;
    if (f.measure <= 0.0) continue;
    HullFacet out;
    out.vertices = f.v;
    out.normal = f.normal;
    out.offset = f.offset;
    out.measure = f.measure;
    h.facets.push_back(std::move(out));
  }
  for (int i = 0; i < static_cast<int>(points.size()); ++i)
    if (is_vertex[i]) h.vertices.push_back(i);
  return h;
}

}  // namespace

int affine_dimension(std::span<const Vec> points, double tol) {
  if (points.empty()) return -1;
  const double t = tol * coordinate_scale(points);
  return static_cast<int>(independent_subset(points, t).size()) - 1;
}

Hull convex_hull(std::span<const Vec> points, double tol) {
  if (points.empty()) throw DegenerateBody("convex hull of an empty point set", -1);
  const int d = static_cast<int>(points[0].size());
  if (d < 1 || d > kMaxHullDim) throw InvalidArgument("convex hull supports dimensions 1..4");
  const double t = tol * coordinate_scale(points);
  const std::vector<int> simplex = independent_subset(points, t);
  const int achieved = static_cast<int>(simplex.size()) - 1;
  if (achieved < d)
    throw DegenerateBody("points span only an affine subspace of dimension " +
                             std::to_string(achieved),
                         achieved);
  if (d == 1) return hull_1d(points);
  if (d == 2) return hull_2d(points, t);
  return hull_nd(points, simplex, t);
}

double hull_volume(std::span<const Vec> points, double tol) {
  if (points.empty()) return 0.0;
  const int d = static_cast<int>(points[0].size());
  if (static_cast<int>(points.size()) <= d) return 0.0;
  const double t = tol * coordinate_scale(points);
  const std::vector<int> simplex = independent_subset(points, t);
  if (static_cast<int>(simplex.size()) - 1 < d) return 0.0;
  if (d == 1) return hull_1d(points).volume;
  if (d == 2) return hull_2d(points, t).volume;
  return hull_nd(points, simplex, t).volume;
}

}  // namespace hobody
