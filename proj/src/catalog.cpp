#include "hobody/catalog.hpp"

#include "hobody/rng.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hobody {

Polytope simplex(int n) {
  std::vector<Vec> pts{Vec::Zero(n)};
  for (int i = 0; i < n; ++i) pts.push_back(unit_vector(n, i));
  return Polytope::from_points(pts);
}

Polytope cube(int n) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1;
    pts.push_back(v);
  }
  return Polytope::from_points(pts);
}

Polytope cross_polytope(int n) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back(unit_vector(n, i));
    pts.push_back(-unit_vector(n, i));
  }
  return Polytope::from_points(pts);
}

Polytope regular_polygon(int k, double radius) {
  if (k < 3) throw InvalidArgument("polygon needs at least three vertices");
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) {
    const double a = 2.0 * std::numbers::pi * i / k;
    pts.push_back(make_vec({radius * std::cos(a), radius * std::sin(a)}));
  }
  return Polytope::from_points(pts);
}

Polytope random_polytope(int n, std::uint64_t seed) {
  const int count = 2 * n + 6;
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) pts.push_back(sphere_point(n, derive_seed(seed, 0x504F4C59), i));
  return Polytope::from_points(pts);
}

Polytope rounded_triangle(double radius, int arc_points) {
  std::vector<Vec> pts;
  const Vec corners[3] = {make_vec({0.0, 0.0}), make_vec({1.0, 0.0}), make_vec({0.0, 1.0})};
  const int total = 3 * arc_points;
  for (const Vec& c : corners) {
    for (int i = 0; i < total; ++i) {
      const double a = 2.0 * std::numbers::pi * (i + 0.5) / total;
      pts.push_back(c + radius * make_vec({std::cos(a), std::sin(a)}));
    }
  }
  return Polytope::from_points(pts);
}

Ellipsoid standard_ellipsoid(int n) {
  Mat d = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = 1.0 / (i + 1);
  // Rotation by a fixed angle in each coordinate plane (i, i+1).
  Mat r = Mat::Identity(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    Mat g = Mat::Identity(n, n);
    const double a = 0.3 + 0.2 * i;
    g(i, i) = std::cos(a);
    g(i, i + 1) = -std::sin(a);
    g(i + 1, i) = std::sin(a);
    g(i + 1, i + 1) = std::cos(a);
    r = g * r;
  }
  Vec c = Vec::Zero(n);
  c(0) = 0.1;
  return Ellipsoid(c, r * d);
}

std::vector<CatalogBody> builtin_catalog(int n) {
  if (n < 1 || n > 4) throw InvalidArgument("built-in catalog covers dimensions 1..4");
  std::vector<CatalogBody> out;
  out.push_back({"simplex", simplex(n)});
  out.push_back({"cube", cube(n)});
  if (n >= 2) out.push_back({"cross-polytope", cross_polytope(n)});
  out.push_back({"ball", Ellipsoid::ball(n)});
  if (n >= 2) out.push_back({"ellipsoid", standard_ellipsoid(n)});
  if (n >= 2) {
    for (int s = 1; s <= 10; ++s)
      out.push_back({"random-" + std::to_string(s), random_polytope(n, static_cast<std::uint64_t>(s))});
  }
  if (n == 2) {
    out.push_back({"64-gon", regular_polygon(64)});
    out.push_back({"rounded-simplex", rounded_triangle()});
  }
  return out;
}

bool is_simplex_name(const std::string& name) { return name == "simplex"; }

// ---------------------------------------------------------------------------
// JSON catalog

namespace {

using json = nlohmann::json;

std::size_t line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + end, '\n'));
}

/// Line numbers of the '{' opening each entry at the given nesting depth.
std::vector<std::size_t> entry_lines(const std::string& text, int depth) {
  std::vector<std::size_t> lines;
  int level = 0;
  bool in_string = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') ++line;
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{' || c == '[') {
      if (c == '{' && level == depth) lines.push_back(line);
      ++level;
    } else if (c == '}' || c == ']') {
      --level;
    }
  }
  return lines;
}

Vec to_vec(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw InvalidArgument(std::string(what) + " must be an array of " + std::to_string(n) + " numbers");
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = j[i].get<double>();
  return v;
}

CatalogBody parse_entry(const json& e, std::size_t index) {
  if (!e.is_object()) throw InvalidArgument("entry is not an object");
  const std::string type = e.at("type").get<std::string>();
  const int n = e.at("dim").get<int>();
  if (n < 1 || n > 4) throw InvalidArgument("dim must be in 1..4");
  std::string name = e.value("name", type + "-" + std::to_string(index));
  Vec center = e.contains("center") ? to_vec(e["center"], n, "center") : Vec(Vec::Zero(n));

  if (type == "simplex") return {name, simplex(n).translated(center)};
  if (type == "cube") return {name, cube(n).translated(center)};
  if (type == "ball") return {name, Ellipsoid::ball(n, e.value("radius", 1.0), center)};
  if (type == "polytope") {
    std::vector<Vec> pts;
    for (const json& v : e.at("vertices")) pts.push_back(to_vec(v, n, "vertex"));
    return {name, Polytope::from_points(pts).translated(center)};
  }
  if (type == "ellipsoid") {
    const json& f = e.at("factor");
    if (!f.is_array() || static_cast<int>(f.size()) != n)
      throw InvalidArgument("factor must be an n x n array of rows");
    Mat t(n, n);
    for (int r = 0; r < n; ++r) t.row(r) = to_vec(f[r], n, "factor row").transpose();
    return {name, Ellipsoid(center, t)};
  }
  throw InvalidArgument("unknown body type '" + type + "'");
}

}  // namespace

std::vector<CatalogBody> parse_catalog(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw CatalogError("catalog line " + std::to_string(line) + ": " + e.what(), line);
  }
  const json* entries = &doc;
  int depth = 1;
  if (doc.is_object()) {
    if (!doc.contains("bodies")) throw CatalogError("catalog object has no \"bodies\" array", 1);
    entries = &doc["bodies"];
    depth = 2;
  }
  if (!entries->is_array()) throw CatalogError("catalog bodies must form an array", 1);
  const std::vector<std::size_t> lines = entry_lines(text, depth);

  std::vector<CatalogBody> out;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const std::size_t line = i < lines.size() ? lines[i] : 0;
    try {
      out.push_back(parse_entry((*entries)[i], i));
    } catch (const CatalogError&) {
      throw;
    } catch (const std::exception& e) {
      throw CatalogError("catalog line " + std::to_string(line) + " (entry " + std::to_string(i) +
                             "): " + e.what(),
                         line);
    }
  }
  return out;
}

std::vector<CatalogBody> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

}  // namespace hobody
