#include "qehrhart/polytope.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qehrhart/exactlin.hpp"

namespace qehrhart {

namespace {

std::int64_t to_int64(const Integer& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
  return v.get_si();
}

// Scale a nonzero rational vector to the primitive integer vector on the same ray.
IntVector primitive(const RationalVector& v) {
  const Integer l = common_denominator(v);
  std::vector<Integer> scaled;
  scaled.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer s = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
    scaled.push_back(std::move(s));
  }
  if (g == 0) throw std::logic_error("primitive: zero vector");
  IntVector out;
  out.reserve(v.size());
  for (const auto& s : scaled) out.push_back(to_int64(s / g));
  return out;
}

Rational dot(const IntVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(static_cast<long>(a[i])) * b[i];
  return s;
}

RationalVector minus(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

Rational cross(const RationalVector& o, const RationalVector& a, const RationalVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Both orientations of normal . x = value.
void add_equality(std::vector<Facet>& facets, const IntVector& normal, const Rational& value) {
  facets.push_back({normal, value});
  facets.push_back({negated(normal), -value});
}

std::vector<Facet> point_facets(const RationalVector& v) {
  std::vector<Facet> facets;
  for (std::size_t i = 0; i < v.size(); ++i) {
    IntVector e(v.size(), 0);
    e[i] = 1;
    add_equality(facets, e, v[i]);
  }
  return facets;
}

// Segment [a, b] in the plane: two supporting half-planes for the line and
// two for the endpoints.
std::vector<Facet> planar_segment_facets(const RationalVector& a, const RationalVector& b) {
  const IntVector dir = primitive(minus(b, a));
  const IntVector normal{-dir[1], dir[0]};
  std::vector<Facet> facets;
  add_equality(facets, normal, dot(normal, a));
  facets.push_back({dir, dot(dir, b)});
  facets.push_back({negated(dir), -dot(dir, a)});
  return facets;
}

// Andrew's monotone chain over exact rationals; collinear points dropped.
std::vector<RationalVector> convex_hull_2d(std::vector<RationalVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<RationalVector> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Facet> polygon_facets(const std::vector<RationalVector>& vertices) {
  const auto hull = convex_hull_2d(vertices);
  if (hull.size() == 1) return point_facets(hull[0]);
  if (hull.size() == 2) return planar_segment_facets(hull[0], hull[1]);
  // Counterclockwise hull: the outward normal of edge a -> b is (dy, -dx).
  std::vector<Facet> facets;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    const IntVector normal = primitive({b[1] - a[1], a[0] - b[0]});
    facets.push_back({normal, dot(normal, a)});
  }
  return facets;
}

std::vector<Facet> interval_facets(const std::vector<RationalVector>& vertices) {
  Rational lo = vertices.front()[0];
  Rational hi = lo;
  for (const auto& v : vertices) {
    lo = std::min(lo, v[0]);
    hi = std::max(hi, v[0]);
  }
  return {{{1}, hi}, {{-1}, -lo}};
}

std::vector<Facet> simplex_facets(std::size_t dim, const std::vector<RationalVector>& vertices) {
  if (vertices.size() != dim + 1) {
    throw std::invalid_argument("unsupported shape: facets are derived only for simplices in dimension " +
                                std::to_string(dim) + " (got " + std::to_string(vertices.size()) + " vertices)");
  }
  RationalMatrix diffs(0, dim);
  for (std::size_t k = 1; k < vertices.size(); ++k) diffs.append_row(minus(vertices[k], vertices[0]));
  if (rank(diffs) != dim) throw std::invalid_argument("unsupported shape: simplex vertices are affinely dependent");

  std::vector<Facet> facets;
  for (std::size_t omit = 0; omit < vertices.size(); ++omit) {
    const std::size_t base = omit == 0 ? 1 : 0;
    RationalMatrix span(0, dim);
    for (std::size_t k = 0; k < vertices.size(); ++k)
      if (k != omit && k != base) span.append_row(minus(vertices[k], vertices[base]));
    const RationalMatrix normal_space = kernel_basis(span);
    IntVector normal = primitive(normal_space.row_vector(0));
    Rational offset = dot(normal, vertices[base]);
    if (dot(normal, vertices[omit]) > offset) {
      normal = negated(normal);
      offset = -offset;
    }
    facets.push_back({std::move(normal), std::move(offset)});
  }
  return facets;
}

Rational parse_coordinate(const nlohmann::json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(Integer(std::to_string(value.get<std::uint64_t>())));
    return Rational(Integer(std::to_string(value.get<std::int64_t>())));
  }
  throw ParseError("malformed rational: coordinates must be integers or \"p/q\" strings, got " + value.dump());
}

}  // namespace

Polytope Polytope::from_vertices(std::size_t dim, std::vector<RationalVector> vertices) {
  if (dim == 0) throw std::invalid_argument("polytope dimension must be positive");
  if (vertices.empty()) throw std::invalid_argument("polytope needs at least one vertex");
  for (const auto& v : vertices) {
    if (v.size() != dim) {
      throw std::invalid_argument("dimension mismatch: vertex with " + std::to_string(v.size()) +
                                  " coordinates in dimension " + std::to_string(dim));
    }
  }

  Polytope p;
  p.dim_ = dim;
  const bool single_point =
      std::all_of(vertices.begin(), vertices.end(), [&](const RationalVector& v) { return v == vertices.front(); });
  if (single_point) {
    p.facets_ = point_facets(vertices.front());
  } else if (dim == 1) {
    p.facets_ = interval_facets(vertices);
  } else if (dim == 2) {
    p.facets_ = polygon_facets(vertices);
  } else {
    p.facets_ = simplex_facets(dim, vertices);
  }
  p.vertices_ = std::move(vertices);
  return p;
}

bool Polytope::contains(const RationalVector& point) const {
  return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, point) <= f.offset; });
}

bool Polytope::contains(const IntVector& point) const {
  RationalVector q;
  q.reserve(point.size());
  for (auto x : point) q.emplace_back(static_cast<long>(x));
  return contains(q);
}

bool Polytope::is_lattice() const {
  return std::all_of(vertices_.begin(), vertices_.end(), [](const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integral(x); });
  });
}

Polytope parse_polytope(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("polytope file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("vertices")) {
    throw ParseError("polytope file must be an object with \"dim\" and \"vertices\"");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<std::int64_t>() < 1) {
    throw ParseError("\"dim\" must be a positive integer");
  }
  const auto dim = static_cast<std::size_t>(doc["dim"].get<std::int64_t>());
  const auto& verts = doc["vertices"];
  if (!verts.is_array()) throw ParseError("\"vertices\" must be an array");

  std::vector<RationalVector> vertices;
  for (const auto& v : verts) {
    if (!v.is_array()) throw ParseError("each vertex must be an array of coordinates");
    RationalVector coords;
    for (const auto& c : v) coords.push_back(parse_coordinate(c));
    vertices.push_back(std::move(coords));
  }
  try {
    return Polytope::from_vertices(dim, std::move(vertices));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Polytope load_polytope(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read polytope file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polytope(buf.str());
}

Polytope dilate(const Polytope& p, const Rational& factor) {
  if (factor < 0) throw std::invalid_argument("dilation factor must be nonnegative");
  Polytope out = p;
  for (auto& v : out.vertices_)
    for (auto& x : v) x *= factor;
  for (auto& f : out.facets_) f.offset *= factor;
  return out;
}

LatticePointSet LatticePointSet::from_points(std::size_t dim, std::vector<IntVector> points) {
  for (const auto& p : points)
    if (p.size() != dim) throw std::invalid_argument("LatticePointSet: point of wrong dimension");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return {dim, std::move(points)};
}

IntVector LatticePointSet::min_corner() const {
  IntVector lo(dim, 0);
  if (points.empty()) return lo;
  lo = points.front();
  for (const auto& p : points)
    for (std::size_t i = 0; i < dim; ++i) lo[i] = std::min(lo[i], p[i]);
  return lo;
}

LatticePointSet LatticePointSet::translated(const IntVector& by) const {
  LatticePointSet out = *this;
  for (auto& p : out.points)
    for (std::size_t i = 0; i < dim; ++i) p[i] += by[i];
  return out;
}

LatticePointSet lattice_points(const Polytope& p, const ComputeBudget& budget) {
  const std::size_t n = p.dim();
  IntVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices().front()[i];
    Rational mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = to_int64(ceil_of(mn));
    hi[i] = to_int64(floor_of(mx));
    if (lo[i] > hi[i]) return {n, {}};
  }

  const std::size_t cap = budget.max_matrix_entries != 0 ? budget.max_matrix_entries : 100'000'000;
  long double candidates = 1;
  for (std::size_t i = 0; i < n; ++i) candidates *= static_cast<long double>(hi[i] - lo[i] + 1);
  if (candidates > static_cast<long double>(cap)) {
    throw BudgetExceeded("lattice_points: bounding box has too many candidates for the cap of " + std::to_string(cap));
  }

  // Integer normals and integer points: normal . x <= offset iff <= floor(offset).
  struct IntFacet {
    IntVector normal;
    std::int64_t bound;
  };
  std::vector<IntFacet> facets;
  for (const auto& f : p.facets()) facets.push_back({f.normal, to_int64(floor_of(f.offset))});

  LatticePointSet out{n, {}};
  IntVector x = lo;
  while (true) {
    const bool inside = std::all_of(facets.begin(), facets.end(), [&](const IntFacet& f) {
      __int128 s = 0;
      for (std::size_t i = 0; i < n; ++i) s += static_cast<__int128>(f.normal[i]) * x[i];
      return s <= f.bound;
    });
    if (inside) out.points.push_back(x);
    // Odometer with the last coordinate fastest keeps the output lexicographic.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < hi[i]) {
        ++x[i];
        break;
      }
      x[i] = lo[i];
      if (i == 0) return out;
    }
  }
}

std::vector<std::size_t> ehrhart_series(const Polytope& p, std::int64_t m_max) {
  if (m_max < 0) throw std::invalid_argument("ehrhart_series: m_max must be nonnegative");
  std::vector<std::size_t> counts;
  for (std::int64_t m = 0; m <= m_max; ++m) counts.push_back(lattice_points(dilate(p, Rational(static_cast<long>(m)))).size());
  return counts;
}

}  // namespace qehrhart
