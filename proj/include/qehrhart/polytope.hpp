#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

#include "qehrhart/budget.hpp"
#include "qehrhart/rational.hpp"

namespace qehrhart {

/// Half-space normal . x <= offset with a primitive integer normal.
struct Facet {
  IntVector normal;
  Rational offset;

  bool operator==(const Facet&) const = default;
};

/// Convex polytope given by rational vertices, with a derived H-representation.
///
/// Facets are derived for polygons (any dimension-2 input, via an exact convex
/// hull), for simplices (n+1 affinely independent vertices in dimension n), for
/// every input in dimension 1, and for single points. Anything else is rejected.
class Polytope {
 public:
  static Polytope from_vertices(std::size_t dim, std::vector<RationalVector> vertices);

  std::size_t dim() const { return dim_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool contains(const IntVector& point) const;
  bool contains(const RationalVector& point) const;
  /// True when every vertex is integral.
  bool is_lattice() const;

 private:
  friend Polytope dilate(const Polytope& p, const Rational& factor);

  std::size_t dim_ = 0;
  std::vector<RationalVector> vertices_;
  std::vector<Facet> facets_;
};

/// Parses { "dim": n, "vertices": [[...], ...] } where each coordinate is an
/// integer or a string "p/q". Throws ParseError on malformed input.
Polytope parse_polytope(std::string_view document);
Polytope load_polytope(const std::filesystem::path& path);

/// factor * P. Throws std::invalid_argument for a negative factor.
Polytope dilate(const Polytope& p, const Rational& factor);

/// Finite set of integer points, deduplicated and sorted lexicographically.
struct LatticePointSet {
  std::size_t dim = 0;
  std::vector<IntVector> points;

  static LatticePointSet from_points(std::size_t dim, std::vector<IntVector> points);

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  /// Componentwise minimum; all zeros for an empty set.
  IntVector min_corner() const;
  LatticePointSet translated(const IntVector& by) const;

  bool operator==(const LatticePointSet&) const = default;
};

/// Integer points of P by an exact scan of the vertices' integer bounding box.
/// The budget caps the number of scanned candidates (max_matrix_entries is
/// reused as the cap when set; otherwise 10^8).
LatticePointSet lattice_points(const Polytope& p, const ComputeBudget& budget = {});

/// Entry m is |mP cap Z^n| for 0 <= m <= m_max.
std::vector<std::size_t> ehrhart_series(const Polytope& p, std::int64_t m_max);

}  // namespace qehrhart
