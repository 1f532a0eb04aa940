#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "qehrhart/polytope.hpp"

using namespace qehrhart;

namespace {

bool satisfies_all(const Polytope& p, const RationalVector& x) {
  for (const auto& f : p.facets()) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += Rational(static_cast<long>(f.normal[i])) * x[i];
    if (s > f.offset) return false;
  }
  return true;
}

bool tight_somewhere(const Polytope& p, const RationalVector& x) {
  for (const auto& f : p.facets()) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += Rational(static_cast<long>(f.normal[i])) * x[i];
    if (s == f.offset) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parse the triangle, a point and the rational triangle") {
  const auto t = parse_polytope(R"({"dim": 2, "vertices": [[0,0],[2,1],[1,2]]})");
  CHECK(t.dim() == 2);
  CHECK(t.facets().size() == 3);
  CHECK(t.is_lattice());

  const auto pt = parse_polytope(R"({"dim": 1, "vertices": [[0]]})");
  CHECK(pt.dim() == 1);
  CHECK(lattice_points(pt).size() == 1);

  const auto gk = parse_polytope(R"({"dim": 2, "vertices": [["0","0"],["2/15","16/15"],["-6/7","4/7"]]})");
  CHECK(gk.facets().size() == 3);
  CHECK_FALSE(gk.is_lattice());
  CHECK(gk.vertices()[1][1] == Rational(16, 15));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_polytope(R"({"dim": 2, "vertices": [["1/0", "0"]]})"), ParseError);
  CHECK_THROWS_AS(parse_polytope(R"({"dim": 2, "vertices": [["a", "0"]]})"), ParseError);
  CHECK_THROWS_AS(parse_polytope(R"({"dim": 2, "vertices": [[0.5, 0]]})"), ParseError);
  CHECK_THROWS_AS(parse_polytope(R"({"dim": 2, "vertices": [[0, 0, 0]]})"), ParseError);
  CHECK_THROWS_AS(parse_polytope(R"({"dim": 2, "vertices": []})"), ParseError);
  CHECK_THROWS_AS(parse_polytope(R"({"dim": 2})"), ParseError);
  CHECK_THROWS_AS(parse_polytope("not json"), ParseError);
  // Cube in dimension 3 is not a simplex.
  CHECK_THROWS_AS(parse_polytope(R"({"dim": 3, "vertices": [[0,0,0],[1,0,0],[0,1,0],[0,0,1],[1,1,1]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_polytope(R"({"dim": 3, "vertices": [[0,0,0],[1,0,0],[2,0,0],[0,0,1]]})"), ParseError);
  CHECK_THROWS_AS(load_polytope("/nonexistent/file.json"), ParseError);
}

TEST_CASE("data files load") {
  for (const char* name : {"triangle", "gk_rational_triangle", "gk_integral_triangle", "segment", "point",
                           "unit_square", "unit_tetrahedron"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_polytope(std::string(QEHRHART_DATA_DIR) + "/" + name + ".json"));
  }
}

TEST_CASE("dilation") {
  const auto t = corpus::triangle();
  const auto same = dilate(t, 1);
  CHECK(same.vertices() == t.vertices());
  CHECK(same.facets() == t.facets());

  const auto seg5 = dilate(corpus::segment(), 5);
  CHECK(seg5.vertices() == std::vector<RationalVector>{{0}, {5}});

  const auto gk = dilate(corpus::gk_triangle(), 105);
  const std::vector<RationalVector> expected{{0, 0}, {14, 112}, {-90, 60}};
  CHECK(gk.vertices() == expected);
  CHECK(gk.is_lattice());

  const auto t2 = dilate(t, 2);
  for (std::size_t k = 0; k < t.facets().size(); ++k) {
    CHECK(t2.facets()[k].normal == t.facets()[k].normal);
    CHECK(t2.facets()[k].offset == 2 * t.facets()[k].offset);
  }
  CHECK(lattice_points(dilate(t, 0)).size() == 1);
  CHECK_THROWS_AS(dilate(t, -1), std::invalid_argument);
}

TEST_CASE("facets hold at every vertex with at least one equality") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    for (const auto& v : e.polytope.vertices()) {
      CHECK(satisfies_all(e.polytope, v));
      CHECK(tight_somewhere(e.polytope, v));
    }
    for (const auto& f : e.polytope.facets()) {
      std::int64_t g = 0;
      for (auto c : f.normal) g = std::gcd(g, std::abs(c));
      CHECK(g == 1);
    }
  }
}

TEST_CASE("lattice points of the triangle and its double") {
  const auto z = lattice_points(corpus::triangle());
  CHECK(z.points == std::vector<IntVector>{{0, 0}, {1, 1}, {1, 2}, {2, 1}});
  CHECK(lattice_points(dilate(corpus::triangle(), 2)).size() == 10);
  CHECK(oracle::pick_count({{0, 0}, {4, 2}, {2, 4}}) == 10);

  const auto s3 = lattice_points(Polytope::from_vertices(1, {{0}, {3}}));
  CHECK(s3.points == std::vector<IntVector>{{0}, {1}, {2}, {3}});

  const auto gk = lattice_points(corpus::gk_triangle());
  CHECK(gk.points == std::vector<IntVector>{{0, 0}, {0, 1}});
}

TEST_CASE("rational polytopes may have empty dilations") {
  const auto tiny = Polytope::from_vertices(1, {{Rational(1, 3)}, {Rational(2, 3)}});
  CHECK(lattice_points(tiny).empty());
  CHECK(lattice_points(dilate(tiny, 3)).size() == 2);
}

TEST_CASE("Ehrhart series") {
  CHECK(ehrhart_series(corpus::triangle(), 2) == std::vector<std::size_t>{1, 4, 10});
  CHECK(ehrhart_series(corpus::point(), 5) == std::vector<std::size_t>(6, 1));
  CHECK(ehrhart_series(corpus::segment(), 4) == std::vector<std::size_t>{1, 2, 3, 4, 5});
  // Unit tetrahedron: binom(m+3, 3).
  const auto tet = load_polytope(std::string(QEHRHART_DATA_DIR) + "/unit_tetrahedron.json");
  CHECK(ehrhart_series(tet, 4) == std::vector<std::size_t>{1, 4, 10, 20, 35});
  CHECK_THROWS_AS(ehrhart_series(corpus::segment(), -1), std::invalid_argument);
}

TEST_CASE("counts agree with Pick and with a vertex-based scan") {
  const std::vector<std::vector<std::vector<std::int64_t>>> polygons{
      {{0, 0}, {2, 1}, {1, 2}},
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}},
      {{0, 0}, {7, 56}, {-45, 30}},
      {{0, 0}, {3, 0}, {4, 2}, {1, 3}, {-1, 1}},
  };
  for (const auto& poly : polygons) {
    std::vector<RationalVector> verts;
    for (const auto& v : poly) verts.push_back({Rational(static_cast<long>(v[0])), Rational(static_cast<long>(v[1]))});
    const auto p = Polytope::from_vertices(2, verts);
    for (long m = 0; m <= 3; ++m) {
      std::vector<std::vector<std::int64_t>> scaled;
      for (const auto& v : poly) scaled.push_back({v[0] * m, v[1] * m});
      const auto n = lattice_points(dilate(p, m)).size();
      CHECK(n == oracle::scan_count(verts, 2, m));
      if (m > 0) CHECK(Rational(static_cast<long>(n)) == oracle::pick_count(scaled));
    }
  }
  const auto gk = corpus::gk_triangle();
  for (long m = 0; m <= 6; ++m) CHECK(lattice_points(dilate(gk, m)).size() == oracle::scan_count(gk.vertices(), 2, m));
}

TEST_CASE("hull input order and interior points do not matter") {
  const auto a = Polytope::from_vertices(2, {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 0}});
  const auto b = Polytope::from_vertices(2, {{2, 2}, {0, 0}, {0, 2}, {2, 0}});
  CHECK(a.facets().size() == 4);
  CHECK(lattice_points(a) == lattice_points(b));
}

TEST_CASE("scaled vertices are lattice points and counts grow") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    std::size_t prev = 0;
    for (long m = 0; m <= 5; ++m) {
      const auto z = lattice_points(dilate(e.polytope, m));
      for (const auto& v : e.polytope.vertices()) {
        bool integral = true;
        IntVector iv;
        for (const auto& c : v) {
          const Rational s = c * m;
          integral = integral && is_integral(s);
          if (integral) iv.push_back(s.get_num().get_si());
        }
        if (integral) CHECK(std::binary_search(z.points.begin(), z.points.end(), iv));
      }
      CHECK(z.size() >= prev);  // every corpus polytope contains the origin
      prev = z.size();
      CHECK(std::is_sorted(z.points.begin(), z.points.end()));
      CHECK(std::adjacent_find(z.points.begin(), z.points.end()) == z.points.end());
    }
  }
}

TEST_CASE("lattice point sets") {
  const auto z = LatticePointSet::from_points(2, {{1, 2}, {0, 0}, {1, 2}, {-1, 5}});
  CHECK(z.points == std::vector<IntVector>{{-1, 5}, {0, 0}, {1, 2}});
  CHECK(z.min_corner() == IntVector{-1, 0});
  CHECK(z.translated({1, 0}).points.front() == IntVector{0, 5});
  CHECK_THROWS_AS(LatticePointSet::from_points(2, {{1}}), std::invalid_argument);
}

TEST_CASE("candidate cap aborts the scan") {
  ComputeBudget budget{10};
  CHECK_THROWS_AS(lattice_points(dilate(corpus::unit_square(), 10), budget), BudgetExceeded);
}
