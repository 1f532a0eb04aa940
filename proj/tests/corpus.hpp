#pragma once

#include <string>
#include <vector>

#include "qehrhart/polytope.hpp"

namespace qehrhart::corpus {

inline RationalVector rv(std::initializer_list<const char*> coords) {
  RationalVector v;
  for (const char* c : coords) v.push_back(parse_rational(c));
  return v;
}

inline Polytope point() { return Polytope::from_vertices(1, {rv({"0"})}); }
inline Polytope segment() { return Polytope::from_vertices(1, {rv({"0"}), rv({"1"})}); }
inline Polytope triangle() { return Polytope::from_vertices(2, {rv({"0", "0"}), rv({"2", "1"}), rv({"1", "2"})}); }
inline Polytope unit_square() {
  return Polytope::from_vertices(2, {rv({"0", "0"}), rv({"1", "0"}), rv({"1", "1"}), rv({"0", "1"})});
}
inline Polytope gk_triangle() {
  return Polytope::from_vertices(2, {rv({"0", "0"}), rv({"2/15", "16/15"}), rv({"-6/7", "4/7"})});
}

struct Entry {
  std::string name;
  Polytope polytope;
  std::int64_t m_max;  // range of the cross-pipeline checks
};

inline std::vector<Entry> all() {
  return {{"point", point(), 8},
          {"segment", segment(), 8},
          {"triangle", triangle(), 4},
          {"unit square", unit_square(), 4},
          {"GK triangle", gk_triangle(), 4}};
}

}  // namespace qehrhart::corpus
