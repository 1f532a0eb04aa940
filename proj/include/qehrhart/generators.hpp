#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qehrhart/budget.hpp"
#include "qehrhart/harmonic.hpp"
#include "qehrhart/poly.hpp"
#include "qehrhart/polytope.hpp"

namespace qehrhart {

struct GeneratorCount {
  std::int64_t m = 0;
  std::int64_t d = 0;
  std::size_t count = 0;

  bool operator==(const GeneratorCount&) const = default;
};

struct Generator {
  std::int64_t m = 0;
  std::int64_t d = 0;
  /// Homogeneous harmonic representative of degree d.
  MultiPoly poly;
};

struct GeneratorReport {
  /// Bidegrees with at least one new generator, m ascending then d ascending.
  std::vector<GeneratorCount> counts;
  std::vector<Generator> generators;
  /// Products of representatives that fell outside the harmonic space of
  /// their bidegree; zero whenever the harmonic spaces form an algebra.
  std::size_t closure_violations = 0;
};

/// The harmonic pieces (H_P)_{m,d} for m = 0..m_max. pieces[m][d] is a
/// reduced echelon basis over monomials_of_degree(n, d).
struct HarmonicAlgebra {
  std::size_t dim = 0;
  std::vector<std::vector<EchelonForm>> pieces;

  static HarmonicAlgebra from_bases(std::size_t dim, const std::vector<HarmonicBasis>& bases);
  /// Echelon form of piece (m, d); rank 0 outside the stored range.
  EchelonForm piece(std::int64_t m, std::int64_t d) const;
};

/// Degree-by-degree closure: bidegrees are visited with m ascending, then d
/// ascending. At (m, d) the span of generator * (already closed piece)
/// products is compared with (H_P)_{m,d}; the echelon completion of that span
/// supplies the new generators.
GeneratorReport minimal_generators(const Polytope& p, std::int64_t m_max, const ComputeBudget& budget = {});
GeneratorReport minimal_generators(const HarmonicAlgebra& algebra);

}  // namespace qehrhart
