#include "qehrhart/generators.hpp"

#include <stdexcept>

namespace qehrhart {

HarmonicAlgebra HarmonicAlgebra::from_bases(std::size_t dim, const std::vector<HarmonicBasis>& bases) {
  HarmonicAlgebra algebra;
  algebra.dim = dim;
  for (const auto& basis : bases) {
    std::vector<EchelonForm> graded;
    for (std::size_t d = 0; d < basis.graded_parts.size(); ++d) {
      const auto width = monomials_of_degree(dim, static_cast<std::int64_t>(d)).size();
      RationalMatrix rows(0, width);
      for (const auto& f : basis.graded_parts[d]) rows.append_row(homogeneous_coordinates(f, static_cast<std::int64_t>(d)));
      graded.push_back(reduced_echelon(rows));
    }
    algebra.pieces.push_back(std::move(graded));
  }
  return algebra;
}

EchelonForm HarmonicAlgebra::piece(std::int64_t m, std::int64_t d) const {
  if (m < 0 || d < 0 || static_cast<std::size_t>(m) >= pieces.size() ||
      static_cast<std::size_t>(d) >= pieces[static_cast<std::size_t>(m)].size()) {
    EchelonForm empty;
    empty.basis = RationalMatrix(0, d < 0 ? 0 : monomials_of_degree(dim, d).size());
    return empty;
  }
  return pieces[static_cast<std::size_t>(m)][static_cast<std::size_t>(d)];
}

GeneratorReport minimal_generators(const HarmonicAlgebra& algebra) {
  GeneratorReport report;
  const auto m_count = static_cast<std::int64_t>(algebra.pieces.size());
  for (std::int64_t m = 1; m < m_count; ++m) {
    const auto degrees = static_cast<std::int64_t>(algebra.pieces[static_cast<std::size_t>(m)].size());
    for (std::int64_t d = 0; d < degrees; ++d) {
      const EchelonForm target = algebra.piece(m, d);
      if (target.rank == 0) continue;

      // Every piece of smaller m is already closed, so it equals (H_P)_{m',d'}
      // and products generator * piece cover the whole subalgebra here.
      RationalMatrix products(0, target.basis.cols());
      for (const auto& g : report.generators) {
        if (g.m >= m || g.d > d) continue;
        const EchelonForm rest = algebra.piece(m - g.m, d - g.d);
        for (std::size_t i = 0; i < rest.rank; ++i) {
          const MultiPoly h = from_homogeneous_coordinates(algebra.dim, d - g.d, rest.basis.row(i));
          const RationalVector coords = homogeneous_coordinates(g.poly * h, d);
          if (!in_row_space(coords, target)) ++report.closure_violations;
          products.append_row(coords);
        }
      }
      EchelonForm span = reduced_echelon(products);
      if (span.rank >= target.rank) continue;

      std::size_t added = 0;
      for (std::size_t i = 0; i < target.rank && span.rank < target.rank; ++i) {
        const auto candidate = target.basis.row(i);
        if (in_row_space(candidate, span)) continue;
        report.generators.push_back({m, d, from_homogeneous_coordinates(algebra.dim, d, candidate)});
        ++added;
        RationalMatrix grown = span.basis;
        grown.append_row(candidate);
        span = reduced_echelon(grown);
      }
      report.counts.push_back({m, d, added});
    }
  }
  return report;
}

GeneratorReport minimal_generators(const Polytope& p, std::int64_t m_max, const ComputeBudget& budget) {
  if (m_max < 1) throw std::invalid_argument("minimal_generators: m_max must be at least 1");
  std::vector<HarmonicBasis> bases;
  for (std::int64_t m = 0; m <= m_max; ++m) {
    const LatticePointSet z = lattice_points(dilate(p, Rational(static_cast<long>(m))), budget);
    bases.push_back(z.empty() ? HarmonicBasis{} : harmonic_basis(z, budget));
  }
  return minimal_generators(HarmonicAlgebra::from_bases(p.dim(), bases));
}

}  // namespace qehrhart
