#include "qehrhart/gk.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qehrhart/generators.hpp"
#include "qehrhart/harmonic.hpp"

namespace qehrhart::gk {

namespace {

Rational from_int(std::int64_t v) { return Rational(static_cast<long>(v)); }

// Primitive integer multiple with a positive leading coefficient.
MultiPoly normalized(const MultiPoly& f) {
  if (f.is_zero()) return f;
  Integer l = 1;
  for (const auto& [e, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Integer g = 0;
  for (const auto& [e, c] : f.terms()) {
    const Integer scaled = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational scale(l, g);
  scale.canonicalize();
  if (f.leading_term().second < 0) scale = -scale;
  return f * scale;
}

// Row-wise sums of coefficients along lines parallel to axis `var`; a
// polynomial is divisible by x_var - 1 iff every such sum is zero.
RationalMatrix fiber_sums(const LatticePointSet& support, std::size_t var) {
  std::map<IntVector, std::size_t> fibers;
  for (const auto& p : support.points) {
    IntVector key = p;
    key[var] = 0;
    fibers.try_emplace(key, fibers.size());
  }
  RationalMatrix sums(fibers.size(), support.size());
  for (std::size_t j = 0; j < support.size(); ++j) {
    IntVector key = support.points[j];
    key[var] = 0;
    sums(fibers.at(key), j) = 1;
  }
  return sums;
}

bool row_divisible(const RationalMatrix& sums, std::span<const Rational> row) {
  for (std::size_t f = 0; f < sums.rows(); ++f) {
    Rational s = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (sums(f, j) != 0) s += row[j];
    if (s != 0) return false;
  }
  return true;
}

void check_var(const Polytope& p, std::size_t var) {
  if (var >= p.dim()) throw std::invalid_argument("divisor variable index out of range");
}

}  // namespace

Polytope rational_triangle() {
  return Polytope::from_vertices(2, {{Rational(0), Rational(0)},
                                     {Rational(2, 15), Rational(16, 15)},
                                     {Rational(-6, 7), Rational(4, 7)}});
}

VanishingWitness max_vanishing_order(const Polytope& p, std::int64_t m, const ComputeBudget& budget) {
  if (m < 1) throw std::invalid_argument("max_vanishing_order: m must be at least 1");
  const FiltrationTable table = filtration_dims(p, m, true, budget);
  if (table.support.empty()) throw std::invalid_argument("max_vanishing_order: the dilation has no lattice points");
  const std::int64_t order = table.max_order();
  return {order, normalized(table.element(static_cast<std::size_t>(order), 0))};
}

std::size_t divisor_variable(const MultiPoly& divisor) {
  const auto bad = [] { return std::invalid_argument("unsupported divisor: expected c*(x_i - 1)"); };
  if (divisor.size() != 2) throw bad();
  const auto& [low_e, low_c] = *divisor.terms().begin();
  const auto& [high_e, high_c] = *divisor.terms().rbegin();
  if (total_degree(low_e) != 0 || std::any_of(low_e.begin(), low_e.end(), [](auto x) { return x != 0; })) throw bad();
  if (low_c != -high_c) throw bad();
  std::size_t var = divisor.dim();
  for (std::size_t i = 0; i < high_e.size(); ++i) {
    if (high_e[i] == 1 && var == divisor.dim()) {
      var = i;
    } else if (high_e[i] != 0) {
      throw bad();
    }
  }
  if (var == divisor.dim()) throw bad();
  return var;
}

std::size_t divisible_subspace_dim(const LatticePointSet& support, const RationalMatrix& basis, std::size_t var) {
  if (basis.rows() == 0) return 0;
  const RationalMatrix constraints = fiber_sums(support, var) * basis.transposed();
  return basis.rows() - rank(constraints);
}

bool divisibility_check(const Polytope& p, std::int64_t m, std::int64_t d, const MultiPoly& divisor,
                        const ComputeBudget& budget) {
  const std::size_t var = divisor_variable(divisor);
  check_var(p, var);
  if (m < 0 || d < 0) throw std::invalid_argument("divisibility_check: m and d must be nonnegative");
  const FiltrationTable table = filtration_dims(p, m, true, budget);
  if (d > table.max_order()) throw std::invalid_argument("divisibility_check: d exceeds the maximal vanishing order");
  const RationalMatrix& basis = table.bases[static_cast<std::size_t>(d)];
  for (std::size_t r = 0; r < basis.rows(); ++r)
    if (!divide_exact(table.element(static_cast<std::size_t>(d), r), divisor)) return false;
  return true;
}

std::optional<Property3Hit> property3_search(const Polytope& p, std::int64_t m, std::int64_t d, std::int64_t k_max,
                                             std::size_t var, const ComputeBudget& budget) {
  check_var(p, var);
  if (m < 1 || d < 0 || from_int(d) >= kStableLocusThreshold * from_int(m)) {
    throw std::invalid_argument("property3_search: requires m >= 1 and 0 <= d < (104/105) m");
  }
  if (k_max < 1) throw std::invalid_argument("property3_search: k_max must be at least 1");

  const MultiPoly divisor = MultiPoly::variable(p.dim(), var) - MultiPoly::constant(p.dim(), 1);
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const LatticePointSet z = lattice_points(dilate(p, from_int(k * m)), budget);
    if (z.empty()) continue;
    const RationalMatrix piece = filtration_piece(z, k * d, budget);
    if (piece.rows() == 0) continue;
    const RationalMatrix deeper = filtration_piece(z, k * d + 1, budget);
    if (deeper.rows() == piece.rows()) continue;  // nothing of exact order kd
    if (divisible_subspace_dim(z, piece, var) == piece.rows()) continue;

    // Neither proper subspace covers the piece, so one of b1, b2, b1 + b2 avoids both.
    const RationalMatrix sums = fiber_sums(z, var);
    const EchelonForm deeper_form = reduced_echelon(deeper);
    std::size_t b1 = 0;
    while (row_divisible(sums, piece.row(b1))) ++b1;
    std::size_t b2 = 0;
    while (in_row_space(piece.row(b2), deeper_form)) ++b2;

    RationalVector chosen = piece.row_vector(b1);
    if (in_row_space(chosen, deeper_form)) {
      chosen = piece.row_vector(b2);
      if (row_divisible(sums, chosen)) {
        for (std::size_t j = 0; j < chosen.size(); ++j) chosen[j] += piece(b1, j);
      }
    }
    const MultiPoly witness = normalized(laurent_from_coefficients(z, chosen));
    if (vanishing_order(witness) != k * d || divide_exact(witness, divisor)) {
      throw std::logic_error("property3_search: witness failed verification");
    }
    return Property3Hit{k, witness};
  }
  return std::nullopt;
}

std::vector<GrowthRow> generator_growth(const Polytope& p, std::int64_t m_max, std::size_t var,
                                        const ComputeBudget& budget) {
  if (m_max < 2) throw std::invalid_argument("generator_growth: m_max must be at least 2");
  check_var(p, var);
  const GeneratorReport report = minimal_generators(p, m_max, budget);
  // Polynomial (not Laurent) divisibility: every term carries u_var.
  const auto divisible_by_u = [var](const MultiPoly& f) {
    return std::all_of(f.terms().begin(), f.terms().end(), [var](const auto& t) { return t.first[var] >= 1; });
  };

  std::vector<GrowthRow> rows;
  std::optional<Rational> alpha;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    GrowthRow row{m, 0, std::nullopt};
    for (const auto& g : report.generators) {
      if (g.m != m) continue;
      ++row.new_generators;
      if (divisible_by_u(g.poly)) continue;
      const Rational ratio(from_int(g.d) / from_int(g.m));
      if (!alpha || ratio > *alpha) alpha = ratio;
    }
    row.alpha = alpha;
    rows.push_back(row);
  }
  return rows;
}

GKReport gk_report(const Polytope& p, const std::string& id, const GKOptions& options) {
  GKReport report;
  report.polytope_id = id;
  std::string stage = "vanishing";
  try {
    for (std::int64_t m = 1; m <= options.m_max; ++m) {
      VanishingWitness w = max_vanishing_order(p, m, options.budget);
      const auto verified = vanishing_order(w.witness).value_or(-1);
      report.vanishing.push_back({m, w.order, std::move(w.witness), verified});
    }

    stage = "divisibility";
    const MultiPoly divisor = MultiPoly::variable(p.dim(), options.var) - MultiPoly::constant(p.dim(), 1);
    for (const auto& v : report.vanishing) {
      const Rational bound = kStableLocusThreshold * from_int(v.m);
      for (std::int64_t d = ceil_of(bound).get_si(); d <= v.order; ++d)
        report.divisibility.push_back({v.m, d, divisibility_check(p, v.m, d, divisor, options.budget)});
    }

    stage = "property3";
    for (std::int64_t m = 1; m <= options.property3_m_max; ++m) {
      const std::int64_t d_end = ceil_of(kStableLocusThreshold * from_int(m)).get_si();
      for (std::int64_t d = 0; d < d_end; ++d)
        report.property3.push_back(
            {m, d, options.k_max, property3_search(p, m, d, options.k_max, options.var, options.budget)});
    }

    stage = "growth";
    if (options.growth_m_max >= 2) report.growth = generator_growth(p, options.growth_m_max, options.var, options.budget);
  } catch (const BudgetExceeded&) {
    report.complete = false;
    report.aborted_stage = stage;
  }
  return report;
}

}  // namespace qehrhart::gk
