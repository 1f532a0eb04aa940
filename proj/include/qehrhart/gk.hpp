#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qehrhart/budget.hpp"
#include "qehrhart/exactlin.hpp"
#include "qehrhart/poly.hpp"
#include "qehrhart/polytope.hpp"

namespace qehrhart::gk {

/// Slope of the nef divisor D = H - (104/105) E on the blowup of P(15, 26, 7):
/// sections of mH vanishing to order >= (104/105) m at e are divisible by y - 1.
inline const Rational kStableLocusThreshold{104, 105};

/// Vertices of the rational triangle whose dilation by 105/2 is the integral
/// triangle (0,0), (7,56), (-45,30). Two lattice points: (0,0) and (0,1).
Polytope rational_triangle();

struct VanishingWitness {
  std::int64_t order = 0;
  /// Laurent polynomial supported on mP with exactly this vanishing order at e,
  /// scaled to primitive integer coefficients with a positive leading term.
  MultiPoly witness;
};

/// Largest d with F_{m,d} != 0 and one basis element of that piece.
/// Throws std::invalid_argument when mP has no lattice points or m < 1.
VanishingWitness max_vanishing_order(const Polytope& p, std::int64_t m, const ComputeBudget& budget = {});

/// Index i when the divisor is c (x_i - 1) for a nonzero rational c.
/// Throws std::invalid_argument for any other shape.
std::size_t divisor_variable(const MultiPoly& divisor);

/// Dimension of the subspace of rowspace(basis) (coefficient vectors over
/// support) whose polynomials are divisible by x_var - 1. Divisibility is the
/// linear condition that coefficients sum to zero along every line parallel
/// to the var-th axis.
std::size_t divisible_subspace_dim(const LatticePointSet& support, const RationalMatrix& basis, std::size_t var);

/// True iff every basis element of F_{m,d} is divisible by the divisor.
/// Requires 0 <= d <= max vanishing order of mP.
bool divisibility_check(const Polytope& p, std::int64_t m, std::int64_t d, const MultiPoly& divisor,
                        const ComputeBudget& budget = {});

struct Property3Hit {
  std::int64_t k = 0;
  MultiPoly witness;
};

/// Smallest k <= k_max such that some Laurent polynomial on kmP has vanishing
/// order exactly kd and is not divisible by x_var - 1. Requires m >= 1,
/// 0 <= d and d/m < 104/105. nullopt means the budget was exhausted
/// (inconclusive), never that no such k exists.
std::optional<Property3Hit> property3_search(const Polytope& p, std::int64_t m, std::int64_t d, std::int64_t k_max,
                                             std::size_t var = 1, const ComputeBudget& budget = {});

struct GrowthRow {
  std::int64_t m = 0;
  std::size_t new_generators = 0;
  /// Largest d/m' over generators with m' <= m whose representative is not
  /// divisible by u_var (the lowest part of x_var - 1); absent if none yet.
  std::optional<Rational> alpha;
};

std::vector<GrowthRow> generator_growth(const Polytope& p, std::int64_t m_max, std::size_t var = 1,
                                        const ComputeBudget& budget = {});

struct VanishingRecord {
  std::int64_t m = 0;
  std::int64_t order = 0;
  MultiPoly witness;
  std::int64_t verified_order = 0;
};

struct DivisibilityRecord {
  std::int64_t m = 0;
  std::int64_t d = 0;
  bool divisible = false;
};

struct Property3Record {
  std::int64_t m = 0;
  std::int64_t d = 0;
  std::int64_t k_max = 0;
  std::optional<Property3Hit> hit;  // nullopt: inconclusive
};

struct GKReport {
  std::string polytope_id;
  std::vector<VanishingRecord> vanishing;
  std::vector<DivisibilityRecord> divisibility;
  std::vector<Property3Record> property3;
  std::vector<GrowthRow> growth;
  bool complete = true;
  /// Stage that hit the compute budget, when incomplete.
  std::string aborted_stage;
};

struct GKOptions {
  std::int64_t m_max = 5;            // vanishing and divisibility diagnostics
  std::int64_t property3_m_max = 2;  // property-3 searches run for m <= this
  std::int64_t k_max = 4;
  std::int64_t growth_m_max = 4;
  std::size_t var = 1;
  ComputeBudget budget;
};

/// Runs every diagnostic; a BudgetExceeded stops the run and returns the
/// partial report with `complete` cleared.
GKReport gk_report(const Polytope& p, const std::string& id, const GKOptions& options);

}  // namespace qehrhart::gk
