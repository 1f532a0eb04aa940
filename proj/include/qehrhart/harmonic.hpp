#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qehrhart/budget.hpp"
#include "qehrhart/exactlin.hpp"
#include "qehrhart/poly.hpp"
#include "qehrhart/polytope.hpp"

namespace qehrhart {

enum class Method { filtration, harmonic, dual };

std::string_view to_string(Method method);
/// Accepts "filtration", "harmonic" or "dual"; throws std::invalid_argument otherwise.
Method parse_method(std::string_view name);

/// Vanishing-order filtration of (A_P)_m: F_{m,0} ⊇ F_{m,1} ⊇ ... ⊇ 0.
struct FiltrationTable {
  std::int64_t m = 0;
  /// Monomial support of (A_P)_m in original (possibly negative) coordinates.
  LatticePointSet support;
  /// dims[d] = dim F_{m,d}; weakly decreasing, last entry 0.
  std::vector<std::size_t> dims;
  /// When requested: bases[d] is a reduced echelon basis of F_{m,d}, one
  /// coefficient vector over support.points per row.
  std::vector<RationalMatrix> bases;

  /// Largest d with F_{m,d} != 0, or -1 for an empty support.
  std::int64_t max_order() const { return static_cast<std::int64_t>(dims.size()) - 2; }
  /// Row `row` of bases[d] as the Laurent polynomial sum_j c_j x^{z_j}.
  MultiPoly element(std::size_t d, std::size_t row) const;
};

/// The Laurent polynomial sum_j coefficients[j] x^{support[j]}.
MultiPoly laurent_from_coefficients(const LatticePointSet& support, std::span<const Rational> coefficients);

/// Reduced echelon basis of F_d = { c : sum_j c_j x^{z_j} vanishes to order >= d at e },
/// as the kernel of the coefficient matrix of the shifted expansions in degrees < d.
RationalMatrix filtration_piece(const LatticePointSet& support, std::int64_t d, const ComputeBudget& budget = {});

FiltrationTable filtration_table(const LatticePointSet& support, bool with_bases, const ComputeBudget& budget = {});
FiltrationTable filtration_dims(const Polytope& p, std::int64_t m, bool with_bases, const ComputeBudget& budget = {});

/// Graded basis of a harmonic space; graded_parts[d] holds homogeneous
/// polynomials of degree d in reduced echelon form.
struct HarmonicBasis {
  std::vector<std::vector<MultiPoly>> graded_parts;

  std::vector<std::size_t> dims() const;
  std::size_t total_dim() const;
};

/// V_Z as the lowest parts of the span of (1 + x)^a, a in Z: the truncated
/// expansions are echelonized with columns in ascending graded lex order and
/// the lowest part of each echelon row is harvested. Throws on empty Z.
HarmonicBasis harmonic_basis(const LatticePointSet& z, const ComputeBudget& budget = {});

/// Hilbert function of C[x]/gr I(Z): entry d is rank(M_<=d) - rank(M_<=d-1)
/// for the evaluation matrices of all monomials of degree <= d on Z. Stops once
/// the ranks reach |Z|. An empty Z gives {0}.
std::vector<std::size_t> gr_hilbert(const LatticePointSet& z, const ComputeBudget& budget = {});

/// Basis of (gr I(Z))_d, the degree-d leading forms of polynomials of degree
/// <= d vanishing on Z, in reduced echelon form over degree-d monomials.
std::vector<MultiPoly> gr_ideal_basis(const LatticePointSet& z, std::int64_t d, const ComputeBudget& budget = {});

/// V_Z as the common kernel, degree by degree, of g -> f(d/dx) g over the
/// leading forms f in gr I(Z) of every degree <= d. Throws on empty Z.
HarmonicBasis harmonic_dual(const LatticePointSet& z, const ComputeBudget& budget = {});

/// Coefficients of t^m q^d in the q-Ehrhart series: rows[m][d] = dim (H_P)_{m,d}.
struct BigradedTable {
  std::vector<std::vector<std::size_t>> rows;

  std::vector<std::size_t> row_sums() const;
  bool operator==(const BigradedTable&) const = default;
};

/// Rows for m = 0..m_max by the selected pipeline. Empty dilations give {0}.
/// With threads > 1 the dilations are computed on a small worker pool; rows
/// are assembled by m regardless of completion order.
BigradedTable q_ehrhart(const Polytope& p, std::int64_t m_max, Method method, const ComputeBudget& budget = {},
                        unsigned threads = 1);

/// Single comparison: lowest parts of sum c_a e^{a.x} and sum c_a (1+x)^a.
/// nullopt when every coefficient is zero (the trial is skipped).
std::optional<bool> lemma32_compare(const LatticePointSet& z, const std::vector<Rational>& coefficients);

struct Lemma32Report {
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> failures;
};

/// Seeded random trials with integer coefficients drawn from [-5, 5]; all-zero
/// draws are redrawn.
Lemma32Report lemma32_check(const LatticePointSet& z, std::size_t trials, std::uint64_t seed);

struct MultiplicativityReport {
  std::size_t samples = 0;
  std::size_t filtration_violations = 0;
  std::size_t lowest_part_violations = 0;
  std::vector<std::string> failures;

  std::size_t violations() const { return filtration_violations + lowest_part_violations; }
};

/// Samples f in F_{m1,d1}, g in F_{m2,d2} with m1 + m2 <= m_max and checks that
/// f g lies in F_{m1+m2,d1+d2}, that the lowest part of f g is the product of
/// the lowest parts, and that this product lies in (H_P)_{m1+m2, ord f + ord g}.
MultiplicativityReport multiplicativity_check(const Polytope& p, std::int64_t m_max, std::size_t samples,
                                              std::uint64_t seed, const ComputeBudget& budget = {});

/// Coefficient vector of a homogeneous polynomial over monomials_of_degree(n, d).
RationalVector homogeneous_coordinates(const MultiPoly& f, std::int64_t d);
/// Inverse of homogeneous_coordinates.
MultiPoly from_homogeneous_coordinates(std::size_t n, std::int64_t d, std::span<const Rational> coords);

}  // namespace qehrhart
