#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qehrhart/rational.hpp"

namespace qehrhart {

std::int64_t total_degree(const IntVector& exponent);

/// Graded lexicographic order with x1 > x2 > ... > xn. Ascending iteration
/// visits lower total degree first; the leading term is the largest.
struct GradedLexLess {
  bool operator()(const IntVector& a, const IntVector& b) const;
};

/// All exponents in n variables of total degree exactly d, ascending graded lex.
std::vector<IntVector> monomials_of_degree(std::size_t n, std::int64_t d);
/// All exponents of total degree <= d, ascending graded lex (degree 0 first).
std::vector<IntVector> monomials_up_to(std::size_t n, std::int64_t d);

/// Sparse multivariate Laurent polynomial with rational coefficients.
/// Zero coefficients are never stored.
class MultiPoly {
 public:
  using Terms = std::map<IntVector, Rational, GradedLexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t dim) : dim_(dim) {}

  static MultiPoly constant(std::size_t dim, const Rational& c);
  static MultiPoly monomial(IntVector exponent, const Rational& c = 1);
  /// x_i - 1 style helpers are built from these.
  static MultiPoly variable(std::size_t dim, std::size_t i);

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const IntVector& exponent) const;
  void add_term(const IntVector& exponent, const Rational& c);

  /// Smallest / largest total degree of a term. Throws std::domain_error on zero.
  std::int64_t min_degree() const;
  std::int64_t max_degree() const;
  bool is_homogeneous() const;
  bool has_nonnegative_exponents() const;

  MultiPoly homogeneous_part(std::int64_t degree) const;
  MultiPoly truncated(std::int64_t max_degree) const;
  /// Multiplication by the monomial x^by.
  MultiPoly shifted(const IntVector& by) const;
  /// Componentwise minimum exponent. Throws std::domain_error on zero.
  IntVector min_exponent() const;
  /// Largest term in graded lex order. Throws std::domain_error on zero.
  std::pair<IntVector, Rational> leading_term() const;

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const { return *this * Rational(-1); }

  bool operator==(const MultiPoly& rhs) const { return dim_ == rhs.dim_ && terms_ == rhs.terms_; }

  /// Human-readable form in descending term order, e.g. "x^2*y + x*y^2 - 3*x*y + 1".
  /// Variables are x, y, z up to dimension 3 and x1..xn beyond.
  std::string to_string() const;

 private:
  void check_dim(const MultiPoly& rhs) const;

  std::size_t dim_ = 0;
  Terms terms_;
};

/// Power series in nonnegative exponents, kept truncated at total degree `cutoff`.
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t dim, std::int64_t cutoff) : poly_(dim), cutoff_(cutoff) {}
  TruncatedSeries(MultiPoly poly, std::int64_t cutoff);

  const MultiPoly& poly() const { return poly_; }
  std::int64_t cutoff() const { return cutoff_; }
  bool is_zero() const { return poly_.is_zero(); }

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(const Rational& c);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  MultiPoly poly_;
  std::int64_t cutoff_;
};

/// prod_i (1 + u_i)^{p_i} up to total degree max_degree; the coefficient of
/// u^delta is prod_i binom(p_i, delta_i), generalized for negative p_i.
TruncatedSeries shift_expand(const IntVector& p, std::int64_t max_degree);

/// e^{a . x} up to total degree max_degree; coefficient prod_i a_i^delta_i / delta_i!.
TruncatedSeries exp_expand(const IntVector& a, std::int64_t max_degree);

struct LowestPart {
  std::int64_t degree = 0;
  MultiPoly part;
};

/// Lowest-degree nonzero homogeneous component. Throws std::domain_error on zero.
LowestPart lowest_part(const MultiPoly& f);
LowestPart lowest_part(const TruncatedSeries& f);

/// f(d/dx_1, ..., d/dx_n) applied to g. f must have nonnegative exponents.
MultiPoly apply_diff(const MultiPoly& f, const MultiPoly& g);

MultiPoly multiply(const MultiPoly& f, const MultiPoly& g);

/// f / g when g divides f in the Laurent polynomial ring, nullopt otherwise.
/// Runs single-divisor reduction on the graded lex leading term after clearing
/// monomial factors. Throws std::domain_error when g is zero.
std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g);

/// f * x^{-min_exponent(f)}: the polynomial (nonnegative) representative of a
/// Laurent polynomial. A monomial does not vanish at e = (1,...,1) and is a
/// unit in the local ring there, so this preserves the vanishing order at e.
MultiPoly normalize_monomial(const MultiPoly& f);

/// f(1 + u_1, ..., 1 + u_n) for the normalized representative of f, expanded
/// in full.
MultiPoly expand_at_one(const MultiPoly& f);

/// Order of vanishing of a Laurent polynomial at e = (1,...,1); nullopt for 0.
std::optional<std::int64_t> vanishing_order(const MultiPoly& f);

}  // namespace qehrhart
