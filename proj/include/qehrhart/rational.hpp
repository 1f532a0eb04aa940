#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qehrhart {

// Arbitrary-precision scalars. mpq_class keeps values canonical (reduced,
// positive denominator, zero as 0/1) after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

/// Integer n-vector: lattice points and monomial exponents.
using IntVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" (q != 0) into a canonical rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

bool is_integral(const Rational& value);

/// binom(top, k) for any integer top, using the generalized binomial
/// coefficient top (top-1) ... (top-k+1) / k! when top is negative.
Integer binomial(std::int64_t top, std::uint64_t k);

Integer factorial(std::uint64_t n);

/// Least common multiple of the denominators; 1 for an empty range.
Integer common_denominator(const RationalVector& values);

}  // namespace qehrhart
