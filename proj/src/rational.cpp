#include "qehrhart/rational.hpp"

#include <algorithm>
#include <cctype>

namespace qehrhart {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);

  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in rational: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Integer floor_of(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

bool is_integral(const Rational& value) { return value.get_den() == 1; }

Integer binomial(std::int64_t top, std::uint64_t k) {
  Integer n(static_cast<long>(top));
  Integer out;
  // mpz_bin_ui handles negative n via binom(-n, k) = (-1)^k binom(n+k-1, k).
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

Integer factorial(std::uint64_t n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Integer common_denominator(const RationalVector& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

}  // namespace qehrhart
