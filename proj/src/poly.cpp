#include "qehrhart/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qehrhart {

std::int64_t total_degree(const IntVector& exponent) {
  return std::accumulate(exponent.begin(), exponent.end(), std::int64_t{0});
}

bool GradedLexLess::operator()(const IntVector& a, const IntVector& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

std::vector<IntVector> monomials_of_degree(std::size_t n, std::int64_t d) {
  std::vector<IntVector> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  IntVector e(n, 0);
  std::function<void(std::size_t, std::int64_t)> fill = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      e[i] = k;
      fill(i + 1, left - k);
    }
  };
  fill(0, d);
  // Generated with the first coordinate ascending, which is lex ascending.
  return out;
}

std::vector<IntVector> monomials_up_to(std::size_t n, std::int64_t d) {
  std::vector<IntVector> out;
  for (std::int64_t k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(n, k);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

MultiPoly MultiPoly::constant(std::size_t dim, const Rational& c) {
  MultiPoly p(dim);
  p.add_term(IntVector(dim, 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(IntVector exponent, const Rational& c) {
  MultiPoly p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t dim, std::size_t i) {
  IntVector e(dim, 0);
  e.at(i) = 1;
  return monomial(std::move(e));
}

Rational MultiPoly::coefficient(const IntVector& exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const IntVector& exponent, const Rational& c) {
  if (exponent.size() != dim_) throw std::invalid_argument("MultiPoly: exponent of wrong dimension");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t MultiPoly::min_degree() const {
  if (is_zero()) throw std::domain_error("min_degree of the zero polynomial");
  return total_degree(terms_.begin()->first);
}

std::int64_t MultiPoly::max_degree() const {
  if (is_zero()) throw std::domain_error("max_degree of the zero polynomial");
  return total_degree(terms_.rbegin()->first);
}

bool MultiPoly::is_homogeneous() const { return is_zero() || min_degree() == max_degree(); }

bool MultiPoly::has_nonnegative_exponents() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::all_of(t.first.begin(), t.first.end(), [](std::int64_t e) { return e >= 0; });
  });
}

MultiPoly MultiPoly::homogeneous_part(std::int64_t degree) const {
  MultiPoly out(dim_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == degree) out.terms_.emplace_hint(out.terms_.end(), e, c);
  return out;
}

MultiPoly MultiPoly::truncated(std::int64_t max_degree) const {
  MultiPoly out(dim_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) > max_degree) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

MultiPoly MultiPoly::shifted(const IntVector& by) const {
  if (by.size() != dim_) throw std::invalid_argument("MultiPoly::shifted: wrong dimension");
  MultiPoly out(dim_);
  for (const auto& [e, c] : terms_) {
    IntVector f = e;
    for (std::size_t i = 0; i < dim_; ++i) f[i] += by[i];
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

IntVector MultiPoly::min_exponent() const {
  if (is_zero()) throw std::domain_error("min_exponent of the zero polynomial");
  IntVector lo = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < dim_; ++i) lo[i] = std::min(lo[i], e[i]);
  return lo;
}

std::pair<IntVector, Rational> MultiPoly::leading_term() const {
  if (is_zero()) throw std::domain_error("leading_term of the zero polynomial");
  return *terms_.rbegin();
}

void MultiPoly::check_dim(const MultiPoly& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("MultiPoly: dimension mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_dim(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  check_dim(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_dim(b);
  MultiPoly out(a.dim_);
  IntVector e(a.dim_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

std::string MultiPoly::to_string() const {
  if (is_zero()) return "0";
  auto name = [this](std::size_t i) {
    static const char* small[] = {"x", "y", "z"};
    return dim_ <= 3 ? std::string(small[i]) : "x" + std::to_string(i + 1);
  };
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += name(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono;
    } else {
      os << mag.get_str() << "*" << mono;
    }
  }
  return os.str();
}

TruncatedSeries::TruncatedSeries(MultiPoly poly, std::int64_t cutoff)
    : poly_(poly.truncated(cutoff)), cutoff_(cutoff) {
  if (!poly_.has_nonnegative_exponents()) throw std::invalid_argument("TruncatedSeries: negative exponent");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  cutoff_ = std::min(cutoff_, rhs.cutoff_);
  poly_ = (poly_ + rhs.poly_).truncated(cutoff_);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  poly_ *= c;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::int64_t cutoff = std::min(a.cutoff_, b.cutoff_);
  MultiPoly out(a.poly_.dim());
  IntVector e(a.poly_.dim());
  for (const auto& [ea, ca] : a.poly_.terms()) {
    const auto da = total_degree(ea);
    for (const auto& [eb, cb] : b.poly_.terms()) {
      if (da + total_degree(eb) > cutoff) break;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return TruncatedSeries(std::move(out), cutoff);
}

namespace {

// Sum over exponents delta with |delta| <= max_degree of prod_i coef(i, delta_i) u^delta.
template <typename CoefFn>
TruncatedSeries product_series(std::size_t n, std::int64_t max_degree, CoefFn coef) {
  // Per-variable coefficient tables, cut where they vanish identically.
  std::vector<std::vector<Rational>> tables(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::int64_t k = 0; k <= max_degree; ++k) tables[i].push_back(coef(i, k));

  MultiPoly out(n);
  if (max_degree < 0) return TruncatedSeries(std::move(out), max_degree);
  IntVector e(n, 0);
  std::function<void(std::size_t, std::int64_t, const Rational&)> walk = [&](std::size_t i, std::int64_t left,
                                                                           const Rational& acc) {
    if (i == n) {
      out.add_term(e, acc);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      const Rational& c = tables[i][static_cast<std::size_t>(k)];
      if (c == 0) continue;
      e[i] = k;
      walk(i + 1, left - k, acc * c);
    }
    e[i] = 0;
  };
  walk(0, max_degree, Rational(1));
  return TruncatedSeries(std::move(out), max_degree);
}

}  // namespace

TruncatedSeries shift_expand(const IntVector& p, std::int64_t max_degree) {
  return product_series(p.size(), max_degree, [&](std::size_t i, std::int64_t k) {
    return Rational(binomial(p[i], static_cast<std::uint64_t>(k)));
  });
}

TruncatedSeries exp_expand(const IntVector& a, std::int64_t max_degree) {
  return product_series(a.size(), max_degree, [&](std::size_t i, std::int64_t k) {
    Integer power;
    const Integer base(static_cast<long>(a[i]));
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
    Rational r(power, factorial(static_cast<std::uint64_t>(k)));
    r.canonicalize();
    return r;
  });
}

LowestPart lowest_part(const MultiPoly& f) {
  if (f.is_zero()) throw std::domain_error("lowest_part of the zero polynomial");
  const auto d = f.min_degree();
  return {d, f.homogeneous_part(d)};
}

LowestPart lowest_part(const TruncatedSeries& f) { return lowest_part(f.poly()); }

MultiPoly apply_diff(const MultiPoly& f, const MultiPoly& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("apply_diff: dimension mismatch");
  if (!f.has_nonnegative_exponents()) throw std::invalid_argument("apply_diff: operator needs nonnegative exponents");
  MultiPoly out(g.dim());
  IntVector e(g.dim());
  for (const auto& [alpha, fa] : f.terms()) {
    for (const auto& [beta, gb] : g.terms()) {
      Integer coef = 1;
      bool survives = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        // d^k x^b = 0 when 0 <= b < k; otherwise the falling factorial b (b-1) ... (b-k+1).
        if (beta[i] >= 0 && alpha[i] > beta[i]) {
          survives = false;
          break;
        }
        for (std::int64_t j = 0; j < alpha[i]; ++j) coef *= static_cast<long>(beta[i] - j);
        e[i] = beta[i] - alpha[i];
      }
      if (!survives || coef == 0) continue;
      out.add_term(e, fa * gb * Rational(coef));
    }
  }
  return out;
}

MultiPoly multiply(const MultiPoly& f, const MultiPoly& g) { return f * g; }

MultiPoly normalize_monomial(const MultiPoly& f) {
  if (f.is_zero()) return f;
  IntVector lo = f.min_exponent();
  for (auto& x : lo) x = -x;
  return f.shifted(lo);
}

std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw std::domain_error("divide_exact: division by the zero polynomial");
  if (f.dim() != g.dim()) throw std::invalid_argument("divide_exact: dimension mismatch");
  if (f.is_zero()) return MultiPoly(f.dim());

  // Work with polynomial representatives; monomials are units in the Laurent ring.
  const IntVector f_lo = f.min_exponent();
  const IntVector g_lo = g.min_exponent();
  MultiPoly rest = normalize_monomial(f);
  const MultiPoly divisor = normalize_monomial(g);
  const auto [lead_e, lead_c] = divisor.leading_term();

  MultiPoly quotient(f.dim());
  IntVector e(f.dim());
  while (!rest.is_zero()) {
    const auto [re, rc] = rest.leading_term();
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = re[i] - lead_e[i];
      if (e[i] < 0) return std::nullopt;
    }
    const MultiPoly step = MultiPoly::monomial(e, rc / lead_c);
    quotient += step;
    rest -= step * divisor;
  }
  IntVector back(f.dim());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] = f_lo[i] - g_lo[i];
  return quotient.shifted(back);
}

MultiPoly expand_at_one(const MultiPoly& f) {
  MultiPoly out(f.dim());
  const MultiPoly p = normalize_monomial(f);
  for (const auto& [e, c] : p.terms()) {
    TruncatedSeries s = shift_expand(e, total_degree(e));
    s *= c;
    out += s.poly();
  }
  return out;
}

std::optional<std::int64_t> vanishing_order(const MultiPoly& f) {
  const MultiPoly u = expand_at_one(f);
  if (u.is_zero()) return std::nullopt;
  return u.min_degree();
}

}  // namespace qehrhart
