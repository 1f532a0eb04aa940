#include "qehrhart/exactlin.hpp"

#include <stdexcept>
#include <utility>

namespace qehrhart {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("RationalMatrix: ragged initializer");
    for (long v : row) entries_.emplace_back(v);
  }
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  RationalMatrix m(0, cols);
  m.entries_.reserve(rows.size() * cols);
  for (const auto& row : rows) m.append_row(row);
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector RationalMatrix::row_vector(std::size_t r) const {
  auto view = row(r);
  return {view.begin(), view.end()};
}

void RationalMatrix::append_row(std::span<const Rational> values) {
  if (values.size() != cols_) throw std::invalid_argument("RationalMatrix::append_row: length mismatch");
  entries_.insert(entries_.end(), values.begin(), values.end());
  ++rows_;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("RationalMatrix::operator*: shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

namespace {

// Row-major integer working copy; each row is scaled by the lcm of its
// denominators, which leaves the row space unchanged.
struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> a;

  explicit IntegerMatrix(const RationalMatrix& m) : rows(m.rows()), cols(m.cols()), a(rows * cols) {
    for (std::size_t r = 0; r < rows; ++r) {
      Integer l = 1;
      for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
      for (std::size_t c = 0; c < cols; ++c) {
        Integer& e = at(r, c);
        mpz_divexact(e.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        e *= m(r, c).get_num();
      }
    }
  }

  Integer& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
  }

  std::size_t find_pivot(std::size_t from, std::size_t c) {
    for (std::size_t i = from; i < rows; ++i)
      if (sgn(at(i, c)) != 0) return i;
    return rows;
  }
};

// One fraction-free step. Rows in [0, r) are updated too when `jordan` is set,
// which yields the Gauss-Jordan variant; every entry stays an integer minor,
// so the division by `prev` is exact.
void bareiss_step(IntegerMatrix& m, std::size_t r, std::size_t c, const Integer& prev, bool jordan) {
  const Integer p = m.at(r, c);
  Integer t;
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (i == r) continue;
    if (i < r && !jordan) continue;
    const Integer f = m.at(i, c);
    // Below the pivot row, columns left of c are already zero.
    const std::size_t first = i > r ? c : 0;
    for (std::size_t j = first; j < m.cols; ++j) {
      Integer& e = m.at(i, j);
      const Integer& pr = m.at(r, j);
      t = p * e;
      if (sgn(f) != 0 && sgn(pr) != 0) t -= f * pr;
      mpz_divexact(e.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
    }
  }
}

}  // namespace

EchelonForm reduced_echelon(const RationalMatrix& m) {
  IntegerMatrix w(m);
  EchelonForm out;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
    const std::size_t piv = w.find_pivot(r, c);
    if (piv == w.rows) continue;
    w.swap_rows(piv, r);
    bareiss_step(w, r, c, prev, /*jordan=*/true);
    prev = w.at(r, c);
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.basis = RationalMatrix(r, w.cols);
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& pivot = w.at(i, out.pivot_cols[i]);
    for (std::size_t j = 0; j < w.cols; ++j) {
      if (sgn(w.at(i, j)) == 0) continue;
      Rational& e = out.basis(i, j);
      e = Rational(w.at(i, j), pivot);
      e.canonicalize();
    }
  }
  return out;
}

std::size_t rank(const RationalMatrix& m) {
  IntegerMatrix w(m);
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
    const std::size_t piv = w.find_pivot(r, c);
    if (piv == w.rows) continue;
    w.swap_rows(piv, r);
    bareiss_step(w, r, c, prev, /*jordan=*/false);
    prev = w.at(r, c);
    ++r;
  }
  return r;
}

RationalMatrix kernel_basis(const RationalMatrix& m) {
  const EchelonForm form = reduced_echelon(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : form.pivot_cols) is_pivot[c] = true;

  RationalMatrix out(0, n);
  RationalVector v(n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::fill(v.begin(), v.end(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < form.rank; ++i) v[form.pivot_cols[i]] = -form.basis(i, f);
    out.append_row(v);
  }
  return out;
}

RationalVector reduce_against(std::span<const Rational> v, const EchelonForm& form) {
  if (form.rank > 0 && v.size() != form.basis.cols())
    throw std::invalid_argument("reduce_against: vector length does not match basis");
  RationalVector out(v.begin(), v.end());
  for (std::size_t i = 0; i < form.rank; ++i) {
    const Rational coef = out[form.pivot_cols[i]];
    if (coef == 0) continue;
    const auto row = form.basis.row(i);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (row[j] != 0) out[j] -= coef * row[j];
  }
  return out;
}

bool in_row_space(std::span<const Rational> v, const EchelonForm& form) {
  const RationalVector rest = reduce_against(v, form);
  for (const auto& x : rest)
    if (x != 0) return false;
  return true;
}

bool in_row_space(std::span<const Rational> v, const RationalMatrix& basis) {
  if (v.size() != basis.cols()) throw std::invalid_argument("in_row_space: vector length does not match basis");
  EchelonForm form;
  form.basis = basis;
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    const auto row = basis.row(i);
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    if (c == row.size()) continue;
    if (row[c] != 1) throw std::invalid_argument("in_row_space: basis is not in reduced echelon form");
    form.pivot_cols.push_back(c);
  }
  form.rank = form.pivot_cols.size();
  if (form.rank != basis.rows()) throw std::invalid_argument("in_row_space: basis has zero rows");
  return in_row_space(v, form);
}

RationalMatrix stack(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("stack: column mismatch");
  RationalMatrix out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

std::size_t intersection_dim(const RationalMatrix& a, const RationalMatrix& b) {
  return rank(a) + rank(b) - rank(stack(a, b));
}

}  // namespace qehrhart
