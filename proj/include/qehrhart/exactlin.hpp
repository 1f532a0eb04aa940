#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qehrhart/rational.hpp"

namespace qehrhart {

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<long>> rows);

  /// All rows must share one length; an empty list gives a 0 x cols matrix.
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols = 0);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  RationalVector row_vector(std::size_t r) const;
  void append_row(std::span<const Rational> values);

  RationalMatrix transposed() const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct EchelonForm {
  std::size_t rank = 0;
  RationalMatrix basis;                 // rank x cols, reduced row-echelon
  std::vector<std::size_t> pivot_cols;  // leading-1 column of each basis row
};

/// Reduced row-echelon basis of the row space. Elimination runs fraction-free
/// over the integers (rows are first cleared of denominators), so every
/// intermediate entry is a minor of the scaled input; the final division by
/// the common pivot gives the rational RREF. Columns are taken in the given
/// order, so the result is canonical for a fixed column order.
EchelonForm reduced_echelon(const RationalMatrix& m);

/// Rank via fraction-free forward elimination only.
std::size_t rank(const RationalMatrix& m);

/// Rows span the right null space {v : m v = 0}; one row per free column,
/// with a 1 in that column.
RationalMatrix kernel_basis(const RationalMatrix& m);

/// v minus its projection along the pivots of a reduced echelon basis.
RationalVector reduce_against(std::span<const Rational> v, const EchelonForm& form);

/// True iff v lies in the row space of `basis`, which must be in reduced
/// row-echelon form. Throws std::invalid_argument on a length mismatch.
bool in_row_space(std::span<const Rational> v, const RationalMatrix& basis);
bool in_row_space(std::span<const Rational> v, const EchelonForm& form);

/// Dimension of the intersection of two row spaces in the same ambient space.
std::size_t intersection_dim(const RationalMatrix& a, const RationalMatrix& b);

/// Rows of `a` followed by rows of `b`.
RationalMatrix stack(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace qehrhart
