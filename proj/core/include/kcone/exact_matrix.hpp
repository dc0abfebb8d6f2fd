#pragma once

// Exact linear algebra over Q. Every rank, kernel and quotient dimension in
// kcone goes through the types in this header.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace kcone {

// Rational scalar. GMP keeps it canonical (lowest terms, positive
// denominator) after every arithmetic operation we perform.
using Scalar = mpq_class;

// Dense vector of exact scalars.
using Vector = std::vector<Scalar>;

struct SparseEntry {
  std::size_t col;
  Scalar value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Sorted by column, no explicit zeros.
using SparseRow = std::vector<SparseEntry>;

SparseRow to_sparse(const Vector& v);
Vector to_dense(const SparseRow& row, std::size_t length);

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix from_dense(const std::vector<Vector>& rows);
  static ExactMatrix from_rows(std::size_t cols, std::vector<Vector> rows);
  static ExactMatrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

  std::size_t rows() const { return row_data_.size(); }
  std::size_t cols() const { return cols_; }

  Scalar get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& value);
  void add_to(std::size_t r, std::size_t c, const Scalar& value);
  void set_row(std::size_t r, SparseRow row);

  const SparseRow& row(std::size_t r) const { return row_data_.at(r); }
  std::size_t nonzeros() const;

  ExactMatrix transpose() const;
  Vector apply(const Vector& v) const;
  bool is_zero() const;

  // Rows are stacked on top of each other; column counts must agree.
  static ExactMatrix vstack(std::span<const ExactMatrix> blocks);

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> row_data_;
};

// Reduced row echelon form of a row space. Pivot rows are monic and vanish on
// every other pivot column, so reduction modulo the space is canonical.
class ReducedRowSpace {
 public:
  ReducedRowSpace() = default;
  // The zero subspace of Q^cols.
  explicit ReducedRowSpace(std::size_t cols);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivot_cols_.size(); }

  // Pivot columns in increasing order; row(i) has its leading 1 at pivot(i).
  const std::vector<std::size_t>& pivot_columns() const { return pivot_cols_; }
  const std::vector<std::size_t>& free_columns() const { return free_cols_; }
  const SparseRow& pivot_row(std::size_t i) const { return rows_[i]; }

  // Index into pivot_columns() for column c, or -1.
  long pivot_index(std::size_t c) const;
  // Index into free_columns() for column c, or -1.
  long free_index(std::size_t c) const;

  // Canonical representative of v modulo the row space (zero on pivots).
  void reduce_in_place(Vector& v) const;
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;

  // Coordinates of the class of v in the quotient, indexed like free_columns().
  Vector quotient_coordinates(const Vector& v) const;
  // Same for a sparse vector, in one pass over its entries (pivot rows vanish
  // on every other pivot column, so no fill-in reaches a pivot).
  SparseRow sparse_quotient_coordinates(const SparseRow& v) const;

  // Basis of the right null space, one vector per free column.
  std::vector<Vector> null_space_basis() const;

 private:
  friend class FractionFreeEchelon;

  std::size_t cols_ = 0;
  std::vector<std::size_t> pivot_cols_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> free_cols_;
  std::vector<long> pivot_lookup_;  // per column: index into pivot_cols_ or -1
  std::vector<long> free_lookup_;   // per column: index into free_cols_ or -1
};

// Incremental fraction-free echelon form. Rows are kept primitive over Z; an
// inserted row is reduced against existing pivots in column order and, if
// anything survives, becomes a new pivot at its leading column.
class FractionFreeEchelon {
 public:
  explicit FractionFreeEchelon(std::size_t cols);

  // Returns true when the row enlarged the span.
  bool insert(const SparseRow& row);
  bool insert(const Vector& row);

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }

  // Back-substitution plus the final exact division by each pivot.
  ReducedRowSpace reduced() const;

 private:
  struct IntEntry {
    std::size_t col;
    mpz_class value;
  };
  using IntRow = std::vector<IntEntry>;

  static IntRow to_primitive(const SparseRow& row);
  static void make_primitive(IntRow& row);
  static IntRow eliminate(const IntRow& target, const IntRow& pivot, std::size_t col);

  std::size_t cols_;
  std::map<std::size_t, IntRow> pivots_;
};

std::size_t rank(const ExactMatrix& m);

// Dense textbook Bareiss elimination. Independent second route for rank.
std::size_t bareiss_rank(const ExactMatrix& m);

ReducedRowSpace row_reduce(const ExactMatrix& m);

// Right null space; cols - rank vectors, canonical (RREF-derived).
std::vector<Vector> kernel_basis(const ExactMatrix& m);

std::size_t span_rank(std::span<const Vector> vectors, std::size_t length);

struct SpanDims {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t sum = 0;
  std::size_t intersection = 0;

  friend bool operator==(const SpanDims&, const SpanDims&) = default;
};

// Throws std::invalid_argument on a length mismatch.
SpanDims span_dims(std::span<const Vector> a, std::span<const Vector> b);

}  // namespace kcone
