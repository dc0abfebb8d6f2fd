#include "kcone/exact_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace kcone {

SparseRow to_sparse(const Vector& v) {
  SparseRow row;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (sgn(v[c]) != 0) row.push_back({c, v[c]});
  }
  return row;
}

Vector to_dense(const SparseRow& row, std::size_t length) {
  Vector v(length);
  for (const auto& e : row) v.at(e.col) = e.value;
  return v;
}

// ---------------------------------------------------------------------------
// ExactMatrix

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), row_data_(rows) {}

ExactMatrix ExactMatrix::from_dense(const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
    m.row_data_[r] = to_sparse(rows[r]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_rows(std::size_t cols, std::vector<Vector> rows) {
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    m.row_data_[r] = to_sparse(rows[r]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
  ExactMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) {
      if (sgn(cols[c][r]) != 0) m.row_data_[r].push_back({c, cols[c][r]});
    }
  }
  return m;
}

Scalar ExactMatrix::get(std::size_t r, std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("column index");
  const auto& row = row_data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseEntry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->value;
  return 0;
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Scalar& value) {
  if (c >= cols_) throw std::out_of_range("column index");
  auto& row = row_data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseEntry& e, std::size_t col) { return e.col < col; });
  const bool present = it != row.end() && it->col == c;
  if (sgn(value) == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->value = value;
  } else {
    row.insert(it, {c, value});
  }
}

void ExactMatrix::add_to(std::size_t r, std::size_t c, const Scalar& value) {
  if (sgn(value) == 0) return;
  set(r, c, get(r, c) + value);
}

void ExactMatrix::set_row(std::size_t r, SparseRow row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].col >= cols_) throw std::out_of_range("column index");
    if (sgn(row[i].value) == 0) throw std::invalid_argument("explicit zero in sparse row");
    if (i > 0 && row[i - 1].col >= row[i].col) throw std::invalid_argument("unsorted sparse row");
  }
  row_data_.at(r) = std::move(row);
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : row_data_) n += row.size();
  return n;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& e : row_data_[r]) t.row_data_[e.col].push_back({r, e.value});
  }
  return t;
}

Vector ExactMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vector out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& e : row_data_[r]) out[r] += e.value * v[e.col];
  }
  return out;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(row_data_.begin(), row_data_.end(),
                     [](const SparseRow& r) { return r.empty(); });
}

ExactMatrix ExactMatrix::vstack(std::span<const ExactMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += b.rows();
  }
  ExactMatrix m(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    for (const auto& row : b.row_data_) m.row_data_[r++] = row;
  }
  return m;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  ExactMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& e : a.row(r)) {
      for (const auto& f : b.row(e.col)) acc[f.col] += e.value * f.value;
    }
    SparseRow row;
    for (auto& [c, v] : acc) {
      if (sgn(v) != 0) row.push_back({c, std::move(v)});
    }
    out.row_data_[r] = std::move(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ReducedRowSpace

ReducedRowSpace::ReducedRowSpace(std::size_t cols)
    : cols_(cols), pivot_lookup_(cols, -1), free_lookup_(cols) {
  free_cols_.resize(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    free_cols_[c] = c;
    free_lookup_[c] = static_cast<long>(c);
  }
}

long ReducedRowSpace::pivot_index(std::size_t c) const {
  return c < pivot_lookup_.size() ? pivot_lookup_[c] : -1;
}

long ReducedRowSpace::free_index(std::size_t c) const {
  return c < free_lookup_.size() ? free_lookup_[c] : -1;
}

void ReducedRowSpace::reduce_in_place(Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  for (std::size_t i = 0; i < pivot_cols_.size(); ++i) {
    const Scalar factor = v[pivot_cols_[i]];
    if (sgn(factor) == 0) continue;
    for (const auto& e : rows_[i]) v[e.col] -= factor * e.value;
  }
}

Vector ReducedRowSpace::reduce(Vector v) const {
  reduce_in_place(v);
  return v;
}

bool ReducedRowSpace::contains(const Vector& v) const {
  const Vector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

Vector ReducedRowSpace::quotient_coordinates(const Vector& v) const {
  const Vector r = reduce(v);
  Vector coords(free_cols_.size());
  for (std::size_t i = 0; i < free_cols_.size(); ++i) coords[i] = r[free_cols_[i]];
  return coords;
}

SparseRow ReducedRowSpace::sparse_quotient_coordinates(const SparseRow& v) const {
  std::map<std::size_t, Scalar> acc;
  for (const auto& [c, x] : v) {
    if (c >= cols_) throw std::invalid_argument("vector length mismatch");
    const long f = free_lookup_[c];
    if (f >= 0) {
      acc[static_cast<std::size_t>(f)] += x;
      continue;
    }
    const auto& row = rows_[static_cast<std::size_t>(pivot_lookup_[c])];
    for (const auto& e : row) {
      if (e.col != c) acc[static_cast<std::size_t>(free_lookup_[e.col])] -= x * e.value;
    }
  }
  SparseRow out;
  for (auto& [i, x] : acc) {
    if (sgn(x) != 0) out.push_back({i, std::move(x)});
  }
  return out;
}

std::vector<Vector> ReducedRowSpace::null_space_basis() const {
  std::vector<Vector> basis;
  basis.reserve(free_cols_.size());
  for (std::size_t f : free_cols_) {
    Vector v(cols_);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols_.size(); ++i) {
      // Row i reads x_{p_i} + sum a_c x_c = 0.
      for (const auto& e : rows_[i]) {
        if (e.col == f) v[pivot_cols_[i]] = -e.value;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// FractionFreeEchelon

FractionFreeEchelon::FractionFreeEchelon(std::size_t cols) : cols_(cols) {}

void FractionFreeEchelon::make_primitive(IntRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.front().value) < 0) g = -g;
  if (g != 1) {
    for (auto& e : row) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  }
}

FractionFreeEchelon::IntRow FractionFreeEchelon::to_primitive(const SparseRow& row) {
  mpz_class l = 1;
  for (const auto& e : row) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.get_den_mpz_t());
  }
  IntRow out;
  out.reserve(row.size());
  for (const auto& e : row) {
    mpz_class v = e.value.get_num() * (l / e.value.get_den());
    out.push_back({e.col, std::move(v)});
  }
  make_primitive(out);
  return out;
}

// Returns (a/g) * target - (b/g) * pivot where a, b are the entries at col.
FractionFreeEchelon::IntRow FractionFreeEchelon::eliminate(const IntRow& target,
                                                           const IntRow& pivot,
                                                           std::size_t col) {
  const mpz_class* a = nullptr;
  const mpz_class* b = nullptr;
  for (const auto& e : pivot) {
    if (e.col == col) {
      a = &e.value;
      break;
    }
  }
  for (const auto& e : target) {
    if (e.col == col) {
      b = &e.value;
      break;
    }
  }
  if (a == nullptr || b == nullptr) throw std::logic_error("elimination column missing");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a->get_mpz_t(), b->get_mpz_t());
  const mpz_class ta = *a / g;
  const mpz_class tb = *b / g;

  IntRow out;
  out.reserve(target.size() + pivot.size());
  std::size_t i = 0;
  std::size_t j = 0;
  mpz_class v;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target[i].col < pivot[j].col)) {
      out.push_back({target[i].col, ta * target[i].value});
      ++i;
    } else if (i == target.size() || pivot[j].col < target[i].col) {
      out.push_back({pivot[j].col, -tb * pivot[j].value});
      ++j;
    } else {
      v = ta * target[i].value - tb * pivot[j].value;
      if (sgn(v) != 0) out.push_back({target[i].col, v});
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

bool FractionFreeEchelon::insert(const Vector& row) {
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  return insert(to_sparse(row));
}

bool FractionFreeEchelon::insert(const SparseRow& row) {
  IntRow r = to_primitive(row);
  for (const auto& e : r) {
    if (e.col >= cols_) throw std::out_of_range("column index");
  }
  // Clear the leading entry while it sits on an existing pivot column; the
  // leading column strictly increases each round.
  while (!r.empty()) {
    auto it = pivots_.find(r.front().col);
    if (it == pivots_.end()) break;
    r = eliminate(r, it->second, it->first);
  }
  if (r.empty()) return false;
  const std::size_t lead = r.front().col;
  pivots_.emplace(lead, std::move(r));
  return true;
}

ReducedRowSpace FractionFreeEchelon::reduced() const {
  ReducedRowSpace out(cols_);
  // Fully reduce from the last pivot backwards so every later row is already
  // clean on the other pivot columns when it is used.
  std::map<std::size_t, IntRow> clean;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    IntRow row = it->second;
    for (;;) {
      std::size_t target = cols_;
      for (std::size_t k = 1; k < row.size(); ++k) {
        if (clean.count(row[k].col) != 0) {
          target = row[k].col;
          break;
        }
      }
      if (target == cols_) break;
      row = eliminate(row, clean.at(target), target);
    }
    clean.emplace(it->first, std::move(row));
  }
  out.pivot_lookup_.assign(cols_, -1);
  out.free_lookup_.assign(cols_, -1);
  out.free_cols_.clear();
  for (const auto& [col, row] : clean) {
    const mpz_class& lead = row.front().value;
    SparseRow rational;
    rational.reserve(row.size());
    for (const auto& e : row) {
      Scalar q(e.value, lead);
      q.canonicalize();
      rational.push_back({e.col, std::move(q)});
    }
    out.pivot_lookup_[col] = static_cast<long>(out.pivot_cols_.size());
    out.pivot_cols_.push_back(col);
    out.rows_.push_back(std::move(rational));
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    if (out.pivot_lookup_[c] < 0) {
      out.free_lookup_[c] = static_cast<long>(out.free_cols_.size());
      out.free_cols_.push_back(c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free functions

std::size_t rank(const ExactMatrix& m) {
  FractionFreeEchelon ech(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  return ech.rank();
}

std::size_t bareiss_rank(const ExactMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (const auto& e : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.get_den_mpz_t());
    for (const auto& e : m.row(r)) a[r][e.col] = e.value.get_num() * (l / e.value.get_den());
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = a[rank][c] * a[r][k] - a[r][c] * a[rank][k];
        mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

ReducedRowSpace row_reduce(const ExactMatrix& m) {
  FractionFreeEchelon ech(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  return ech.reduced();
}

std::vector<Vector> kernel_basis(const ExactMatrix& m) { return row_reduce(m).null_space_basis(); }

std::size_t span_rank(std::span<const Vector> vectors, std::size_t length) {
  FractionFreeEchelon ech(length);
  for (const auto& v : vectors) ech.insert(v);
  return ech.rank();
}

SpanDims span_dims(std::span<const Vector> a, std::span<const Vector> b) {
  std::size_t length = 0;
  bool have_length = false;
  for (auto set : {a, b}) {
    for (const auto& v : set) {
      if (!have_length) {
        length = v.size();
        have_length = true;
      } else if (v.size() != length) {
        throw std::invalid_argument("span_dims: vector length mismatch");
      }
    }
  }
  FractionFreeEchelon ea(length);
  FractionFreeEchelon eb(length);
  FractionFreeEchelon both(length);
  for (const auto& v : a) {
    ea.insert(v);
    both.insert(v);
  }
  for (const auto& v : b) {
    eb.insert(v);
    both.insert(v);
  }
  SpanDims d;
  d.a = ea.rank();
  d.b = eb.rank();
  d.sum = both.rank();
  d.intersection = d.a + d.b - d.sum;
  return d;
}

}  // namespace kcone
