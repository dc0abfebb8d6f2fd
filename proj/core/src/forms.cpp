#include "kcone/forms.hpp"

#include "kcone/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kcone {

std::vector<Subset> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  Subset s(k);
  std::iota(s.begin(), s.end(), std::size_t{0});
  for (;;) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t m = i; m < k; ++m) s[m] = s[m - 1] + 1;
  }
  return out;
}

namespace {

// dx_k ^ dx_I = sign * dx_{I u {k}}; sign 0 when k is already in I.
int wedge_sign(std::size_t k, const Subset& subset, Subset& merged) {
  int below = 0;
  merged.clear();
  bool placed = false;
  for (std::size_t v : subset) {
    if (v == k) return 0;
    if (v < k) {
      ++below;
    } else if (!placed) {
      merged.push_back(k);
      placed = true;
    }
    merged.push_back(v);
  }
  if (!placed) merged.push_back(k);
  return below % 2 == 0 ? 1 : -1;
}

}  // namespace

Vector FormsPiece::coordinates(const Vector& ambient) const {
  return relations.quotient_coordinates(ambient);
}

SparseRow FormsPiece::coordinates(const SparseRow& ambient) const {
  return relations.sparse_quotient_coordinates(ambient);
}

std::size_t TorsionReport::total() const {
  std::size_t s = 0;
  for (const auto& [t, d] : dims) s += d;
  return s;
}

FormsComplex::FormsComplex(const GradedQuotient& q, int exponent_cap) : q_(q), cap_(exponent_cap) {}

template <class T>
const T& FormsComplex::memo(
    std::map<std::pair<std::size_t, int>, std::unique_ptr<Slot<T>>>& slots, std::size_t j, int t,
    std::unique_ptr<T> (FormsComplex::*build)(std::size_t, int) const) const {
  Slot<T>* slot = nullptr;
  {
    std::lock_guard lock(mutex_);
    auto& s = slots[{j, t}];
    if (!s) s = std::make_unique<Slot<T>>();
    slot = s.get();
  }
  std::call_once(slot->once, [&] { slot->value = (this->*build)(j, t); });
  return *slot->value;
}

const FormsPiece& FormsComplex::piece(std::size_t j, int t) const {
  return memo(pieces_, j, t, &FormsComplex::build_piece);
}

const TorsionPiece& FormsComplex::torsion_piece(std::size_t j, int t) const {
  return memo(torsion_, j, t, &FormsComplex::build_torsion);
}

std::unique_ptr<FormsPiece> FormsComplex::build_piece(std::size_t j, int t) const {
  auto p = std::make_unique<FormsPiece>();
  p->j = j;
  p->t = t;
  const std::size_t n = q_.num_vars();
  p->subsets = subsets_of_size(n, j);
  for (std::size_t i = 0; i < p->subsets.size(); ++i) p->subset_index.emplace(p->subsets[i], i);
  p->block = q_.dim(t - static_cast<int>(j));
  p->ambient_dim = p->subsets.size() * p->block;

  FractionFreeEchelon ech(p->ambient_dim);
  if (j >= 1 && p->ambient_dim > 0) {
    const auto lower = subsets_of_size(n, j - 1);
    Subset merged;
    for (const auto& g : q_.generators()) {
      const int s = t - g.degree() - static_cast<int>(j - 1);
      if (s < 0) continue;
      std::vector<HPoly> partials;
      for (std::size_t k = 0; k < n; ++k) partials.push_back(g.derivative(k));
      const std::size_t count = q_.dim(s);
      for (const auto& base : lower) {
        for (std::size_t i = 0; i < count; ++i) {
          // m * dg ^ dx_base with m the i-th standard monomial of degree s.
          std::map<std::size_t, Scalar> row;
          for (std::size_t k = 0; k < n; ++k) {
            const int sign = wedge_sign(k, base, merged);
            if (sign == 0) continue;
            const std::size_t sub = p->subset_index.at(merged);
            for (const auto& [e, c] : partials[k].terms()) {
              for (const auto& entry : q_.multiply_standard(s, i, e)) {
                row[p->column(sub, entry.col)] += sign * c * entry.value;
              }
            }
          }
          SparseRow sparse;
          for (auto& [col, v] : row) {
            if (sgn(v) != 0) sparse.push_back({col, std::move(v)});
          }
          ++p->relation_rows;
          ech.insert(sparse);
        }
      }
    }
  }
  p->relations = ech.reduced();
  p->dimension = p->ambient_dim - p->relations.rank();
  return p;
}

ExactMatrix FormsComplex::de_rham_matrix(std::size_t j, int t) const {
  const auto& src = piece(j, t);
  const auto& dst = piece(j + 1, t);
  ExactMatrix m(dst.dimension, src.dimension);
  if (src.dimension == 0 || dst.dimension == 0) return m;
  const int deg = t - static_cast<int>(j);
  const auto& standard = q_.piece(deg).standard;
  Subset merged;
  for (std::size_t b = 0; b < src.dimension; ++b) {
    const std::size_t col = src.representative_column(b);
    const Subset& subset = src.subsets[col / src.block];
    const Exponents& f = standard[col % src.block];
    SparseRow image;
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k] == 0) continue;
      const int sign = wedge_sign(k, subset, merged);
      if (sign == 0) continue;
      Exponents lower = f;
      --lower[k];
      const std::size_t sub = dst.subset_index.at(merged);
      for (const auto& entry : q_.monomial_normal_form(lower)) {
        image.push_back({dst.column(sub, entry.col), sign * f[k] * entry.value});
      }
    }
    for (const auto& e : dst.coordinates(image)) m.set(e.col, b, e.value);
  }
  return m;
}

SparseRow FormsComplex::multiply_basis_element(std::size_t j, int t, std::size_t b,
                                               const Exponents& u) const {
  const auto& src = piece(j, t);
  const auto& dst = piece(j, t + total_degree(u));
  if (dst.dimension == 0) return {};
  const std::size_t col = src.representative_column(b);
  SparseRow image;
  for (const auto& entry : q_.multiply_standard(t - static_cast<int>(j), col % src.block, u)) {
    image.push_back({dst.column(col / src.block, entry.col), entry.value});
  }
  return dst.coordinates(image);
}

ExactMatrix FormsComplex::multiplication_matrix(std::size_t j, int t, const Exponents& u) const {
  const auto& src = piece(j, t);
  const auto& dst = piece(j, t + total_degree(u));
  ExactMatrix m(dst.dimension, src.dimension);
  for (std::size_t b = 0; b < src.dimension; ++b) {
    for (const auto& e : multiply_basis_element(j, t, b, u)) m.set(e.col, b, e.value);
  }
  return m;
}

std::vector<SparseRow> FormsComplex::stacked_images(std::size_t j, int t, int e) const {
  const auto& src = piece(j, t);
  const std::size_t n = q_.num_vars();
  const std::size_t block = piece(j, t + e).dimension;
  std::vector<SparseRow> images(src.dimension);
  for (std::size_t b = 0; b < src.dimension; ++b) {
    for (std::size_t k = 0; k < n; ++k) {
      Exponents u(n, 0);
      u[k] = e;
      for (auto& entry : multiply_basis_element(j, t, b, u)) {
        images[b].push_back({k * block + entry.col, std::move(entry.value)});
      }
    }
  }
  return images;
}

std::unique_ptr<TorsionPiece> FormsComplex::build_torsion(std::size_t j, int t) const {
  auto tp = std::make_unique<TorsionPiece>();
  const auto& src = piece(j, t);
  if (cap_ < 1) {
    throw StabilizationError("stabilization not reached within cap " + std::to_string(cap_) +
                             " (torsion of " + std::to_string(j) + "-forms in degree " +
                             std::to_string(t) + ")");
  }
  if (src.dimension == 0) {
    tp->exponent = 1;
    return tp;
  }
  const std::size_t n = q_.num_vars();
  auto kernel_dim = [&](int e) {
    FractionFreeEchelon ech(n * piece(j, t + e).dimension);
    for (const auto& row : stacked_images(j, t, e)) ech.insert(row);
    return src.dimension - ech.rank();
  };
  std::size_t prev = kernel_dim(1);
  for (int e = 2; e <= cap_; ++e) {
    const std::size_t cur = kernel_dim(e);
    if (cur == prev) {
      // The kernel is the null space of the transpose of the image rows.
      const std::size_t length = n * piece(j, t + e - 1).dimension;
      ExactMatrix images(src.dimension, length);
      auto rows = stacked_images(j, t, e - 1);
      for (std::size_t b = 0; b < rows.size(); ++b) {
        std::sort(rows[b].begin(), rows[b].end(),
                  [](const SparseEntry& x, const SparseEntry& y) { return x.col < y.col; });
        images.set_row(b, std::move(rows[b]));
      }
      tp->exponent = e - 1;
      tp->basis = kernel_basis(images.transpose());
      tp->dimension = tp->basis.size();
      return tp;
    }
    prev = cur;
  }
  throw StabilizationError("stabilization not reached within cap " + std::to_string(cap_) +
                           " (torsion of " + std::to_string(j) + "-forms in degree " +
                           std::to_string(t) + "); raise the window");
}

TorsionReport FormsComplex::torsion_report(std::size_t j, int t_min, int t_max) const {
  TorsionReport rep;
  rep.j = j;
  for (int t = t_min; t <= t_max; ++t) {
    const auto& tp = torsion_piece(j, t);
    rep.dims[t] = tp.dimension;
    rep.exponent = std::max(rep.exponent, tp.exponent);
  }
  rep.verified_stable = t_max - t_min >= 2 && rep.dims[t_max] == 0 && rep.dims[t_max - 1] == 0 &&
                        rep.dims[t_max - 2] == 0;
  return rep;
}

std::size_t FormsComplex::torsion_d_rank(std::size_t j, int t) const {
  const auto& tors = torsion_piece(j, t);
  if (tors.dimension == 0) return 0;
  const ExactMatrix d = de_rham_matrix(j, t);
  std::vector<Vector> images;
  images.reserve(tors.basis.size());
  for (const auto& v : tors.basis) images.push_back(d.apply(v));
  const auto& target = torsion_piece(j + 1, t);
  const std::size_t length = piece(j + 1, t).dimension;
  if (length == 0) return 0;
  const std::size_t image_rank = span_rank(images, length);
  if (image_rank > 0) {
    const auto dims = span_dims(images, target.basis.empty() ? std::vector<Vector>{Vector(length)}
                                                             : target.basis);
    if (dims.sum != dims.b) {
      throw std::logic_error("d does not map torsion " + std::to_string(j) +
                             "-forms into torsion in degree " + std::to_string(t));
    }
  }
  return image_rank;
}

std::size_t FormsComplex::torsion_quotient_dim(std::size_t j, int t) const {
  const std::size_t tors = torsion_piece(j, t).dimension;
  if (j == 0) return tors;
  return tors - torsion_d_rank(j - 1, t);
}

}  // namespace kcone
