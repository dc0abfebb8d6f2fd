#include "kcone/graded_ring.hpp"

#include "kcone/errors.hpp"

#include <algorithm>
#include <limits>

namespace kcone {

GradedQuotient::GradedQuotient(RingPtr ring, std::vector<HPoly> generators)
    : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (!(g.ring() == *ring_)) throw InvalidInput("generator lives in a different ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

GradedQuotient::GradedQuotient(RingPtr ring, std::vector<HPoly> generators,
                               VeroneseParametrization param)
    : GradedQuotient(std::move(ring), std::move(generators)) {
  if (param.images.size() != ring_->size()) {
    throw InvalidInput("parametrization must give one image per variable");
  }
  for (const auto& v : param.images) {
    if (v.size() != param.source_vars || total_degree(v) != param.twist) {
      throw InvalidInput("parametrization images must be monomials of the twist degree");
    }
  }
  param_ = std::move(param);
}

const DegreePiece& GradedQuotient::piece(int t) const {
  if (t < 0) return empty_piece_;
  Slot* slot = nullptr;
  {
    std::lock_guard lock(slots_mutex_);
    auto& s = slots_[t];
    if (!s) s = std::make_unique<Slot>();
    slot = s.get();
  }
  std::call_once(slot->once,
                 [&] { slot->value = param_ ? build_toric_piece(t) : build_piece(t); });
  return *slot->value;
}

namespace {

SparseRow poly_row(const HPoly& p, const std::map<Exponents, std::size_t>& index) {
  SparseRow row;
  row.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) row.push_back({index.at(e), c});
  std::sort(row.begin(), row.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  return row;
}

// Rows m * g in S_t coordinates, in generator-major, monomial-minor order.
std::vector<SparseRow> ideal_rows(const std::vector<HPoly>& generators, const RingPtr& ring,
                                  int t, const std::map<Exponents, std::size_t>& index) {
  std::vector<SparseRow> rows;
  for (const auto& g : generators) {
    const int shift = t - g.degree();
    if (shift < 0) continue;
    for (const auto& m : monomials_of_degree(ring->size(), shift)) {
      rows.push_back(poly_row(HPoly::monomial(ring, m) * g, index));
    }
  }
  return rows;
}

}  // namespace

std::unique_ptr<DegreePiece> GradedQuotient::build_piece(int t) const {
  auto p = std::make_unique<DegreePiece>();
  p->degree = t;
  p->monomials = monomials_of_degree(ring_->size(), t);
  for (std::size_t i = 0; i < p->monomials.size(); ++i) p->index.emplace(p->monomials[i], i);

  FractionFreeEchelon ech(p->monomials.size());
  for (const auto& row : ideal_rows(generators_, ring_, t, p->index)) ech.insert(row);
  p->ideal = ech.reduced();

  const auto& free = p->ideal.free_columns();
  for (std::size_t i = 0; i < free.size(); ++i) {
    p->standard.push_back(p->monomials[free[i]]);
    p->standard_index.emplace(p->monomials[free[i]], i);
  }
  p->monomial_normal_form.resize(p->monomials.size());
  for (std::size_t c = 0; c < p->monomials.size(); ++c) {
    const long fi = p->ideal.free_index(c);
    if (fi >= 0) {
      p->monomial_normal_form[c] = {{static_cast<std::size_t>(fi), Scalar(1)}};
      continue;
    }
    // Pivot row reads x_c + sum_f a_f x_f in I, so x_c = -sum_f a_f x_f in R.
    const auto& row = p->ideal.pivot_row(static_cast<std::size_t>(p->ideal.pivot_index(c)));
    SparseRow nf;
    for (const auto& e : row) {
      if (e.col == c) continue;
      nf.push_back({static_cast<std::size_t>(p->ideal.free_index(e.col)), -e.value});
    }
    std::sort(nf.begin(), nf.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    p->monomial_normal_form[c] = std::move(nf);
  }
  return p;
}

Exponents GradedQuotient::toric_representative(const Exponents& e) const {
  const auto& prm = *param_;
  Exponents image(prm.source_vars, 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t k = 0; k < prm.source_vars; ++k) image[k] += e[i] * prm.images[i][k];
  }
  // Grevlex-smallest preimage: load the last variable as much as possible,
  // then the one before it, and so on. Any leftover of degree d*s splits into
  // s degree-d monomials, so every greedy step stays feasible.
  Exponents rep(e.size(), 0);
  for (std::size_t i = e.size(); i-- > 0;) {
    int k = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < prm.source_vars; ++j) {
      if (prm.images[i][j] > 0) k = std::min(k, image[j] / prm.images[i][j]);
    }
    if (k == std::numeric_limits<int>::max()) k = 0;
    rep[i] = k;
    for (std::size_t j = 0; j < prm.source_vars; ++j) image[j] -= k * prm.images[i][j];
  }
  return rep;
}

std::unique_ptr<DegreePiece> GradedQuotient::build_toric_piece(int t) const {
  auto p = std::make_unique<DegreePiece>();
  p->degree = t;
  const auto& prm = *param_;
  // One standard monomial per monomial of degree d*t in the source variables.
  for (const auto& w : monomials_of_degree(prm.source_vars, prm.twist * t)) {
    Exponents rep(ring_->size(), 0);
    Exponents image = w;
    for (std::size_t i = ring_->size(); i-- > 0;) {
      int k = std::numeric_limits<int>::max();
      for (std::size_t j = 0; j < prm.source_vars; ++j) {
        if (prm.images[i][j] > 0) k = std::min(k, image[j] / prm.images[i][j]);
      }
      if (k == std::numeric_limits<int>::max()) k = 0;
      rep[i] = k;
      for (std::size_t j = 0; j < prm.source_vars; ++j) image[j] -= k * prm.images[i][j];
    }
    p->standard.push_back(std::move(rep));
  }
  std::sort(p->standard.begin(), p->standard.end(), GrevlexGreater{});
  for (std::size_t i = 0; i < p->standard.size(); ++i) p->standard_index.emplace(p->standard[i], i);
  return p;
}

ExactMatrix GradedQuotient::ideal_degree_piece(int t) const {
  const auto monomials = monomials_of_degree(ring_->size(), t);
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) index.emplace(monomials[i], i);
  auto rows = ideal_rows(generators_, ring_, t, index);
  ExactMatrix m(rows.size(), monomials.size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, std::move(rows[r]));
  return m;
}

QuotientBasis GradedQuotient::quotient_basis(int t) const {
  QuotientBasis b;
  if (t < 0) return b;
  const auto& p = piece(t);
  b.dimension = p.quotient_dim();
  b.monomials = p.standard;
  return b;
}

SparseRow GradedQuotient::monomial_normal_form(const Exponents& e) const {
  const int t = total_degree(e);
  const auto& p = piece(t);
  if (param_) {
    return {{p.standard_index.at(toric_representative(e)), Scalar(1)}};
  }
  return p.monomial_normal_form[p.index.at(e)];
}

SparseRow GradedQuotient::multiply_standard(int t, std::size_t i, const Exponents& u) const {
  Exponents e = piece(t).standard.at(i);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += u[k];
  return monomial_normal_form(e);
}

Vector GradedQuotient::normal_form(const HPoly& f) const {
  if (!(f.ring() == *ring_)) throw InvalidInput("polynomial lives in a different ring");
  Vector v(dim(f.degree()));
  for (const auto& [e, c] : f.terms()) {
    for (const auto& entry : monomial_normal_form(e)) v[entry.col] += c * entry.value;
  }
  return v;
}

bool GradedQuotient::ideal_contains(const HPoly& f) const {
  const Vector v = normal_form(f);
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

// ---------------------------------------------------------------------------

HilbertProfile hilbert_profile(const GradedQuotient& q, int t_max) {
  HilbertProfile h;
  for (int t = 0; t <= t_max; ++t) h.values[t] = q.dim(t);
  if (t_max < 2) throw StabilizationError("no linear stabilization within t_max");
  const long slope = static_cast<long>(h.values[t_max]) - static_cast<long>(h.values[t_max - 1]);
  int from = t_max - 1;
  while (from > 0 && static_cast<long>(h.values[from]) - static_cast<long>(h.values[from - 1]) ==
                         slope) {
    --from;
  }
  if (t_max - from < 2) {
    throw StabilizationError("no linear stabilization within t_max = " + std::to_string(t_max) +
                             " (raise t_max or the input is not a curve)");
  }
  h.stable_from = from;
  h.degree = slope;
  const long intercept = static_cast<long>(h.values[from]) - slope * from;
  h.genus = 1 - intercept;
  return h;
}

bool smoothness_check(const HPoly& f) {
  if (f.ring().size() != 3) throw InvalidInput("smoothness_check expects a form in 3 variables");
  if (f.is_zero() || f.degree() < 2) throw InvalidInput("smoothness_check expects degree >= 2");
  const int n = f.degree();
  const int target = std::max(0, 3 * (n - 1) - 2);
  std::vector<HPoly> gens{f};
  for (std::size_t v = 0; v < 3; ++v) gens.push_back(f.derivative(v));
  GradedQuotient jac(f.ring_ptr(), std::move(gens));
  return jac.dim(target) == 0;
}

std::vector<Exponents> find_singular_points(const HPoly& f, int bound) {
  std::vector<Exponents> points;
  const std::size_t n = f.ring().size();
  std::vector<HPoly> polys{f};
  for (std::size_t v = 0; v < n; ++v) polys.push_back(f.derivative(v));
  auto eval = [](const HPoly& p, const Exponents& pt) {
    Scalar acc = 0;
    for (const auto& [e, c] : p.terms()) {
      Scalar term = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int k = 0; k < e[i]; ++k) term *= pt[i];
      }
      acc += term;
    }
    return acc;
  };
  Exponents pt(n, -bound);
  for (;;) {
    // Projective representatives: first nonzero coordinate positive.
    auto first = std::find_if(pt.begin(), pt.end(), [](int v) { return v != 0; });
    if (first != pt.end() && *first > 0) {
      bool all = true;
      for (const auto& p : polys) {
        if (sgn(eval(p, pt)) != 0) {
          all = false;
          break;
        }
      }
      if (all) points.push_back(pt);
    }
    std::size_t i = 0;
    while (i < n && pt[i] == bound) pt[i++] = -bound;
    if (i == n) break;
    ++pt[i];
  }
  return points;
}

std::size_t saturation_piece(const GradedQuotient& q, int t, int exponent) {
  if (t < 0) return 0;
  const std::size_t n = q.num_vars();
  const auto monomials = monomials_of_degree(n, t);
  const std::size_t target_dim = q.dim(t + exponent);
  // Stacked map S_t -> R_{t+E}^{N+1}; its rank is built column by column.
  FractionFreeEchelon ech(n * target_dim);
  for (const auto& m : monomials) {
    SparseRow image;
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e = m;
      e[j] += exponent;
      for (const auto& entry : q.monomial_normal_form(e)) {
        image.push_back({j * target_dim + entry.col, entry.value});
      }
    }
    ech.insert(image);
  }
  return monomials.size() - ech.rank();
}

std::size_t saturated_dim(const GradedQuotient& q, int t, int max_exponent) {
  std::size_t prev = saturation_piece(q, t, 1);
  for (int e = 2; e <= max_exponent; ++e) {
    const std::size_t cur = saturation_piece(q, t, e);
    if (cur == prev) return cur;
    prev = cur;
  }
  throw StabilizationError("saturation did not stabilize within exponent " +
                           std::to_string(max_exponent));
}

ExactMatrix multiplication_matrix(const GradedQuotient& q, int t, const Exponents& monomial) {
  const int shift = total_degree(monomial);
  ExactMatrix m(q.dim(t + shift), q.dim(t));
  for (std::size_t i = 0; i < q.dim(t); ++i) {
    for (const auto& e : q.multiply_standard(t, i, monomial)) m.set(e.col, i, e.value);
  }
  return m;
}

}  // namespace kcone
