#include "kcone/cohomology.hpp"

#include "kcone/binomial_dim.hpp"
#include "kcone/errors.hpp"
#include "kcone/forms.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace kcone {

namespace {

std::size_t count(long v) { return v < 0 ? 0 : static_cast<std::size_t>(v); }

std::string point_text(const Exponents& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + std::to_string(p[i]);
  return s + ")";
}

}  // namespace

CurveModel CurveModel::plane_curve(std::string_view polynomial) {
  auto ring = make_ring({"x", "y", "z"});
  HPoly f = parse_homogeneous(polynomial, ring);
  if (f.is_zero()) throw InvalidInput("plane curve equation is zero");
  if (f.degree() < 2) throw InvalidInput("plane curve must have degree >= 2");
  if (!smoothness_check(f)) {
    const auto points = find_singular_points(f);
    if (points.empty()) {
      throw InvalidInput("singular curve: F and its partials have a common zero "
                         "(none with coordinates in [-2, 2])");
    }
    throw InvalidInput("singular curve: F and its partials vanish at " + point_text(points.front()));
  }
  const int n = f.degree();
  CurveModel c;
  c.family = Family::plane_curve;
  c.polynomial = std::string(polynomial);
  c.description = "plane_curve(" + f.to_string() + ")";
  c.plane_degree = n;
  c.canonical_twist = n - 3;
  c.quotient = std::make_shared<GradedQuotient>(ring, std::vector<HPoly>{f});
  const auto profile = hilbert_profile(*c.quotient, n + 2);
  c.degree = profile.degree;
  c.genus = profile.genus;
  if (c.degree != n || c.genus != static_cast<long>((n - 1) * (n - 2) / 2)) {
    throw AssumptionViolation("Hilbert data (" + std::to_string(c.degree) + ", " +
                              std::to_string(c.genus) + ") do not match a smooth plane curve of degree " +
                              std::to_string(n));
  }
  return c;
}

CurveModel CurveModel::veronese(int ambient_dim, int twist) {
  if (ambient_dim < 1) throw InvalidInput("veronese ambient_dim must be >= 1");
  if (twist < 1) throw InvalidInput("veronese degree must be >= 1");
  const std::size_t source = static_cast<std::size_t>(ambient_dim) + 1;
  const auto images = monomials_of_degree(source, twist);
  if (images.size() > 64) throw InvalidInput("veronese embedding too large (more than 64 variables)");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < images.size(); ++i) names.push_back("x" + std::to_string(i));
  auto ring = make_ring(std::move(names));

  // Quadratic binomials x_a x_b - x_c x_e with equal images span the toric ideal in degree 2.
  std::map<Exponents, std::vector<std::pair<std::size_t, std::size_t>>, GrevlexGreater> fibers;
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a; b < images.size(); ++b) {
      Exponents w = images[a];
      for (std::size_t k = 0; k < source; ++k) w[k] += images[b][k];
      fibers[w].emplace_back(a, b);
    }
  }
  auto quad = [&](std::pair<std::size_t, std::size_t> ab) {
    Exponents e(images.size(), 0);
    ++e[ab.first];
    ++e[ab.second];
    return e;
  };
  std::vector<HPoly> gens;
  for (const auto& [w, pairs] : fibers) {
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      TermMap terms;
      terms[quad(pairs.front())] = 1;
      terms[quad(pairs[i])] = -1;
      gens.emplace_back(ring, std::move(terms));
    }
  }

  CurveModel c;
  c.family = Family::veronese;
  c.ambient_dim = ambient_dim;
  c.twist = twist;
  c.description = "veronese(" + std::to_string(ambient_dim) + "," + std::to_string(twist) + ")";
  c.canonical_twist = -2;
  c.quotient = std::make_shared<GradedQuotient>(
      ring, std::move(gens), VeroneseParametrization{source, twist, images});
  if (ambient_dim == 1) {
    const auto profile = hilbert_profile(*c.quotient, 4);
    c.degree = profile.degree;
    c.genus = profile.genus;
    if (c.degree != twist || c.genus != 0) {
      throw AssumptionViolation("Hilbert data of the rational normal curve are off");
    }
  } else {
    c.degree = 1;
    for (int i = 0; i < ambient_dim; ++i) c.degree *= twist;
  }
  return c;
}

std::size_t bott(int r, int p, int q, int m) {
  if (r < 1 || p < 0 || p > r || q < 0 || q > r) return 0;
  if (q == 0 && m > p) return count(binom(m + r - p, m) * binom(m - 1, p));
  if (q == p && m == 0) return 1;
  if (q == r && m < p - r) return count(binom(-m + p, -m) * binom(-m - 1, r - p));
  return 0;
}

namespace {

// h^q of O(e) on P^1.
std::size_t p1_line_bundle(int q, long e) {
  if (q == 0) return count(e + 1);
  if (q == 1) return count(-e - 1);
  return 0;
}

}  // namespace

CohomologyValue h_line_bundle(const CurveModel& c, int q, int m) {
  CohomologyValue v{q, SheafTag::line_bundle, m, 0, Method::closed_form};
  if (c.family == Family::plane_curve) {
    const auto& r = *c.quotient;
    if (q == 0) v.dimension = m < 0 ? 0 : r.dim(m);
    if (q == 1) v.dimension = r.dim(c.plane_degree - 3 - m);
  } else if (c.is_curve()) {
    v.dimension = p1_line_bundle(q, static_cast<long>(c.twist) * m);
  } else {
    v.dimension = bott(c.ambient_dim, 0, q, c.twist * m);
  }
  return v;
}

CohomologyValue h_twisted_forms(const CurveModel& c, int q, int t) {
  CohomologyValue v{q, SheafTag::twisted_forms, t, 0, Method::closed_form};
  if (c.family == Family::plane_curve) {
    v.dimension = h_line_bundle(c, q, t + c.canonical_twist).dimension;
  } else if (c.is_curve()) {
    v.dimension = p1_line_bundle(q, static_cast<long>(c.twist) * t + c.canonical_twist);
  } else {
    v.dimension = bott(c.ambient_dim, 1, q, c.twist * t);
  }
  return v;
}

std::size_t h_forms(const CurveModel& c, int p, int q, int t) {
  if (p < 0) return 0;
  if (!c.is_curve()) return bott(c.ambient_dim, p, q, c.twist * t);
  if (p == 0) return h_line_bundle(c, q, t).dimension;
  if (p == 1) return h_twisted_forms(c, q, t).dimension;
  return 0;
}

namespace {

// Rank of the Čech differential C^p -> C^{p+1} of O(m) truncated at E.
std::size_t cech_rank(const GradedQuotient& r, int p, int m, int e) {
  const std::size_t n = r.num_vars();
  if (p < 0 || static_cast<std::size_t>(p) + 1 >= n) return 0;
  const int src_deg = m + e * (p + 1);
  const int dst_deg = m + e * (p + 2);
  const std::size_t src_dim = r.dim(src_deg);
  const std::size_t dst_dim = r.dim(dst_deg);
  if (src_dim == 0 || dst_dim == 0) return 0;
  const auto sources = subsets_of_size(n, static_cast<std::size_t>(p) + 1);
  const auto targets = subsets_of_size(n, static_cast<std::size_t>(p) + 2);
  std::map<Subset, std::size_t> target_index;
  for (std::size_t i = 0; i < targets.size(); ++i) target_index.emplace(targets[i], i);

  FractionFreeEchelon ech(targets.size() * dst_dim);
  for (const auto& src : sources) {
    for (std::size_t i = 0; i < src_dim; ++i) {
      SparseRow image;
      for (std::size_t k = 0; k < n; ++k) {
        if (std::binary_search(src.begin(), src.end(), k)) continue;
        Subset merged = src;
        merged.insert(std::upper_bound(merged.begin(), merged.end(), k), k);
        const auto pos = std::lower_bound(merged.begin(), merged.end(), k) - merged.begin();
        const int sign = pos % 2 == 0 ? 1 : -1;
        const std::size_t base = target_index.at(merged) * dst_dim;
        Exponents u(n, 0);
        u[k] = e;
        for (const auto& entry : r.multiply_standard(src_deg, i, u)) {
          image.push_back({base + entry.col, sign * entry.value});
        }
      }
      std::sort(image.begin(), image.end(),
                [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
      ech.insert(image);
    }
  }
  return ech.rank();
}

std::size_t cech_dim(const CurveModel& c, int q, int m, int e) {
  const auto& r = *c.quotient;
  const std::size_t n = r.num_vars();
  if (q < 0 || static_cast<std::size_t>(q) >= n) return 0;
  const std::size_t chains =
      static_cast<std::size_t>(binom(static_cast<long>(n), q + 1)) * r.dim(m + e * (q + 1));
  return chains - cech_rank(r, q, m, e) - cech_rank(r, q - 1, m, e);
}

}  // namespace

CechResult cech_oracle(const CurveModel& c, int q, int m, int exponent) {
  if (exponent < 1) throw InvalidInput("Čech truncation exponent must be >= 1");
  const std::size_t a = cech_dim(c, q, m, exponent);
  const std::size_t b = cech_dim(c, q, m, exponent + 1);
  return {a, a == b, exponent};
}

CechResult cech_scheduled(const CurveModel& c, int q, int m) {
  const int deg = c.family == Family::plane_curve ? c.plane_degree : c.twist;
  const int cap = 4 * (deg + std::abs(m));
  int e = std::max(1, std::abs(m));
  std::size_t prev = cech_dim(c, q, m, e);
  while (e + 1 <= cap) {
    const std::size_t next = cech_dim(c, q, m, e + 1);
    if (next == prev) return {prev, true, e};
    prev = next;
    ++e;
  }
  return {prev, false, e};
}

bool riemann_roch_check(const CurveModel& c, int m) {
  if (!c.is_curve()) throw InvalidInput("Riemann-Roch check needs a curve");
  const long h0 = static_cast<long>(h_line_bundle(c, 0, m).dimension);
  const long h1 = static_cast<long>(h_line_bundle(c, 1, m).dimension);
  return h0 - h1 == c.degree * m + 1 - c.genus;
}

}  // namespace kcone
