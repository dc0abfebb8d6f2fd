#pragma once

// Standard-graded quotients R = S/I of S = Q[x_0..x_N] by a homogeneous ideal,
// handled one degree at a time by row reduction (no Groebner bases: every
// question asked here is degree-bounded).

#include "kcone/exact_matrix.hpp"
#include "kcone/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace kcone {

// Everything known about one degree t of R.
struct DegreePiece {
  int degree = 0;
  std::vector<Exponents> standard;               // standard monomials, decreasing grevlex
  std::map<Exponents, std::size_t> standard_index;

  // Filled only by the row-reduction route.
  std::vector<Exponents> monomials;              // basis of S_t, decreasing grevlex
  std::map<Exponents, std::size_t> index;        // monomial -> column
  ReducedRowSpace ideal;                         // RREF of I_t in S_t coordinates
  std::vector<SparseRow> monomial_normal_form;   // per column: coordinates over `standard`

  std::size_t quotient_dim() const { return standard.size(); }
  const Exponents& standard_monomial(std::size_t i) const { return standard[i]; }
};

// Monomial parametrization x_i -> v_i of a Veronese embedding: the v_i are all
// monomials of one degree in a smaller set of variables. The ideal is then the
// toric ideal of the map, and the standard monomial of a fiber is its
// grevlex-smallest member, found greedily.
struct VeroneseParametrization {
  std::size_t source_vars = 0;       // r0 + 1
  int twist = 0;                     // d
  std::vector<Exponents> images;     // v_i, one per ring variable
};

struct QuotientBasis {
  std::size_t dimension = 0;
  std::vector<Exponents> monomials;
};

struct HilbertProfile {
  std::map<int, std::size_t> values;  // t -> dim R_t, 0 <= t <= t_max
  int stable_from = 0;                // first degree on the stabilized line
  long degree = 0;                    // slope d
  long genus = 0;                     // 1 - intercept

  long polynomial(int t) const { return degree * t + 1 - genus; }
};

class GradedQuotient {
 public:
  // Generators must be homogeneous forms over `ring`; zero generators are dropped.
  GradedQuotient(RingPtr ring, std::vector<HPoly> generators);

  // Same quotient, but degree pieces are computed from the parametrization
  // instead of by row reduction. The generators must generate its toric ideal.
  GradedQuotient(RingPtr ring, std::vector<HPoly> generators, VeroneseParametrization param);

  GradedQuotient(const GradedQuotient&) = delete;
  GradedQuotient& operator=(const GradedQuotient&) = delete;

  const RingContext& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::size_t num_vars() const { return ring_->size(); }
  const std::vector<HPoly>& generators() const { return generators_; }

  // Memoized per degree; safe to call concurrently. Empty piece for t < 0.
  const DegreePiece& piece(int t) const;

  // Rows m * g_i for all generators and monomials m of degree t - deg g_i,
  // columns indexed by the monomial basis of S_t.
  ExactMatrix ideal_degree_piece(int t) const;

  QuotientBasis quotient_basis(int t) const;
  std::size_t dim(int t) const { return t < 0 ? 0 : piece(t).quotient_dim(); }

  // Coordinates of f over the standard monomials of R_{deg f}.
  Vector normal_form(const HPoly& f) const;
  // Same, for a single monomial; sparse.
  SparseRow monomial_normal_form(const Exponents& e) const;

  // Normal form of (standard monomial i of degree t) * (monomial u).
  SparseRow multiply_standard(int t, std::size_t i, const Exponents& u) const;

  bool has_parametrization() const { return param_.has_value(); }

  bool ideal_contains(const HPoly& f) const;

 private:
  std::unique_ptr<DegreePiece> build_piece(int t) const;
  std::unique_ptr<DegreePiece> build_toric_piece(int t) const;
  Exponents toric_representative(const Exponents& e) const;

  struct Slot {
    std::once_flag once;
    std::unique_ptr<DegreePiece> value;
  };

  RingPtr ring_;
  std::vector<HPoly> generators_;
  std::optional<VeroneseParametrization> param_;
  mutable std::mutex slots_mutex_;
  mutable std::map<int, std::unique_ptr<Slot>> slots_;
  DegreePiece empty_piece_;
};

// Interpolates d and g from dim R_t on 0..t_max. Requires the values to sit on
// one line for at least three consecutive degrees ending at t_max; throws
// StabilizationError otherwise.
HilbertProfile hilbert_profile(const GradedQuotient& q, int t_max);

// Smooth plane curve test: the ideal (F, F_x, F_y, F_z) must fill S in degree
// max(0, 3(n-1) - 2). F must be a nonzero form of degree >= 2 in 3 variables.
bool smoothness_check(const HPoly& f);

// Small rational points (coordinates in [-bound, bound]) where F and all its
// partials vanish; used only for diagnostics.
std::vector<Exponents> find_singular_points(const HPoly& f, int bound = 2);

// dim { f in S_t : x_j^E f in I for every j }.
std::size_t saturation_piece(const GradedQuotient& q, int t, int exponent);

// Iterates saturation_piece in E until two consecutive values agree and
// returns dim (I^sat)_t. Throws StabilizationError past max_exponent.
std::size_t saturated_dim(const GradedQuotient& q, int t, int max_exponent = 32);

// Builds the map u -> normal form of (u * monomial) from R_t into R_{t+deg},
// as a (dim R_{t+deg}) x (dim R_t) matrix.
ExactMatrix multiplication_matrix(const GradedQuotient& q, int t, const Exponents& monomial);

}  // namespace kcone
