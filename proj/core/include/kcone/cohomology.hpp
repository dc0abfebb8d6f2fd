#pragma once

// Cohomology of twisted line bundles and twisted 1-forms on the supported
// projective models, by closed forms, plus the truncated Čech oracle used to
// cross-check them.
//
// Twists are always in units of O_X(1) of the projective embedding. For the
// Veronese family the conversion to degrees on P^{r0} (multiply by d) happens
// here and nowhere else.

#include "kcone/graded_ring.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace kcone {

enum class Family { plane_curve, veronese };

struct CurveModel {
  Family family = Family::plane_curve;
  std::string description;
  std::string polynomial;  // plane curves only, as given
  int plane_degree = 0;    // n, plane curves only
  int ambient_dim = 1;     // r0 of P^{r0}; 1 for every curve
  int twist = 1;           // Veronese d
  std::shared_ptr<const GradedQuotient> quotient;
  long degree = 0;         // d of X in its embedding
  long genus = 0;
  // Plane curve: Omega^1_X = O_X(canonical_twist), normally n - 3.
  // Veronese: Omega^1_{P^1} = O_{P^1}(canonical_twist), normally -2.
  int canonical_twist = 0;

  bool is_curve() const { return ambient_dim == 1; }
  // Plane conic or the degree-2 embedding of P^1.
  bool is_conic() const { return is_curve() && degree == 2 && genus == 0; }

  // Parses F over Q[x,y,z] and validates: degree >= 2, smooth (InvalidInput
  // naming a singular point when a small one exists), Hilbert data equal to
  // (n, (n-1)(n-2)/2).
  static CurveModel plane_curve(std::string_view polynomial);

  // Image of P^{r0} under the degree-d Veronese map, in variables x0..xN with
  // N + 1 = binom(r0 + d, d). Requires r0 >= 1, d >= 1.
  static CurveModel veronese(int ambient_dim, int twist);
};

enum class SheafTag { line_bundle, twisted_forms };
enum class Method { closed_form, cech_oracle };

struct CohomologyValue {
  int q = 0;
  SheafTag sheaf = SheafTag::line_bundle;
  int twist = 0;
  std::size_t dimension = 0;
  Method method = Method::closed_form;
};

// h^q(X, O_X(m)).
CohomologyValue h_line_bundle(const CurveModel& c, int q, int m);

// h^q(X, Omega^1_{X/Q}(t)).
CohomologyValue h_twisted_forms(const CurveModel& c, int q, int t);

// h^q(X, Omega^p_X(t)) for any p: p = 0 is O_X, and on a curve Omega^p = 0 for p >= 2.
std::size_t h_forms(const CurveModel& c, int p, int q, int t);

// h^q(P^{r0}, Omega^p(m)).
std::size_t bott(int ambient_dim, int p, int q, int m);

struct CechResult {
  std::size_t dimension = 0;
  bool stabilized = false;
  int exponent = 0;  // E of the reported value
};

// H^q of the Čech complex of O_X(m) on the cover by the D_+(x_i), truncated to
// denominators (prod_{j in J} x_j)^E. Compares E with E + 1.
CechResult cech_oracle(const CurveModel& c, int q, int m, int exponent);

// Runs cech_oracle from E = max(1, |m|) upward until E and E + 1 agree, up to
// E = 4(deg + |m|). stabilized is false when the cap is hit.
CechResult cech_scheduled(const CurveModel& c, int q, int m);

// h^0(O(m)) - h^1(O(m)) == d*m + 1 - g. Curves only.
bool riemann_roch_check(const CurveModel& c, int m);

}  // namespace kcone
