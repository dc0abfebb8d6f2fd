#include "kcone/errors.hpp"
#include "kcone/polynomial.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

using namespace kcone;

namespace {

RingPtr xyz() { return make_ring({"x", "y", "z"}); }

std::size_t choose(std::size_t n, std::size_t k) {
  std::size_t v = 1;
  for (std::size_t i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

TEST(Polynomial, ParsesAndNormalizes) {
  const auto r = xyz();
  const HPoly f = parse_homogeneous("z^2 - x*y", r);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(f.term_count(), 2u);
  EXPECT_EQ(parse_homogeneous("(x+y)^2", r), parse_homogeneous("x^2 + 2*x*y + y^2", r));
  EXPECT_EQ(parse_homogeneous("2 x y - x y", r), parse_homogeneous("x*y", r));
  EXPECT_EQ(parse_homogeneous("1/2 x^2 + 2/4*x^2", r), parse_homogeneous("x^2", r));
  EXPECT_TRUE(parse_homogeneous("x*y - y*x", r).is_zero());
}

TEST(Polynomial, RejectsNonHomogeneous) {
  EXPECT_THROW(parse_homogeneous("x^2+x", xyz()), InvalidInput);
}

TEST(Polynomial, ParseErrorsCarryPositions) {
  try {
    parse_homogeneous("x^2 + w", xyz());
    FAIL() << "unknown variable accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  EXPECT_THROW(parse_homogeneous("x^", xyz()), ParseError);
  EXPECT_THROW(parse_homogeneous("(x+y", xyz()), ParseError);
  EXPECT_THROW(parse_homogeneous("x + * y", xyz()), ParseError);
  EXPECT_THROW(parse_homogeneous("x/2", xyz()), ParseError);
  EXPECT_THROW(parse_homogeneous("1/0*x", xyz()), ParseError);
  EXPECT_THROW(parse_homogeneous("", xyz()), ParseError);
}

TEST(Polynomial, RingValidation) {
  EXPECT_THROW(make_ring({"x"}), InvalidInput);
  EXPECT_THROW(make_ring({"x", "x"}), InvalidInput);
}

TEST(Polynomial, Derivatives) {
  const auto r = xyz();
  const HPoly f = parse_homogeneous("x^3 + 2*x*y*z", r);
  EXPECT_EQ(f.derivative(0), parse_homogeneous("3*x^2 + 2*y*z", r));
  EXPECT_EQ(f.derivative(2), parse_homogeneous("2*x*y", r));
}

TEST(Polynomial, GrevlexOrder) {
  // Degree 2 in three variables, decreasing: x^2 > xy > y^2 > xz > yz > z^2.
  const auto m = monomials_of_degree(3, 2);
  const std::vector<Exponents> want = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                                       {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  EXPECT_EQ(m, want);
}

TEST(PolynomialProperty, MonomialCountsMatchStarsAndBars) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t <= 7; ++t) {
      EXPECT_EQ(monomials_of_degree(n, t).size(), choose(n + t - 1, t));
      EXPECT_EQ(monomial_count(n, t), choose(n + t - 1, t));
    }
  }
  EXPECT_EQ(monomial_count(3, -1), 0u);
}

TEST(PolynomialProperty, GrevlexIsAStrictTotalOrder) {
  const auto m = monomials_of_degree(4, 3);
  for (std::size_t i = 0; i + 1 < m.size(); ++i) EXPECT_GT(grevlex_compare(m[i], m[i + 1]), 0);
  for (const auto& a : m) EXPECT_EQ(grevlex_compare(a, a), 0);
}

TEST(PolynomialProperty, ProductRuleForDerivatives) {
  testgen::Gen g(11);
  const auto r = xyz();
  for (int trial = 0; trial < 20; ++trial) {
    const HPoly f = parse_homogeneous(g.perturbed_fermat(g.integer(1, 3)), r);
    const HPoly h = parse_homogeneous(g.perturbed_fermat(g.integer(1, 3)), r);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ((f * h).derivative(k), f.derivative(k) * h + f * h.derivative(k));
    }
  }
}

TEST(PolynomialProperty, LinearSubstitutionRoundTrip) {
  testgen::Gen g(12);
  const auto r = xyz();
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = g.unimodular3();
    // Inverse by Cramer's rule with exact scalars.
    auto det2 = [&](int a, int b, int c, int d) -> Scalar {
      return m[a][c] * m[b][d] - m[a][d] * m[b][c];
    };
    const Scalar det = m[0][0] * det2(1, 2, 1, 2) - m[0][1] * det2(1, 2, 0, 2) + m[0][2] * det2(1, 2, 0, 1);
    ASSERT_NE(sgn(det), 0);
    std::vector<std::vector<Scalar>> inv(3, std::vector<Scalar>(3));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        int rr[2], cc[2];
        for (int a = 0, k = 0; a < 3; ++a) if (a != j) rr[k++] = a;
        for (int a = 0, k = 0; a < 3; ++a) if (a != i) cc[k++] = a;
        const Scalar minor = det2(rr[0], rr[1], cc[0], cc[1]);
        inv[i][j] = ((i + j) % 2 ? -minor : minor) / det;
      }
    }
    const HPoly f = parse_homogeneous(g.perturbed_fermat(3), r);
    EXPECT_EQ(f.linear_substitution(m).linear_substitution(inv), f);
  }
}
