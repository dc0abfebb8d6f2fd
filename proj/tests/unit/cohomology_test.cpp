#include "kcone/cohomology.hpp"
#include "kcone/errors.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

using namespace kcone;

namespace {

long choose(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long v = 1;
  for (long i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

TEST(Cohomology, PlaneCurveModel) {
  const CurveModel c = CurveModel::plane_curve("x^4+y^4+z^4");
  EXPECT_EQ(c.degree, 4);
  EXPECT_EQ(c.genus, 3);
  EXPECT_EQ(c.canonical_twist, 1);
  EXPECT_TRUE(c.is_curve());
  EXPECT_FALSE(c.is_conic());
  EXPECT_TRUE(CurveModel::plane_curve("z^2-x*y").is_conic());
}

TEST(Cohomology, RejectsBadCurves) {
  EXPECT_THROW(CurveModel::plane_curve("x+y+z"), InvalidInput);
  EXPECT_THROW(CurveModel::plane_curve("x^2+x"), InvalidInput);
  EXPECT_THROW(CurveModel::plane_curve("x^2+"), ParseError);
  try {
    CurveModel::plane_curve("y^2*z-x^3-x^2*z");
    FAIL() << "nodal cubic accepted";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("singular"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("(0:0:1)"), std::string::npos);
  }
  EXPECT_THROW(CurveModel::veronese(0, 2), InvalidInput);
  EXPECT_THROW(CurveModel::veronese(1, 0), InvalidInput);
}

TEST(Cohomology, ConicValues) {
  const CurveModel c = CurveModel::plane_curve("z^2-x*y");
  for (int t = 1; t <= 10; ++t) {
    EXPECT_EQ(h_line_bundle(c, 0, t).dimension, std::size_t(2 * t + 1));
    EXPECT_EQ(h_twisted_forms(c, 0, t).dimension, std::size_t(2 * t - 1));
    EXPECT_EQ(h_twisted_forms(c, 1, t).dimension, 0u);
  }
  EXPECT_EQ(h_twisted_forms(c, 1, 0).dimension, 1u);  // H^1(Omega^1) = k
  EXPECT_EQ(h_line_bundle(c, 1, -1).dimension, 1u);   // O(-2) on P^1
}

TEST(Cohomology, VeroneseMatchesProjectiveLine) {
  for (int d = 1; d <= 5; ++d) {
    const CurveModel v = CurveModel::veronese(1, d);
    EXPECT_EQ(v.degree, d);
    EXPECT_EQ(v.genus, 0);
    for (int m = -4; m <= 4; ++m) {
      const long e = long(d) * m;
      EXPECT_EQ(long(h_line_bundle(v, 0, m).dimension), std::max(0L, e + 1));
      EXPECT_EQ(long(h_line_bundle(v, 1, m).dimension), std::max(0L, -e - 1));
      EXPECT_EQ(long(h_twisted_forms(v, 0, m).dimension), std::max(0L, e - 1));
    }
  }
}

TEST(Cohomology, BottFormula) {
  // P^2: h^0(Omega^1(2)) = 3, h^1(Omega^1) = 1, h^0(Omega^2(3)) = 1.
  EXPECT_EQ(bott(2, 1, 0, 2), 3u);
  EXPECT_EQ(bott(2, 1, 1, 0), 1u);
  EXPECT_EQ(bott(2, 2, 0, 3), 1u);
  EXPECT_EQ(bott(2, 1, 0, 1), 0u);
  EXPECT_EQ(bott(3, 0, 0, 2), 10u);
  EXPECT_EQ(bott(3, 0, 3, -4), 1u);
  EXPECT_EQ(bott(3, 2, 2, 0), 1u);
}

TEST(CohomologyProperty, BottEulerCharacteristics) {
  // chi(P^r, Omega^p(m)) = sum_q (-1)^q h^q, checked against the Euler sequence
  // formula chi(Omega^p(m)) = sum_i (-1)^(p-i) binom(r+1, i) binom(m - i + r, r) for i <= p.
  for (int r = 1; r <= 4; ++r) {
    for (int p = 0; p <= r; ++p) {
      for (int m = -6; m <= 6; ++m) {
        long chi = 0;
        for (int q = 0; q <= r; ++q) chi += (q % 2 ? -1 : 1) * long(bott(r, p, q, m));
        long want = 0;
        for (int i = 0; i <= p; ++i) {
          // chi(O(k)) on P^r is the Hilbert polynomial binom(k + r, r) as a polynomial.
          const long k = m - i;
          long h = 1;
          for (int s = 1; s <= r; ++s) h = h * (k + s);
          for (int s = 1; s <= r; ++s) h /= s;
          want += ((p - i) % 2 ? -1 : 1) * choose(r + 1, i) * h;
        }
        EXPECT_EQ(chi, want) << "r = " << r << ", p = " << p << ", m = " << m;
      }
    }
  }
}

TEST(CohomologyProperty, RiemannRochAndSerreDuality) {
  for (const char* f : {"z^2-x*y", "x^3+y^3+z^3", "x^4+y^4+z^4", "x^3*y+y^3*z+z^3*x", "x^5+y^5+z^5"}) {
    const CurveModel c = CurveModel::plane_curve(f);
    for (int m = -8; m <= 10; ++m) {
      EXPECT_TRUE(riemann_roch_check(c, m)) << f << " m = " << m;
      EXPECT_EQ(h_line_bundle(c, 1, m).dimension, h_twisted_forms(c, 0, -m).dimension)
          << f << " m = " << m;
    }
  }
}

TEST(CohomologyProperty, CechOracleMatchesClosedForms) {
  testgen::Gen g(51);
  std::vector<std::string> curves = {"z^2-x*y", "x^3+y^3+z^3", "x^3*y+y^3*z+z^3*x"};
  for (int k = 0; k < 3; ++k) {
    for (;;) {
      const std::string f = g.perturbed_fermat(g.integer(2, 4));
      try {
        CurveModel::plane_curve(f);
        curves.push_back(f);
        break;
      } catch (const InvalidInput&) {
      }
    }
  }
  for (const auto& f : curves) {
    const CurveModel c = CurveModel::plane_curve(f);
    for (int m = -4; m <= 5; ++m) {
      for (int q = 0; q <= 1; ++q) {
        const CechResult r = cech_scheduled(c, q, m);
        EXPECT_TRUE(r.stabilized) << f;
        EXPECT_EQ(r.dimension, h_line_bundle(c, q, m).dimension) << f << " q = " << q << " m = " << m;
      }
    }
  }
}
