#include "kcone/cohomology.hpp"
#include "kcone/errors.hpp"
#include "kcone/graded_ring.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

using namespace kcone;

namespace {

RingPtr xyz() { return make_ring({"x", "y", "z"}); }

GradedQuotient plane(const std::string& f) {
  const auto r = xyz();
  return GradedQuotient(r, {parse_homogeneous(f, r)});
}

long choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  long v = 1;
  for (long i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

TEST(GradedRing, ConicPieces) {
  const auto q = plane("z^2-x*y");
  for (int t = 0; t <= 12; ++t) EXPECT_EQ(q.dim(t), std::size_t(2 * t + 1));
  EXPECT_EQ(q.dim(-1), 0u);
  const auto prof = hilbert_profile(q, 8);
  EXPECT_EQ(prof.degree, 2);
  EXPECT_EQ(prof.genus, 0);
}

TEST(GradedRing, PlaneCurveHilbertData) {
  for (int n = 2; n <= 6; ++n) {
    const auto q = plane("x^" + std::to_string(n) + "+y^" + std::to_string(n) + "+z^" + std::to_string(n));
    const auto prof = hilbert_profile(q, n + 2);
    EXPECT_EQ(prof.degree, n);
    EXPECT_EQ(prof.genus, (n - 1) * (n - 2) / 2);
  }
}

TEST(GradedRing, IdealMembershipAndNormalForm) {
  const auto r = xyz();
  const GradedQuotient q(r, {parse_homogeneous("z^2-x*y", r)});
  EXPECT_TRUE(q.ideal_contains(parse_homogeneous("x*z^2 - x^2*y", r)));
  EXPECT_FALSE(q.ideal_contains(parse_homogeneous("x*z^2", r)));
  // z^2 and xy have the same class.
  EXPECT_EQ(q.normal_form(parse_homogeneous("z^2", r)), q.normal_form(parse_homogeneous("x*y", r)));
}

TEST(GradedRing, SkewLinesPieces) {
  const auto r = make_ring({"x1", "x2", "y1", "y2"});
  std::vector<HPoly> g;
  for (const char* s : {"x1*y1", "x1*y2", "x2*y1", "x2*y2"}) g.push_back(parse_homogeneous(s, r));
  const GradedQuotient q(r, g);
  // Two disjoint lines: dim R_t = 2(t+1) for t >= 1.
  EXPECT_EQ(q.dim(0), 1u);
  for (int t = 1; t <= 6; ++t) EXPECT_EQ(q.dim(t), std::size_t(2 * (t + 1)));
}

TEST(GradedRing, SmoothnessCheck) {
  const auto r = xyz();
  EXPECT_TRUE(smoothness_check(parse_homogeneous("x^3+y^3+z^3", r)));
  EXPECT_FALSE(smoothness_check(parse_homogeneous("y^2*z-x^3", r)));
  const auto pts = find_singular_points(parse_homogeneous("y^2*z-x^3", r));
  ASSERT_FALSE(pts.empty());
}

TEST(GradedRing, SaturationOfAVertexComponent) {
  // (x^2, xy, xz) = (x) cap (x^2, y, z): saturating removes the embedded point.
  const auto r = xyz();
  const GradedQuotient q(r, {parse_homogeneous("x^2", r), parse_homogeneous("x*y", r),
                             parse_homogeneous("x*z", r)});
  for (int t = 1; t <= 5; ++t) {
    EXPECT_EQ(saturated_dim(q, t), monomial_count(3, t - 1)) << "t = " << t;
  }
}

TEST(GradedRingProperty, HilbertIdentityOnRandomCurves) {
  testgen::Gen g(31);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = g.integer(2, 5);
    const auto r = xyz();
    const GradedQuotient q(r, {parse_homogeneous(g.perturbed_fermat(n), r)});
    for (int t = 0; t <= 3 * n + 3; ++t) {
      const std::size_t ideal = bareiss_rank(q.ideal_degree_piece(t));
      EXPECT_EQ(long(ideal + q.dim(t)), choose(t + 2, 2));
      EXPECT_EQ(long(ideal), choose(t - n + 2, 2));  // I_t = F * S_{t-n}
    }
  }
}

TEST(GradedRingProperty, NormalFormIsIdempotentAndLinear) {
  testgen::Gen g(32);
  const auto r = xyz();
  const GradedQuotient q(r, {parse_homogeneous("x^4+y^4+z^4-x*y*z^2", r)});
  for (int trial = 0; trial < 20; ++trial) {
    const int t = g.integer(1, 7);
    const auto monos = monomials_of_degree(3, t);
    TermMap a, b;
    for (int k = 0; k < 3; ++k) {
      a[monos[g.integer(0, int(monos.size()) - 1)]] += g.rational();
      b[monos[g.integer(0, int(monos.size()) - 1)]] += g.rational();
    }
    std::erase_if(a, [](const auto& e) { return sgn(e.second) == 0; });
    std::erase_if(b, [](const auto& e) { return sgn(e.second) == 0; });
    const HPoly f = a.empty() ? HPoly(r, t) : HPoly(r, a);
    const HPoly h = b.empty() ? HPoly(r, t) : HPoly(r, b);
    const Vector nf = q.normal_form(f);
    // Rebuild the representative from standard monomials and reduce again.
    TermMap rep;
    const auto& std_monos = q.piece(t).standard;
    for (std::size_t i = 0; i < nf.size(); ++i) {
      if (sgn(nf[i]) != 0) rep[std_monos[i]] = nf[i];
    }
    const HPoly back = rep.empty() ? HPoly(r, t) : HPoly(r, rep);
    EXPECT_EQ(q.normal_form(back), nf);
    EXPECT_TRUE(q.ideal_contains(f - back));
    const Vector sum = q.normal_form(f + h);
    const Vector nh = q.normal_form(h);
    for (std::size_t i = 0; i < sum.size(); ++i) EXPECT_EQ(sum[i], nf[i] + nh[i]);
  }
}

TEST(GradedRingProperty, SmoothnessInvariantUnderLinearChange) {
  testgen::Gen g(33);
  const auto r = xyz();
  for (const char* f : {"x^3+y^3+z^3", "y^2*z-x^3", "x^4+y^4+z^4", "x^2*y^2-z^4", "z^2-x*y"}) {
    const HPoly p = parse_homogeneous(f, r);
    const bool smooth = smoothness_check(p);
    for (int trial = 0; trial < 3; ++trial) {
      EXPECT_EQ(smoothness_check(p.linear_substitution(g.unimodular3())), smooth) << f;
    }
  }
}

TEST(GradedRingProperty, HilbertDataInvariantUnderLinearChange) {
  testgen::Gen g(34);
  const auto r = xyz();
  const HPoly p = parse_homogeneous("x^3*y+y^3*z+z^3*x", r);
  for (int trial = 0; trial < 3; ++trial) {
    const GradedQuotient q(r, {p.linear_substitution(g.unimodular3())});
    for (int t = 0; t <= 8; ++t) EXPECT_EQ(q.dim(t), plane("x^3*y+y^3*z+z^3*x").dim(t));
  }
}

TEST(GradedRingProperty, ToricRouteMatchesRowReduction) {
  for (auto [r0, d] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 2}}) {
    const CurveModel v = CurveModel::veronese(r0, d);
    const GradedQuotient& toric = *v.quotient;
    ASSERT_TRUE(toric.has_parametrization());
    const GradedQuotient linear(toric.ring_ptr(), toric.generators());
    for (int t = 0; t <= (r0 == 1 ? 5 : 3); ++t) {
      EXPECT_EQ(toric.dim(t), linear.dim(t)) << "veronese(" << r0 << "," << d << ") t = " << t;
      EXPECT_EQ(toric.piece(t).standard, linear.piece(t).standard);
      EXPECT_EQ(long(toric.dim(t)), choose(d * t + r0, r0));
      // Multiplication agrees between routes.
      for (std::size_t i = 0; i < toric.dim(t); ++i) {
        Exponents u(toric.num_vars(), 0);
        u[i % toric.num_vars()] = 1;
        EXPECT_EQ(toric.multiply_standard(t, i, u), linear.multiply_standard(t, i, u));
      }
    }
  }
}
