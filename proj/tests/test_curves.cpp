#include <gtest/gtest.h>

#include <random>

#include "mulnpoly/curves.hpp"
#include "mulnpoly/generic_fast.hpp"
#include "mulnpoly/verify.hpp"

using namespace mulnpoly;

namespace {

WeierstrassCurve curve(const char* ring, std::vector<std::string> a) {
  return WeierstrassCurve::parse(RingDescriptor::parse(ring), a);
}

ProjPoint point(const WeierstrassCurve& c, std::vector<std::string> xyz) { return parse_point(c.ring(), xyz); }

WeierstrassCurve z16() { return curve("zmod:16", {"0", "0", "0", "0", "1"}); }
WeierstrassCurve f5() { return curve("zmod:5", {"0", "0", "0", "0", "1"}); }

}  // namespace

TEST(Curve, Contains) {
  auto c = z16();
  EXPECT_TRUE(curve_contains(c, point(c, {"2", "1", "8"})));
  EXPECT_TRUE(curve_contains(c, point(c, {"0", "1", "0"})));
  EXPECT_FALSE(curve_contains(c, point(c, {"1", "1", "1"})));
  auto g = curve("zmod:7", {"1", "2", "3", "4", "5"});
  EXPECT_TRUE(curve_contains(g, point(g, {"0", "1", "0"})));
}

TEST(Curve, SmoothPoints) {
  auto c = z16();
  EXPECT_TRUE(is_smooth_point(c, point(c, {"2", "1", "8"})));
  auto g = c.gradient(RingElement(c.ring(), 2L), RingElement(c.ring(), 1L), RingElement(c.ring(), 8L));
  EXPECT_EQ(g[2], RingElement(c.ring(), 1L));
  EXPECT_TRUE(is_smooth_point(c, point(c, {"0", "1", "0"})));
  auto cusp = curve("zmod:5", {"0", "0", "0", "0", "0"});
  EXPECT_FALSE(is_smooth_point(cusp, point(cusp, {"0", "0", "1"})));
}

TEST(Curve, Discriminant) {
  auto q = curve("qq", {"0", "0", "0", "0", "1"});
  EXPECT_EQ(curve_discriminant(q), RingElement(q.ring(), -432L));
  EXPECT_TRUE(is_smooth_curve(q));
  auto c = z16();
  EXPECT_TRUE(curve_discriminant(c).is_zero());
  EXPECT_FALSE(is_smooth_curve(c));
  EXPECT_TRUE(is_smooth_point(c, point(c, {"2", "1", "8"})));
  for (const char* r : {"zz", "qq", "zmod:9"}) EXPECT_TRUE(curve_discriminant(curve(r, {"0", "0", "0", "0", "0"})).is_zero());
}

TEST(CurveOracle, DiscriminantMatchesSingularPointScan) {
  // Over F_p the discriminant vanishes exactly when some affine point is singular.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(0, 6);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> a;
    for (int k = 0; k < 5; ++k) a.push_back(std::to_string(d(rng)));
    auto c = curve("zmod:7", a);
    bool singular = false;
    for (long x = 0; x < 7 && !singular; ++x)
      for (long y = 0; y < 7 && !singular; ++y) {
        ProjPoint p{RingElement(c.ring(), x), RingElement(c.ring(), y), RingElement::one(c.ring())};
        singular = curve_contains(c, p) && !is_smooth_point(c, p);
      }
    // Singular points of a cubic over F_7 are F_7-rational.
    EXPECT_EQ(singular, !is_smooth_curve(c));
  }
}

TEST(Oracle, F5Examples) {
  auto c = f5();
  auto p = point(c, {"0", "1", "1"});
  ProjPoint two = oracle_add(c, p, p);
  EXPECT_TRUE(projective_equal(two, point(c, {"0", "4", "1"})));
  EXPECT_TRUE(projective_equal(oracle_add(c, two, p), zero_point(c.ring())));
  auto q = point(c, {"2", "2", "1"});
  EXPECT_TRUE(projective_equal(oracle_add(c, q, q), point(c, {"0", "4", "1"})));
}

TEST(Oracle, Rejections) {
  auto c = z16();
  auto p = point(c, {"2", "1", "8"});
  EXPECT_THROW(oracle_add(c, p, p), NonField);
  auto f = f5();
  EXPECT_THROW(oracle_add(f, point(f, {"1", "1", "1"}), point(f, {"0", "1", "1"})), NotOnCurve);
  auto cusp = curve("zmod:5", {"0", "0", "0", "0", "0"});
  EXPECT_THROW(oracle_add(cusp, point(cusp, {"0", "0", "1"}), point(cusp, {"1", "1", "1"})), SingularPoint);
}

TEST(OracleProperty, GroupLaw) {
  std::mt19937_64 rng(23);
  for (std::uint64_t p : {7u, 11u, 13u}) {
    Fp f(p);
    for (const auto& a : random_smooth_curves(p, 5, rng)) {
      FieldCurve<Fp> fc{f, a};
      auto pts = fp_points(f, a);
      const long order = static_cast<long>(pts.size());
      for (std::size_t i = 0; i < pts.size(); i += 3) {
        EXPECT_TRUE(fc.is_zero(fc.mul(pts[i], order)));
        EXPECT_TRUE(fc.is_zero(fc.add(pts[i], fc.neg(pts[i]))));
        for (std::size_t j = 0; j < pts.size(); j += 5) {
          auto s = fc.add(pts[i], pts[j]);
          EXPECT_TRUE(fc.same(s, fc.add(pts[j], pts[i])));
          EXPECT_EQ(fp_weierstrass(f, a, fc.affine(s).x, fc.affine(s).y) == 0 || fc.is_zero(s), true);
          auto k = pts[(i + j) % pts.size()];
          EXPECT_TRUE(fc.same(fc.add(fc.add(pts[i], pts[j]), k), fc.add(pts[i], fc.add(pts[j], k))));
        }
      }
    }
  }
}

TEST(MulPoint, Z16Chain) {
  auto c = z16();
  ProjPoint p = point(c, {"2", "1", "8"});
  const char* expected[][3] = {{"4", "1", "0"}, {"8", "1", "0"}, {"0", "1", "0"}};
  for (auto& e : expected) {
    p = mul_point(c, p, 2);
    EXPECT_TRUE(projective_equal(p, point(c, {e[0], e[1], e[2]}))) << to_string(p);
  }
  EXPECT_TRUE(projective_equal(mul_point(c, point(c, {"2", "1", "8"}), 8), zero_point(c.ring())));
}

TEST(MulPoint, OneIsIdentity) {
  auto c = z16();
  auto p = point(c, {"2", "1", "8"});
  EXPECT_TRUE(projective_equal(mul_point(c, p, 1), p));
  auto g = curve("zmod:1009", {"1", "2", "3", "4", "5"});
  auto z = zero_point(g.ring());
  EXPECT_TRUE(projective_equal(mul_point(g, z, 7), z));
}

TEST(MulPoint, F5AgreesWithOracle) {
  auto c = f5();
  auto p = point(c, {"2", "2", "1"});
  EXPECT_TRUE(projective_equal(mul_point(c, p, 2), oracle_add(c, p, p)));
  EXPECT_TRUE(projective_equal(mul_point(c, p, 2), point(c, {"0", "4", "1"})));
}

TEST(MulPoint, Rejections) {
  auto c = z16();
  EXPECT_THROW(mul_point(c, point(c, {"1", "1", "1"}), 2), NotOnCurve);
  auto cusp = curve("zmod:5", {"0", "0", "0", "0", "0"});
  EXPECT_THROW(mul_point(cusp, point(cusp, {"0", "0", "1"}), 2), SingularPoint);
  auto other = curve("zmod:15", {"0", "0", "0", "0", "1"});
  EXPECT_THROW(mul_point(c, point(other, {"0", "1", "0"}), 2), UsageError);
}

TEST(MulPointProperty, CompositionAndOracle) {
  std::mt19937_64 rng(29);
  for (const char* ring : {"zmod:1009", "zmod:101"}) {
    RingDescriptor r = RingDescriptor::parse(ring);
    std::uint64_t p = r.modulus().get_ui();
    for (const auto& a : random_smooth_curves(p, 2, rng)) {
      WeierstrassCurve c = to_curve(p, a);
      auto pts = sample_points(fp_points(Fp(p), a), 4, rng);
      LadderTripleSource source;
      for (const auto& fp : pts) {
        ProjPoint pt = to_point(r, fp);
        for (long m = -3; m <= 3; ++m)
          for (long n = -3; n <= 3; ++n) {
            ProjPoint lhs = mul_point(c, mul_point(c, pt, n, source), m, source);
            EXPECT_TRUE(projective_equal(lhs, mul_point(c, pt, m * n, source)));
          }
        for (long n = -6; n <= 6; ++n) EXPECT_TRUE(projective_equal(mul_point(c, pt, n, source), oracle_mul(c, pt, n)));
      }
    }
  }
}

TEST(MulPoint, AffineFormulaAgrees) {
  auto c = curve("zmod:1009", {"1", "2", "3", "4", "5"});
  std::mt19937_64 rng(31);
  auto pts = fp_points(Fp(1009), {1, 2, 3, 4, 5});
  for (int i = 0; i < 5; ++i) {
    ProjPoint p = to_point(c.ring(), pts[1 + rng() % (pts.size() - 1)]);
    for (long n = -5; n <= 5; ++n) EXPECT_TRUE(projective_equal(mul_point_affine(c, p, n), mul_point(c, p, n)));
  }
}

TEST(MulPoint, GenericTripleSourceAgrees) {
  auto c = z16();
  GenericTripleSource gen([](long n) { return build_triple(n); });
  auto p = point(c, {"2", "1", "8"});
  for (long n = -3; n <= 3; ++n) EXPECT_TRUE(projective_equal(mul_point(c, p, n, gen), mul_point(c, p, n)));
}

TEST(ProjectiveEqual, UnitScaling) {
  auto c = z16();
  EXPECT_TRUE(projective_equal(point(c, {"2", "1", "8"}), point(c, {"6", "3", "8"})));
  EXPECT_FALSE(projective_equal(point(c, {"2", "1", "8"}), point(c, {"4", "2", "0"})));
  EXPECT_FALSE(projective_equal(point(c, {"2", "1", "8"}), point(c, {"2", "1", "0"})));
}

TEST(Negate, MatchesMinusOne) {
  auto c = curve("zmod:1009", {"1", "2", "3", "4", "5"});
  auto pts = fp_points(Fp(1009), {1, 2, 3, 4, 5});
  ProjPoint p = to_point(c.ring(), pts[5]);
  EXPECT_TRUE(projective_equal(mul_point(c, p, -1), negate(c, p)));
}

TEST(Embedding, F5Examples) {
  auto c = f5();
  auto p = point(c, {"0", "1", "1"});
  EXPECT_TRUE(is_Zn_embedding(c, p, 3));
  EXPECT_FALSE(is_Zn_embedding(c, p, 6));
  EXPECT_FALSE(is_Zn_embedding(c, zero_point(c.ring()), 2));
  EXPECT_FALSE(is_Zn_embedding(c, zero_point(c.ring()), 5));
  EXPECT_THROW(is_Zn_embedding(z16(), point(z16(), {"2", "1", "8"}), 2), UsageError);
  EXPECT_THROW(is_Zn_embedding(c, p, 1), UsageError);
}

TEST(EmbeddingProperty, MatchesExactOrderOverFields) {
  std::mt19937_64 rng(37);
  for (std::uint64_t p : {7u, 11u, 13u}) {
    Fp f(p);
    for (const auto& a : random_smooth_curves(p, 4, rng)) {
      WeierstrassCurve c = to_curve(p, a);
      FieldCurve<Fp> fc{f, a};
      for (const auto& pt : fp_points(f, a))
        for (long n = 2; n <= 8; ++n)
          EXPECT_EQ(is_Zn_embedding(c, to_point(c.ring(), pt), n), pt.z != 0 && fp_exact_order(fc, pt, n));
    }
  }
}

TEST(CurveJson, RoundTrip) {
  auto c = z16();
  auto p = point(c, {"2", "1", "8"});
  auto [c2, p2] = curve_from_json(Json::parse(to_json(c, p).dump()));
  EXPECT_TRUE(c2 == c);
  ASSERT_TRUE(p2.has_value());
  EXPECT_TRUE(projective_equal(*p2, p));
  EXPECT_EQ(to_string(normalize(p)), "(2 : 1 : 8)");
  EXPECT_EQ(to_string(normalize(point(c, {"0", "3", "0"}))), "(0 : 1 : 0)");
}

TEST(CurveProperty, TwoGeneratorTestAgreesOnAffinePoints) {
  std::mt19937_64 rng(29);
  for (const char* ring : {"zmod:7", "zmod:9", "zmod:16", "zmod:15"}) {
    RingDescriptor r = RingDescriptor::parse(ring);
    long m = std::stol(std::string(ring).substr(5));
    std::uniform_int_distribution<long> d(0, m - 1);
    for (int i = 0; i < 40; ++i) {
      std::vector<std::string> a;
      for (int k = 0; k < 5; ++k) a.push_back(std::to_string(d(rng)));
      auto c = curve(ring, a);
      for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y) {
          ProjPoint p{RingElement(r, x), RingElement(r, y), RingElement::one(r)};
          if (!curve_contains(c, p)) continue;
          EXPECT_EQ(is_smooth_point(c, p), is_smooth_affine_point(c, p.x, p.y)) << ring << " " << x << "," << y;
        }
    }
  }
}
