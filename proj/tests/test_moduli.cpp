#include <gtest/gtest.h>

#include <random>

#include "mulnpoly/moduli.hpp"
#include "mulnpoly/verify.hpp"

using namespace mulnpoly;

namespace {

MPoly ST(const char* s) { return parse_mpoly(s, var_order::tate()); }

TateDivisionValues& values() {
  static TateDivisionValues v;
  return v;
}

WeierstrassCurve curve(const char* ring, std::vector<std::string> a) {
  return WeierstrassCurve::parse(RingDescriptor::parse(ring), a);
}

}  // namespace

TEST(TateValues, SmallPsi) {
  EXPECT_EQ(values().psi(1), ST("1"));
  EXPECT_EQ(values().psi(2), ST("t"));
  EXPECT_EQ(values().psi(3), ST("t^3"));
  EXPECT_EQ(values().psi(4), ST("s*t^5"));
}

TEST(TateValues, SmallF) {
  EXPECT_EQ(values().f(1), ST("1"));
  EXPECT_EQ(values().f(2), ST("t"));
  EXPECT_EQ(values().f(3), ST("t^3"));
  EXPECT_EQ(values().f(4), ST("s*t^4"));
  EXPECT_THROW(values().f(0), UsageError);
}

TEST(TateValues, Delta) {
  MPoly delta = tate_delta();
  EXPECT_EQ(split_t_power(delta).first, 3u);
  MPoly a1 = ST("1 + s");
  MPoly b2 = a1 * a1 + ST("4*t");
  // b4 = a1 t, b6 = t^2, b8 = t^3.
  MPoly expected = ST("t^3") * (-(b2 * b2) - ST("8") * a1 * a1 * a1 - ST("27*t") + ST("9") * a1 * b2);
  EXPECT_EQ(delta, expected);
}

TEST(TateValuesProperty, ProductOfFIsPsi) {
  for (long n = 1; n <= 12; ++n) {
    MPoly prod = ST("1");
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * values().f(d);
    EXPECT_EQ(prod, values().psi(n)) << n;
  }
}

TEST(TateValues, PsiAgreesWithGenericSubstitution) {
  GenericLadder l = make_generic_ladder();
  std::map<std::string, MPoly> bind = tate_bindings();
  bind["X"] = MPoly(var_order::tate());
  for (long n = 1; n <= 7; ++n) {
    auto parts = yrep_parts(l.psi(n));
    EXPECT_EQ(poly_substitute(parts[0], bind, var_order::tate()), values().psi(n)) << n;
  }
}

TEST(Y1, EmitFour) {
  Y1Equation y = emit_y1(4, values());
  EXPECT_EQ(y.f, ST("s*t^4"));
  ASSERT_EQ(y.notes.size(), 1u);
  EXPECT_NE(y.notes[0].find("V(s)"), std::string::npos);
  Json j = to_json(y);
  EXPECT_EQ(j.at("universal_curve").at("a1"), "1+s");
  EXPECT_EQ(j.at("universal_curve").at("a2"), "t");
  EXPECT_EQ(j.at("universal_curve").at("a6"), "0");
  EXPECT_EQ(mpoly_from_json(j.at("f")), ST("s*t^4"));
  EXPECT_EQ(mpoly_from_json(j.at("p_n")), values().p(4));
  EXPECT_EQ(values().p(4), ST("t"));
  EXPECT_NE(to_text(y).find("f = s*t^4"), std::string::npos);
}

TEST(Y1, RejectsSmallN) {
  EXPECT_THROW(emit_y1(3, values()), UsageError);
  EXPECT_THROW(emit_y1(0, values()), UsageError);
}

TEST(Y1Property, ScanMatchesExactOrder) {
  MPoly delta = tate_delta();
  for (long n = 4; n <= 7; ++n)
    for (std::uint64_t p : {7u, 11u}) {
      if (static_cast<long>(p) % n == 0) continue;
      auto rep = check_y1_scan(n, p, values().f(n), delta, full_grid(p));
      EXPECT_TRUE(rep.ok()) << rep.to_json().dump();
      EXPECT_GT(rep.checks, 0);
    }
}

TEST(Y1, ReduceMod) {
  EXPECT_EQ(reduce_mod(ST("8*s - 3*t + 7"), Integer(7)), ST("s + 4*t"));
}

TEST(TateForm, IdentityOnNormalForm) {
  auto c = curve("zmod:11", {"3", "5", "5", "0", "0"});
  ProjPoint origin = parse_point(c.ring(), std::vector<std::string>{"0", "0", "1"});
  TateForm tf = tate_normal_form(c, origin);
  const RingDescriptor& r = c.ring();
  EXPECT_EQ(tf.s, RingElement(r, 2L));
  EXPECT_EQ(tf.t, RingElement(r, 5L));
  EXPECT_EQ(tf.change.u, RingElement::one(r));
  EXPECT_TRUE(tf.change.r.is_zero());
  EXPECT_TRUE(tf.change.s.is_zero());
  EXPECT_TRUE(tf.change.t.is_zero());
  EXPECT_TRUE(tf.curve == c);
}

TEST(TateForm, OrderThreeIsObstructed) {
  auto c = curve("zmod:5", {"0", "0", "0", "0", "1"});
  ProjPoint p = parse_point(c.ring(), std::vector<std::string>{"0", "1", "1"});
  try {
    tate_normal_form(c, p);
    FAIL() << "expected an obstruction";
  } catch (const OrderObstruction& e) {
    EXPECT_EQ(e.which(), OrderObstruction::Which::a2_not_unit);
  }
}

TEST(TateForm, OrderTwoIsObstructed) {
  // (0 : 0 : 1) on y^2 = x^3 + x has order 2, so a3 vanishes.
  auto c = curve("zmod:7", {"0", "0", "0", "1", "0"});
  ProjPoint p = parse_point(c.ring(), std::vector<std::string>{"0", "0", "1"});
  try {
    tate_normal_form(c, p);
    FAIL() << "expected an obstruction";
  } catch (const OrderObstruction& e) {
    EXPECT_EQ(e.which(), OrderObstruction::Which::a3_not_unit);
  }
}

TEST(TateForm, OrderFiveLandsOnY1Five) {
  // Search F_11 curves for a point of exact order 5.
  std::mt19937_64 rng(41);
  const std::uint64_t p = 11;
  Fp f(p);
  bool found = false;
  for (int tries = 0; tries < 500 && !found; ++tries) {
    auto a = random_smooth_curves(p, 1, rng)[0];
    FieldCurve<Fp> fc{f, a};
    for (const auto& pt : fp_points(f, a)) {
      if (pt.z == 0 || !fp_exact_order(fc, pt, 5)) continue;
      WeierstrassCurve c = to_curve(p, a);
      TateForm tf = tate_normal_form(c, to_point(c.ring(), pt));
      std::uint64_t s = tf.s.integer().get_ui(), t = tf.t.integer().get_ui();
      EXPECT_EQ(fp_eval_st(f, values().f(5), s, t), 0u);
      EXPECT_NE(fp_eval_st(f, tate_delta(), s, t), 0u);
      ProjPoint origin = parse_point(c.ring(), std::vector<std::string>{"0", "0", "1"});
      EXPECT_TRUE(is_Zn_embedding(tf.curve, origin, 5));
      found = true;
      break;
    }
  }
  EXPECT_TRUE(found);
}

TEST(TateFormProperty, RoundTrip) {
  std::mt19937_64 rng(43);
  auto inst = tate_instances({7, 11, 13, 17}, 30, rng);
  auto rep = check_tate_round_trip(inst);
  EXPECT_TRUE(rep.ok()) << rep.to_json().dump();
  EXPECT_EQ(rep.checks, 30);
}

TEST(CoordinateChange, ComposeMatchesSequentialApplication) {
  auto c = curve("zmod:101", {"1", "2", "3", "4", "5"});
  const RingDescriptor& r = c.ring();
  auto e = [&](long v) { return RingElement(r, v); };
  CoordinateChange first{e(3), e(5), e(7), e(11)}, second{e(2), e(13), e(17), e(19)};
  EXPECT_TRUE(apply_change(apply_change(c, first), second) == apply_change(c, compose(first, second)));
  auto pts = fp_points(Fp(101), {1, 2, 3, 4, 5});
  ProjPoint p = to_point(r, pts[3]);
  ProjPoint q = apply_change(apply_change(p, first), second);
  EXPECT_TRUE(projective_equal(q, apply_change(p, compose(first, second))));
  EXPECT_TRUE(curve_contains(apply_change(c, first), apply_change(p, first)));
}
