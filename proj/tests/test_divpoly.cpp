#include <gtest/gtest.h>

#include <random>

#include "mulnpoly/divpoly.hpp"
#include "mulnpoly/verify.hpp"

using namespace mulnpoly;

namespace {

using Gen = IntegerPolyCoeffs;

GenericLadder& ladder() {
  static GenericLadder l = make_generic_ladder();
  return l;
}

const CurveRing<Gen>& ring() { return ladder().curve_ring(); }

MPoly A(const std::string& s) { return parse_mpoly(s, var_order::affine()); }

/// p0(X) + p1(X) Y from a polynomial of Y-degree at most 1.
YRep<Gen> yrep(const MPoly& p) {
  const VarList& cv = var_order::coefficients();
  YRep<Gen> out;
  for (const auto& t : p.terms()) {
    std::vector<std::uint64_t> e = p.exponents(t.key);
    std::uint64_t ex = e[5], ey = e[6];
    if (ey > 1) throw std::invalid_argument("Y-degree above 1");
    e.resize(5);
    auto& part = ey == 0 ? out.p0 : out.p1;
    if (part.size() <= ex) part.resize(ex + 1, MPoly(cv));
    part[ex] += MPoly::from_terms(cv, {{e, t.coeff}});
  }
  upoly::trim(ring().ring(), out.p0);
  upoly::trim(ring().ring(), out.p1);
  return out;
}

YRep<Gen> yrep(const std::string& s) { return yrep(A(s)); }

YRep<Gen> scalar(const MPoly& c) { return {upoly::constant(ring().ring(), c), {}}; }

MPoly b_expr(const char* which) {
  static const std::map<std::string, std::string> b{
      {"b2", "a1^2 + 4*a2"},
      {"b4", "2*a4 + a1*a3"},
      {"b6", "a3^2 + 4*a6"},
      {"b8", "a1^2*a6 + 4*a2*a6 - a1*a3*a4 + a2*a3^2 - a4^2"}};
  return A(b.at(which));
}

/// Polynomial in X and b2..b8 written out in a1..a6.
MPoly in_b(const std::string& text) {
  VarList vb{"b2", "b4", "b6", "b8", "X"};
  MPoly p = parse_mpoly(text, vb);
  std::map<std::string, MPoly> bind{
      {"b2", b_expr("b2")}, {"b4", b_expr("b4")}, {"b6", b_expr("b6")}, {"b8", b_expr("b8")}, {"X", A("X")}};
  return poly_substitute(p, bind, var_order::affine());
}

void expect_equal(const YRep<Gen>& u, const YRep<Gen>& v) {
  EXPECT_TRUE(ring().equal(u, v)) << to_json(u).dump() << "\n vs \n" << to_json(v).dump();
}

}  // namespace

TEST(DivPoly, SmallIndexValues) {
  expect_equal(ladder().psi(0), yrep("0"));
  expect_equal(ladder().psi(1), yrep("1"));
  expect_equal(ladder().psi(-1), yrep("-1"));
  expect_equal(ladder().psi(2), yrep("2*Y + a1*X + a3"));
  expect_equal(ladder().psi(-2), yrep("-2*Y - a1*X - a3"));
  expect_equal(ladder().phi(0), yrep("1"));
  expect_equal(ladder().phi(1), yrep("X"));
  expect_equal(ladder().phi(-1), yrep("X"));
  expect_equal(ladder().omega(0), yrep("1"));
  expect_equal(ladder().omega(1), yrep("Y"));
  expect_equal(ladder().omega(-1), yrep("Y + a1*X + a3"));
}

TEST(DivPoly, Psi3AndPsi4MatchTheBInvariantForms) {
  expect_equal(ladder().psi(3), yrep(in_b("3*X^4 + b2*X^3 + 3*b4*X^2 + 3*b6*X + b8")));
  YRep<Gen> c4 = yrep(in_b("2*X^6 + b2*X^5 + 5*b4*X^4 + 10*b6*X^3 + 10*b8*X^2 + (b2*b8 - b4*b6)*X + b4*b8 - b6^2"));
  expect_equal(ladder().psi(4), ring().mul(ladder().psi(2), c4));
}

TEST(DivPoly, Psi2SquaredIsF) {
  YRep<Gen> f = yrep(in_b("4*X^3 + b2*X^2 + 2*b4*X + b6"));
  expect_equal(ring().mul(ladder().psi(2), ladder().psi(2)), f);
}

TEST(DivPoly, NegativeIndices) {
  for (long n = 0; n <= 8; ++n) {
    expect_equal(ladder().psi(-n), ring().neg(ladder().psi(n)));
    expect_equal(ladder().phi(-n), ladder().phi(n));
  }
}

TEST(DivPoly, PhiDefinition) {
  // Phi_n = X Psi_n^2 - Psi_{n+1} Psi_{n-1}.
  YRep<Gen> x = yrep("X");
  for (long n = -6; n <= 6; ++n) {
    YRep<Gen> psi = ladder().psi(n);
    YRep<Gen> rhs = ring().sub(ring().mul(x, ring().mul(psi, psi)), ring().mul(ladder().psi(n + 1), ladder().psi(n - 1)));
    expect_equal(ladder().phi(n), rhs);
  }
}

TEST(DivPolyProperty, Recurrence) {
  auto psi = [](long k) { return ladder().psi(k); };
  for (long m = -5; m <= 5; ++m)
    for (long n = -5; n <= 5; ++n) {
      YRep<Gen> lhs = ring().mul(psi(m + n), psi(m - n));
      YRep<Gen> r1 = ring().mul(ring().mul(psi(m + 1), psi(m - 1)), ring().mul(psi(n), psi(n)));
      YRep<Gen> r2 = ring().mul(ring().mul(psi(n + 1), psi(n - 1)), ring().mul(psi(m), psi(m)));
      EXPECT_TRUE(ring().equal(lhs, ring().sub(r1, r2))) << "m = " << m << ", n = " << n;
    }
}

TEST(DivPolyProperty, OmegaIdentity) {
  const auto& a = generic_coefficients();
  for (long n = -5; n <= 5; ++n) {
    YRep<Gen> psi = ladder().psi(n);
    YRep<Gen> psi2 = ring().mul(psi, psi);
    YRep<Gen> two_psi_omega = ring().mul(scalar(MPoly::constant(var_order::coefficients(), Integer(2))),
                                         ring().mul(psi, ladder().omega(n)));
    YRep<Gen> inner = ring().add(ring().mul(scalar(a.a1), ladder().phi(n)), ring().mul(scalar(a.a3), psi2));
    YRep<Gen> lhs = ring().add(two_psi_omega, ring().mul(psi2, inner));
    EXPECT_TRUE(ring().equal(lhs, ladder().psi(2 * n))) << "n = " << n;
  }
}

TEST(DivPolyProperty, CoresDivideAlongDivisors) {
  const auto& r = ladder().ring();
  for (long n = 3; n <= 10; ++n)
    for (long d = 3; d < n; ++d) {
      if (n % d == 0 && (d % 2 == 1 || n % 2 == 0)) {
        EXPECT_NO_THROW(upoly::divexact(r, ladder().core(n), ladder().core(d))) << d << " | " << n;
      }
    }
  EXPECT_THROW(upoly::divexact(r, ladder().core(8), ladder().core(3)), NotDivisible);
}

TEST(CurveRing, CanonicalXRepExamples) {
  XRep<Gen> x3 = ring().to_xrep(yrep("X^3"));
  XRep<Gen> expected = ring().to_xrep(yrep("0"));
  const VarList& cv = var_order::coefficients();
  auto c = [&](const char* s) { return parse_mpoly(s, cv); };
  const Gen& g = ring().ring();
  expected.q[0] = upoly::Dense<Gen>{-c("a6"), c("a3"), c("1")};
  expected.q[1] = upoly::Dense<Gen>{-c("a4"), c("a1")};
  expected.q[2] = upoly::Dense<Gen>{-c("a2")};
  for (auto& q : expected.q) upoly::trim(g, q);
  EXPECT_TRUE(ring().equal(x3, expected));

  XRep<Gen> y = ring().to_xrep(yrep("Y"));
  EXPECT_TRUE(y.q[1].empty() && y.q[2].empty());
  EXPECT_TRUE(upoly::equal(g, y.q[0], upoly::Dense<Gen>{c("0"), c("1")}));

  YRep<Gen> x4 = yrep("X^4");
  expect_equal(ring().to_yrep(ring().to_xrep(x4)), x4);
}

TEST(CurveRingProperty, XRepRoundTripAndMultiplicativity) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-5, 5);
  auto random_elem = [&] {
    std::string s = "0";
    for (int i = 0; i < 8; ++i) s += " + " + std::to_string(c(rng)) + "*X^" + std::to_string(i) + "*Y^" + std::to_string(i % 2);
    return yrep(s);
  };
  for (int k = 0; k < 10; ++k) {
    YRep<Gen> u = random_elem(), v = random_elem();
    expect_equal(ring().to_yrep(ring().to_xrep(u)), u);
    XRep<Gen> xu = ring().to_xrep(u), xv = ring().to_xrep(v);
    expect_equal(ring().mul(ring().to_yrep(xu), ring().to_yrep(xv)), ring().mul(u, v));
  }
}

TEST(DivPoly, OrderAtInfinityAndLeadingCoefficient) {
  const VarList& cv = var_order::coefficients();
  for (long n = -6; n <= 6; ++n) {
    if (n == 0) continue;
    auto [op, lp] = ring().ord0_and_leading(ring().to_xrep(ladder().psi(n)));
    EXPECT_EQ(op, -(n * n - 1)) << n;
    EXPECT_EQ(lp, MPoly::constant(cv, Integer(n))) << n;
    auto [of, lf] = ring().ord0_and_leading(ring().to_xrep(ladder().phi(n)));
    EXPECT_EQ(of, -2 * n * n) << n;
    EXPECT_EQ(lf, MPoly::constant(cv, Integer(1))) << n;
    auto [ow, lw] = ring().ord0_and_leading(ring().to_xrep(ladder().omega(n)));
    EXPECT_EQ(ow, -3 * n * n) << n;
    EXPECT_EQ(lw, MPoly::constant(cv, Integer(1))) << n;
  }
  EXPECT_THROW(ring().ord0_and_leading(ring().to_xrep(ladder().psi(0))), UsageError);
}

TEST(DivPoly, JsonEnvelope) {
  Json j = to_json(ladder().psi(2));
  EXPECT_EQ(j.at("form"), "yrep");
  ASSERT_EQ(j.at("parts").size(), 2u);
  EXPECT_EQ(mpoly_from_json(j.at("parts")[0]), parse_mpoly("a1*X + a3", var_order::affine_x()));
  EXPECT_EQ(mpoly_from_json(j.at("parts")[1]), parse_mpoly("2", var_order::affine_x()));
  Json x = to_json(ring().to_xrep(ladder().psi(2)));
  EXPECT_EQ(x.at("form"), "xrep");
  EXPECT_EQ(x.at("parts").size(), 3u);
}

TEST(DivPoly, HalvingRing) {
  EXPECT_EQ(halving_ring(RingDescriptor::parse("zmod:16")).to_string(), "zmod:32");
  EXPECT_EQ(halving_ring(RingDescriptor::parse("zmod:15")).to_string(), "zmod:15");
  EXPECT_EQ(halving_ring(RingDescriptor::parse("qq")).to_string(), "qq");
  EXPECT_EQ(halving_ring(RingDescriptor::parse("poly:zmod:4:e")).to_string(), "poly:zmod:8:e");
}

TEST(DivPolyProperty, PointLadderMatchesGenericEvaluation) {
  std::mt19937_64 rng(3);
  const std::uint64_t p = 101;
  Fp f(p);
  for (const auto& a : random_smooth_curves(p, 3, rng)) {
    auto pts = fp_points(f, a);
    DivPolyLadder<Fp> dl(f, a);
    for (std::size_t i = 1; i < pts.size(); i += 7) {
      PointLadder<Fp> pl(f, a, pts[i].x, pts[i].y);
      auto at = [&](const YRep<Fp>& u) {
        return f.add(upoly::evaluate(f, u.p0, pts[i].x), f.mul(upoly::evaluate(f, u.p1, pts[i].x), pts[i].y));
      };
      for (long n = -9; n <= 9; ++n) {
        EXPECT_EQ(pl.psi(n), at(dl.psi(n)));
        EXPECT_EQ(pl.phi(n), at(dl.phi(n)));
        EXPECT_EQ(pl.omega(n), at(dl.omega(n)));
      }
    }
  }
}

TEST(DivPolyOracle, Psi5VanishesExactlyOnFiveTorsion) {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {11u, 19u, 31u, 41u}) {
    Fp f(p);
    for (const auto& a : random_smooth_curves(p, 6, rng)) {
      auto rep = check_torsion_criterion(p, a, fp_points(f, a), 5);
      EXPECT_TRUE(rep.ok()) << rep.to_json().dump();
    }
  }
}
