// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doubling_reference.hpp"
#include "mulnpoly/curves.hpp"
#include "mulnpoly/generic_fast.hpp"
#include "mulnpoly/moduli.hpp"
#include "mulnpoly/projmul.hpp"
#include "mulnpoly/verify.hpp"

using namespace mulnpoly;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitDoubling = 1.0;
constexpr double kLimitZ16 = 1.0;
constexpr double kLimitOracle = 300.0;
constexpr double kLimitStructural = 1500.0;
constexpr double kLimitGenericBuild = 600.0;
constexpr double kLimitSymbolic = 120.0;
constexpr double kLimitModuli = 300.0;
constexpr double kLimitTate = 60.0;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

bool report(int id, const char* title, double limit, const std::function<Outcome()>& body) {
  Clock clock;
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double t = clock.seconds();
  if (out.ok && t > limit) {
    std::ostringstream os;
    os << "exceeded " << limit << " s";
    out.fail(os.str());
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s / %.0f s", t, limit);
  std::cout << "criterion " << id << " " << (out.ok ? "PASS" : "FAIL") << " " << title << " [" << buf << "]";
  if (!out.detail.empty()) std::cout << " " << out.detail;
  std::cout << std::endl;
  return out.ok;
}

MPoly generic(const char* s) { return parse_mpoly(s, var_order::generic()); }

Outcome doubling() {
  Outcome out;
  MulTriple t = build_triple(2);
  if (!(t.alpha == generic(doubling_reference::kAlpha2))) out.fail("alpha_2 differs");
  if (!(t.beta == generic(doubling_reference::kBeta2))) out.fail("beta_2 differs");
  if (!(t.gamma == generic(doubling_reference::kGamma2))) out.fail("gamma_2 differs");
  return out;
}

Outcome z16_chain() {
  Outcome out;
  RingDescriptor ring = RingDescriptor::parse("zmod:16");
  WeierstrassCurve c = WeierstrassCurve::parse(ring, std::vector<std::string>{"0", "0", "0", "0", "1"});
  auto pt = [&](long x, long y, long z) { return ProjPoint{RingElement(ring, x), RingElement(ring, y), RingElement(ring, z)}; };
  ProjPoint p = pt(2, 1, 8);
  LadderTripleSource source;
  for (const ProjPoint& want : {pt(4, 1, 0), pt(8, 1, 0), pt(0, 1, 0)}) {
    p = mul_point(c, p, 2, source);
    if (!projective_equal(p, want)) out.fail("got " + to_string(p) + ", expected " + to_string(want));
  }
  return out;
}

/// Shared by criteria 3 and 5.
struct OracleRun {
  CheckReport oracle{"oracle_equivalence"};
  CheckReport torsion{"torsion_criterion"};
  long curves = 0;
  bool done = false;
};

OracleRun& oracle_run() {
  static OracleRun run;
  if (run.done) return run;
  std::mt19937_64 rng(kSeed);
  for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 1009u}) {
    Fp f(p);
    for (const auto& a : random_smooth_curves(p, 20, rng)) {
      auto all = fp_points(f, a);
      auto pts = p <= 17 ? all : sample_points(all, 200, rng);
      run.oracle.merge(check_oracle_equivalence(p, a, pts, 12));
      run.torsion.merge(check_torsion_criterion(p, a, p <= 17 ? all : pts, 12));
      ++run.curves;
    }
  }
  run.done = true;
  return run;
}

Outcome summarize(const CheckReport& rep, long curves) {
  Outcome out;
  std::ostringstream os;
  os << rep.passed << "/" << rep.checks << " checks over " << curves << " curves";
  out.detail = os.str();
  if (rep.checks == 0) out.fail("vacuous: no checks ran");
  if (!rep.ok()) out.fail(os.str() + ", first counterexample " + rep.counterexample->dump());
  return out;
}

Outcome oracle_equivalence() {
  OracleRun& run = oracle_run();
  return summarize(run.oracle, run.curves);
}

Outcome base_cases() {
  OracleRun& run = oracle_run();
  return summarize(run.torsion, run.curves);
}

template <class R>
void check_orders(Outcome& out, DivPolyLadder<R>& ladder, long n, const typename R::value_type& n_value,
                  const char* where) {
  const R& r = ladder.ring();
  const CurveRing<R>& cr = ladder.curve_ring();
  const long n2 = n * n;
  auto expect = [&](const YRep<R>& e, const char* name, long ord, const typename R::value_type& lead) {
    auto [o, l] = cr.ord0_and_leading(cr.to_xrep(e));
    if (o != ord || !r.equal(l, lead))
      out.fail(std::string(where) + ": ord0/leading law fails for " + name + " at n = " + std::to_string(n));
  };
  expect(ladder.psi(n), "Psi", -(n2 - 1), n_value);
  expect(ladder.phi(n), "Phi", -2 * n2, r.one());
  expect(ladder.omega(n), "Omega", -3 * n2, r.one());
}

Outcome structural() {
  Outcome out;
  const IntegerPolyCoeffs gr(var_order::coefficients());
  FastGenericLadder fast;
  double slowest = 0;
  long slowest_n = 0;
  for (long n = -8; n <= 8; ++n) {
    if (n == 0) continue;
    const long n2 = n * n;
    {
      auto start = std::chrono::steady_clock::now();
      MulTriple t = fast.triple(n);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (secs > slowest) {
        slowest = secs;
        slowest_n = n;
      }
      if (secs > kLimitGenericBuild) out.fail("generic build at n = " + std::to_string(n) + " exceeded its limit");
      check_triple_invariants(t);
      for (const MPoly* p : {&t.alpha, &t.beta, &t.gamma})
        if (poly_homogeneous_degree(*p, {0, 0, 0, 0, 0, 1, 1, 1}) != n2)
          out.fail("generic triple not homogeneous of degree n^2 at n = " + std::to_string(n));
    }
    auto expect = [&](const std::pair<long, MPoly>& got, const char* name, long ord, const MPoly& lead) {
      if (got.first != ord || !(got.second == lead))
        out.fail("generic: ord0/leading law fails for " + std::string(name) + " at n = " + std::to_string(n));
    };
    expect(FastGenericLadder::ord0_and_leading(fast.psi(n)), "Psi", -(n2 - 1), gr.from_int(n));
    expect(FastGenericLadder::ord0_and_leading(fast.phi(n)), "Phi", -2 * n2, gr.one());
    expect(fast.omega_order(n), "Omega", -3 * n2, gr.one());
  }

  std::mt19937_64 rng(kSeed + 4);
  RingDescriptor ring = RingDescriptor::parse("zmod:1009");
  Fp f(1009);
  for (const auto& a : random_smooth_curves(1009, 2, rng)) {
    WeierstrassCurve c = to_curve(1009, a);
    SpecializedLadder sl(c.a());
    DivPolyLadder<Fp> fl(f, a);
    for (long n = -50; n <= 50; ++n) {
      if (n == 0) continue;
      SpecializedTriple t = sl.triple(n);
      BasicTriple<RingElement> bt{n, t.alpha, t.beta, t.gamma};
      check_triple_invariants(bt);
      check_orders(out, fl, n, f.from_int(n), "mod 1009");
    }
  }
  if (out.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "slowest generic build n = %ld in %.1f s", slowest_n, slowest);
    out.detail = buf;
  }
  return out;
}

Outcome symbolic() {
  Outcome out;
  GenericLadder ladder = make_generic_ladder();
  const CurveRing<IntegerPolyCoeffs>& cr = ladder.curve_ring();
  const IntegerPolyCoeffs& gr = ladder.ring();
  auto psi = [&](long k) { return ladder.psi(k); };
  for (long m = -5; m <= 5; ++m)
    for (long n = -5; n <= 5; ++n) {
      auto lhs = cr.mul(psi(m + n), psi(m - n));
      auto r1 = cr.mul(cr.mul(psi(m + 1), psi(m - 1)), cr.mul(psi(n), psi(n)));
      auto r2 = cr.mul(cr.mul(psi(n + 1), psi(n - 1)), cr.mul(psi(m), psi(m)));
      if (!cr.equal(lhs, cr.sub(r1, r2)))
        out.fail("recurrence fails at m = " + std::to_string(m) + ", n = " + std::to_string(n));
    }

  const auto a = generic_coefficients();
  auto scalar = [&](const MPoly& c) { return YRep<IntegerPolyCoeffs>{upoly::constant(gr, c), {}}; };
  for (long n = -5; n <= 5; ++n) {
    auto p = psi(n);
    auto p2 = cr.mul(p, p);
    auto lhs = cr.add(cr.mul(scalar(gr.from_int(2)), cr.mul(p, ladder.omega(n))),
                      cr.mul(p2, cr.add(cr.mul(scalar(a.a1), ladder.phi(n)), cr.mul(scalar(a.a3), p2))));
    if (!cr.equal(lhs, psi(2 * n))) out.fail("Omega identity fails at n = " + std::to_string(n));
  }

  // Psi_n = Psi_2^e c_n with e = 1 for even n, so Psi_d | Psi_n reduces to
  // c_d | c_n for the pairs with d | n.
  long pairs = 0;
  for (long n = 1; n <= 12; ++n)
    for (long d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      ++pairs;
      try {
        upoly::divexact(gr, ladder.core(n), ladder.core(d));
      } catch (const NotDivisible&) {
        out.fail("Psi_" + std::to_string(d) + " does not divide Psi_" + std::to_string(n));
      }
    }
  try {
    upoly::divexact(gr, ladder.core(12), ladder.core(5));
    out.fail("control: c_5 divides c_12");
  } catch (const NotDivisible&) {
  }
  if (out.ok) out.detail = std::to_string(pairs) + " divisor pairs";
  return out;
}

Outcome moduli() {
  Outcome out;
  TateDivisionValues values;
  const VarList& st = var_order::tate();
  for (long n = 1; n <= 12; ++n) {
    MPoly prod = MPoly::constant(st, Integer(1));
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * values.f(d);
    if (!(prod == values.psi(n))) out.fail("prod f_d != psi_n at n = " + std::to_string(n));
  }
  if (!(values.f(4) == parse_mpoly("s*t^4", st))) out.fail("f_4 = " + to_pretty(values.f(4)));

  MPoly delta = tate_delta();
  std::mt19937_64 rng(kSeed + 7);
  CheckReport total{"y1_scan"};
  for (long n = 4; n <= 10; ++n)
    for (std::uint64_t p : {7u, 11u, 13u, 101u}) {
      if (static_cast<long>(p) % n == 0) continue;
      auto grid = p <= 13 ? full_grid(p) : random_grid(p, 2000, rng);
      auto rep = check_y1_scan(n, p, values.f(n), delta, grid);
      if (!rep.ok()) out.fail("scan counterexample " + rep.counterexample->dump());
      if (rep.checks == 0) out.fail("vacuous scan at n = " + std::to_string(n) + ", p = " + std::to_string(p));
      total.merge(rep);
    }
  if (out.ok) out.detail = std::to_string(total.checks) + " scan points";
  return out;
}

Outcome tate_round_trip() {
  Outcome out;
  std::mt19937_64 rng(kSeed + 8);
  auto instances = tate_instances({7, 11, 13, 17, 19, 23}, 120, rng);
  auto rep = check_tate_round_trip(instances);
  out.detail = std::to_string(rep.passed) + "/" + std::to_string(rep.checks) + " instances";
  if (rep.checks < 100) out.fail("fewer than 100 instances");
  if (!rep.ok()) out.fail(out.detail + ", first counterexample " + rep.counterexample->dump());
  return out;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "doubling formula term for term", kLimitDoubling, doubling);
  ok &= report(2, "Z/16 chain (2:1:8) -> (4:1:0) -> (8:1:0) -> (0:1:0)", kLimitZ16, z16_chain);
  ok &= report(3, "triples agree with the chord-tangent oracle, |n| <= 12", kLimitOracle, oracle_equivalence);
  ok &= report(4, "structural invariants, generic |n| <= 8, mod 1009 |n| <= 50", kLimitStructural, structural);
  ok &= report(5, "Psi_n(P) = 0 iff nP = 0, 2 <= n <= 12", kLimitOracle, base_cases);
  ok &= report(6, "recurrence, Omega identity, Psi_d | Psi_n", kLimitSymbolic, symbolic);
  ok &= report(7, "Y1(n): prod f_d = psi_n, f_4, scans", kLimitModuli, moduli);
  ok &= report(8, "Tate normal form round trip", kLimitTate, tate_round_trip);
  return ok ? 0 : 1;
}
