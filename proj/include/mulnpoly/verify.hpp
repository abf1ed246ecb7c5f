#pragma once

// Seeded verification suites over prime fields: the triples against the
// chord-tangent oracle, the torsion criterion for Psi_n, point-level
// coprimality of Phi_n and Psi_n, the Y1(n) scan and Tate round trips.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mulnpoly/coeff_rings.hpp"
#include "mulnpoly/curves.hpp"
#include "mulnpoly/divpoly.hpp"
#include "mulnpoly/moduli.hpp"
#include "mulnpoly/projmul.hpp"

namespace mulnpoly {

using Fp = SmallModCoeffs;
using FpPoint = ProjectivePoint<std::uint64_t>;
using FpCoefficients = CurveCoefficients<std::uint64_t>;

struct CheckReport {
  explicit CheckReport(std::string name_, std::uint64_t prime_ = 0) : name(std::move(name_)), prime(prime_) {}

  std::string name;
  std::uint64_t prime = 0;
  long checks = 0;
  long passed = 0;
  std::optional<Json> counterexample;

  bool ok() const { return checks == passed; }

  void record(bool good, const std::function<Json()>& describe) {
    ++checks;
    if (good)
      ++passed;
    else if (!counterexample)
      counterexample = describe();
  }

  void merge(const CheckReport& other) {
    checks += other.checks;
    passed += other.passed;
    if (!counterexample && other.counterexample) counterexample = other.counterexample;
  }

  Json to_json() const {
    Json j{{"check", name}, {"checks", checks}, {"passed", passed}, {"ok", ok()}};
    if (prime) j["prime"] = prime;
    if (checks == 0) j["vacuous"] = true;
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
  }
};

inline FpCoefficients to_fp(const Fp& f, long a1, long a2, long a3, long a4, long a6) {
  return {f.from_int(a1), f.from_int(a2), f.from_int(a3), f.from_int(a4), f.from_int(a6)};
}

inline std::uint64_t fp_weierstrass(const Fp& f, const FpCoefficients& a, std::uint64_t x, std::uint64_t y) {
  std::uint64_t lhs = f.add(f.add(f.mul(y, y), f.mul(f.mul(a.a1, x), y)), f.mul(a.a3, y));
  std::uint64_t rhs = f.add(f.add(f.add(f.mul(f.mul(x, x), x), f.mul(a.a2, f.mul(x, x))), f.mul(a.a4, x)), a.a6);
  return f.sub(lhs, rhs);
}

inline bool fp_smooth_curve(const Fp& f, const FpCoefficients& a) {
  return !f.is_zero(BInvariants<Fp>::compute(f, a).discriminant(f));
}

/// Seeded random smooth curves over F_p.
inline std::vector<FpCoefficients> random_smooth_curves(std::uint64_t p, int count, std::mt19937_64& rng) {
  Fp f(p);
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  std::vector<FpCoefficients> out;
  while (static_cast<int>(out.size()) < count) {
    FpCoefficients a{dist(rng), dist(rng), dist(rng), dist(rng), dist(rng)};
    if (fp_smooth_curve(f, a)) out.push_back(a);
  }
  return out;
}

/// All F_p-points, the zero section first, affine points in (x, y) order.
inline std::vector<FpPoint> fp_points(const Fp& f, const FpCoefficients& a) {
  std::vector<FpPoint> pts{{0, 1 % f.modulus(), 0}};
  const std::uint64_t p = f.modulus();
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t y = 0; y < p; ++y)
      if (fp_weierstrass(f, a, x, y) == 0) pts.push_back({x, y, 1});
  return pts;
}

inline Json describe(std::uint64_t p, const FpCoefficients& a, const FpPoint& pt, long n) {
  return Json{{"ring", "zmod:" + std::to_string(p)},
              {"a", Json::array({a.a1, a.a2, a.a3, a.a4, a.a6})},
              {"point", Json::array({pt.x, pt.y, pt.z})},
              {"n", n}};
}

/// Triples against the oracle for |n| <= n_max at every listed point; no
/// checks at all when n_max < 1.
inline CheckReport check_oracle_equivalence(std::uint64_t p, const FpCoefficients& a, const std::vector<FpPoint>& pts,
                                            long n_max) {
  Fp f(p);
  if (p % 2 == 0) throw UsageError("verification primes must be odd");
  CheckReport rep{"oracle_equivalence", p};
  if (n_max < 1) return rep;
  DivPolyLadder<Fp> ladder(f, a);
  FieldCurve<Fp> fc{f, a};
  for (long n = -n_max; n <= n_max; ++n) {
    XRepTriple<Fp> t = build_xrep_triple(ladder, n);
    for (const auto& pt : pts) {
      auto v = eval_xrep_triple(f, t, {pt.x, pt.y, pt.z});
      FpPoint got{v[0], v[1], v[2]};
      bool nonzero = !(v[0] == 0 && v[1] == 0 && v[2] == 0);
      bool good = nonzero && fc.same(got, fc.mul(pt, n));
      rep.record(good, [&] { return describe(p, a, pt, n); });
    }
  }
  return rep;
}

/// Psi_n(P) = 0 iff nP = 0 for affine P and 2 <= n <= n_max.
inline CheckReport check_torsion_criterion(std::uint64_t p, const FpCoefficients& a, const std::vector<FpPoint>& pts,
                                           long n_max) {
  Fp f(p);
  CheckReport rep{"torsion_criterion", p};
  FieldCurve<Fp> fc{f, a};
  for (const auto& pt : pts) {
    if (pt.z == 0) continue;
    PointLadder<Fp> pl(f, a, pt.x, pt.y);
    for (long n = 2; n <= n_max; ++n) {
      bool vanishes = pl.psi(n) == 0;
      bool torsion = fc.is_zero(fc.mul(pt, n));
      rep.record(vanishes == torsion, [&] { return describe(p, a, pt, n); });
    }
  }
  return rep;
}

/// Phi_n(P) and Psi_n(P) never vanish together, 1 <= n <= n_max.
inline CheckReport check_coprimality(std::uint64_t p, const FpCoefficients& a, const std::vector<FpPoint>& pts,
                                     long n_max) {
  Fp f(p);
  CheckReport rep{"phi_psi_coprime", p};
  for (const auto& pt : pts) {
    if (pt.z == 0) continue;
    PointLadder<Fp> pl(f, a, pt.x, pt.y);
    for (long n = 1; n <= n_max; ++n)
      rep.record(!(pl.psi(n) == 0 && pl.phi(n) == 0), [&] { return describe(p, a, pt, n); });
  }
  return rep;
}

/// Up to `count` points drawn without replacement, zero section included.
inline std::vector<FpPoint> sample_points(const std::vector<FpPoint>& all, std::size_t count, std::mt19937_64& rng) {
  if (all.size() <= count) return all;
  std::vector<FpPoint> out{all.front()};
  std::vector<std::size_t> idx(all.size() - 1);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i + 1;
  std::shuffle(idx.begin(), idx.end(), rng);
  for (std::size_t i = 0; out.size() < count; ++i) out.push_back(all[idx[i]]);
  return out;
}

// ---------------------------------------------------------------------------
// Moduli scans.

/// Evaluates an integer polynomial in (s, t) modulo p.
inline std::uint64_t fp_eval_st(const Fp& f, const MPoly& poly, std::uint64_t s, std::uint64_t t) {
  std::uint64_t acc = 0;
  for (const auto& term : poly.terms()) {
    std::uint64_t c = f.from_integer(term.coeff);
    auto es = poly.layout().get(term.key, 0), et = poly.layout().get(term.key, 1);
    std::uint64_t m = c;
    for (std::uint64_t k = 0; k < es; ++k) m = f.mul(m, s);
    for (std::uint64_t k = 0; k < et; ++k) m = f.mul(m, t);
    acc = f.add(acc, m);
  }
  return acc;
}

inline bool fp_exact_order(const FieldCurve<Fp>& fc, const FpPoint& pt, long n) {
  if (!fc.is_zero(fc.mul(pt, n))) return false;
  for (long d = 1; d < n; ++d)
    if (n % d == 0 && fc.is_zero(fc.mul(pt, d))) return false;
  return true;
}

/// f_n(s0, t0) = 0 and delta(s0, t0) != 0 iff (0 : 0 : 1) has exact order n on
/// the curve (1+s0, t0, t0, 0, 0), over the listed (s0, t0).
inline CheckReport check_y1_scan(long n, std::uint64_t p, const MPoly& fn, const MPoly& delta,
                                 const std::vector<std::pair<std::uint64_t, std::uint64_t>>& samples) {
  Fp f(p);
  CheckReport rep{"y1_scan_n" + std::to_string(n), p};
  for (auto [s, t] : samples) {
    if (fp_eval_st(f, delta, s, t) == 0) continue;
    bool vanish = fp_eval_st(f, fn, s, t) == 0;
    FieldCurve<Fp> fc{f, {f.add(1, s), t, t, 0, 0}};
    bool order = fp_exact_order(fc, {0, 0, 1}, n);
    rep.record(vanish == order, [&] {
      return Json{{"n", n}, {"prime", p}, {"s", s}, {"t", t}, {"f_vanishes", vanish}, {"exact_order", order}};
    });
  }
  return rep;
}

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> full_grid(std::uint64_t p) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t s = 0; s < p; ++s)
    for (std::uint64_t t = 0; t < p; ++t) out.emplace_back(s, t);
  return out;
}

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> random_grid(std::uint64_t p, std::size_t count,
                                                                        std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t s = dist(rng);
    std::uint64_t t = dist(rng);
    out.emplace_back(s, t);
  }
  return out;
}

/// A curve over F_p with a point of exact order n >= 4.
struct TateInstance {
  std::uint64_t p;
  FpCoefficients a;
  FpPoint point;
  long order;
};

inline long fp_order(const FieldCurve<Fp>& fc, const FpPoint& pt, long bound) {
  FpPoint acc = pt;
  for (long k = 1; k <= bound; ++k) {
    if (fc.is_zero(acc)) return k;
    acc = fc.add(acc, pt);
  }
  return 0;
}

inline std::vector<TateInstance> tate_instances(const std::vector<std::uint64_t>& primes, std::size_t count,
                                                std::mt19937_64& rng) {
  std::vector<TateInstance> out;
  std::size_t round = 0;
  while (out.size() < count) {
    std::uint64_t p = primes[round++ % primes.size()];
    Fp f(p);
    auto curves = random_smooth_curves(p, 1, rng);
    auto pts = fp_points(f, curves[0]);
    FieldCurve<Fp> fc{f, curves[0]};
    std::vector<std::pair<FpPoint, long>> good;
    for (const auto& pt : pts) {
      if (pt.z == 0) continue;
      long ord = fp_order(fc, pt, static_cast<long>(2 * p + 2));
      if (ord >= 4) good.emplace_back(pt, ord);
    }
    if (good.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, good.size() - 1);
    auto [pt, ord] = good[pick(rng)];
    out.push_back({p, curves[0], pt, ord});
  }
  return out;
}

inline WeierstrassCurve to_curve(std::uint64_t p, const FpCoefficients& a) {
  RingDescriptor ring = RingDescriptor::residue(Integer(static_cast<unsigned long>(p)));
  auto e = [&](std::uint64_t v) { return RingElement(ring, Integer(static_cast<unsigned long>(v))); };
  return WeierstrassCurve(ring, {e(a.a1), e(a.a2), e(a.a3), e(a.a4), e(a.a6)});
}

inline ProjPoint to_point(const RingDescriptor& ring, const FpPoint& pt) {
  auto e = [&](std::uint64_t v) { return RingElement(ring, Integer(static_cast<unsigned long>(v))); };
  return {e(pt.x), e(pt.y), e(pt.z)};
}

/// Normal form exists, (0 : 0 : 1) is a Z/nZ-embedding on it, and
/// normalizing again is the identity.
inline CheckReport check_tate_round_trip(const std::vector<TateInstance>& instances) {
  CheckReport rep{"tate_round_trip"};
  for (const auto& inst : instances) {
    WeierstrassCurve c = to_curve(inst.p, inst.a);
    ProjPoint pt = to_point(c.ring(), inst.point);
    bool good = false;
    std::string why;
    try {
      TateForm tf = tate_normal_form(c, pt);
      ProjPoint origin{RingElement::zero(c.ring()), RingElement::zero(c.ring()), RingElement::one(c.ring())};
      bool embedded = is_Zn_embedding(tf.curve, origin, inst.order);
      TateForm again = tate_normal_form(tf.curve, origin);
      const RingElement one = RingElement::one(c.ring());
      bool identity = again.s == tf.s && again.t == tf.t && again.curve == tf.curve && again.change.u == one &&
                      again.change.r.is_zero() && again.change.s.is_zero() && again.change.t.is_zero();
      good = embedded && identity;
      if (!embedded) why = "not an embedding";
      if (!identity) why = "renormalization is not the identity";
    } catch (const std::exception& e) {
      why = e.what();
    }
    rep.record(good, [&] {
      Json j = describe(inst.p, inst.a, inst.point, inst.order);
      j["reason"] = why;
      return j;
    });
  }
  return rep;
}

}  // namespace mulnpoly
