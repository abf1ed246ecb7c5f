#pragma once

// Tate normal form y^2 z + (1+s) x y z + t y z^2 - x^3 - t x^2 z, the values
// psi_n = Psi_n(0, 0) in Z[s, t], the exact-order factors f_n and the data
// defining Y1(n).

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mulnpoly/coeff_rings.hpp"
#include "mulnpoly/curves.hpp"
#include "mulnpoly/divpoly.hpp"
#include "mulnpoly/errors.hpp"
#include "mulnpoly/mpoly.hpp"
#include "mulnpoly/rings.hpp"

namespace mulnpoly {

/// Coordinate change x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.
struct CoordinateChange {
  RingElement u, r, s, t;
};

inline WeierstrassCurve apply_change(const WeierstrassCurve& c, const CoordinateChange& ch) {
  const auto& a = c.a();
  const RingDescriptor& ring = c.ring();
  const RingElement two(ring, 2), three(ring, 3);
  const RingElement& r = ch.r;
  const RingElement& s = ch.s;
  const RingElement& t = ch.t;
  RingElement ui = ring_inverse(ch.u);
  RingElement u2 = ui * ui, u3 = u2 * ui, u4 = u2 * u2, u6 = u3 * u3;
  RingElement a1 = (a.a1 + two * s) * ui;
  RingElement a2 = (a.a2 - s * a.a1 + three * r - s * s) * u2;
  RingElement a3 = (a.a3 + r * a.a1 + two * t) * u3;
  RingElement a4 = (a.a4 - s * a.a3 + two * r * a.a2 - (t + r * s) * a.a1 + three * r * r - two * s * t) * u4;
  RingElement a6 = (a.a6 + r * a.a4 + r * r * a.a2 + r * r * r - t * a.a3 - t * t - r * t * a.a1) * u6;
  return WeierstrassCurve(ring, {a1, a2, a3, a4, a6});
}

/// Image of a point under the coordinate change.
inline ProjPoint apply_change(const ProjPoint& p, const CoordinateChange& ch) {
  RingElement ui = ring_inverse(ch.u);
  RingElement u2 = ui * ui, u3 = u2 * ui;
  RingElement x = (p.x - ch.r * p.z) * u2;
  RingElement y = (p.y - ch.s * (p.x - ch.r * p.z) - ch.t * p.z) * u3;
  return {x, y, p.z};
}

/// Composite: first `first`, then `second`.
inline CoordinateChange compose(const CoordinateChange& first, const CoordinateChange& second) {
  const auto& u1 = first.u;
  RingElement u12 = u1 * u1;
  return {u1 * second.u, first.r + u12 * second.r, first.s + u1 * second.s,
          first.t + u12 * first.s * second.r + u12 * u1 * second.t};
}

struct TateForm {
  RingElement s, t;
  RingElement x0, y0, lambda, u;
  CoordinateChange change;
  WeierstrassCurve curve;
};

inline WeierstrassCurve tate_curve(const RingElement& s, const RingElement& t) {
  const RingDescriptor& ring = s.ring();
  return WeierstrassCurve(ring, {RingElement::one(ring) + s, t, t, RingElement::zero(ring), RingElement::zero(ring)});
}

/// Translates P to (0 : 0 : 1), shears by lambda = a4/a3 and scales by
/// u = a3/a2. Raises OrderObstruction when a3 or a2 is not a unit.
inline TateForm tate_normal_form(const WeierstrassCurve& c, const ProjPoint& p) {
  const RingDescriptor& ring = c.ring();
  require_ring(c, p);
  if (!curve_contains(c, p)) throw NotOnCurve("point " + to_string(p) + " is not on the curve");
  if (!is_unit(p.z)) throw UsageError("Tate normal form needs an affine point");
  const RingElement zero = RingElement::zero(ring), one = RingElement::one(ring);
  RingElement zi = ring_inverse(p.z);
  RingElement x0 = p.x * zi, y0 = p.y * zi;

  CoordinateChange translate{one, x0, zero, y0};
  WeierstrassCurve c1 = apply_change(c, translate);
  if (!c1.a().a6.is_zero()) throw ExactnessViolation("translation did not kill a6");
  if (!is_unit(c1.a().a3))
    throw OrderObstruction(OrderObstruction::Which::a3_not_unit, "a3 is not a unit after translation");

  RingElement lambda = c1.a().a4 * ring_inverse(c1.a().a3);
  CoordinateChange shear{one, zero, lambda, zero};
  WeierstrassCurve c2 = apply_change(c1, shear);
  if (!c2.a().a4.is_zero()) throw ExactnessViolation("shear did not kill a4");
  if (!is_unit(c2.a().a2))
    throw OrderObstruction(OrderObstruction::Which::a2_not_unit, "a2 is not a unit after the shear");

  RingElement u = c2.a().a3 * ring_inverse(c2.a().a2);
  CoordinateChange scale{u, zero, zero, zero};
  WeierstrassCurve c3 = apply_change(c2, scale);

  const auto& a = c2.a();
  RingElement s = a.a1 * a.a2 * ring_inverse(a.a3) - one;
  RingElement t = a.a2 * a.a2 * a.a2 * ring_inverse(a.a3 * a.a3);
  if (!is_unit(t)) throw ExactnessViolation("Tate parameter t is not a unit");

  WeierstrassCurve normal = tate_curve(s, t);
  if (!(c3 == normal)) throw ExactnessViolation("scaled curve is not in Tate normal form");
  CoordinateChange total = compose(compose(translate, shear), scale);
  if (!(apply_change(c, total) == normal)) throw ExactnessViolation("composite transform does not reproduce the normal form");
  ProjPoint image = apply_change(p, total);
  if (!projective_equal(image, ProjPoint{zero, zero, one}))
    throw ExactnessViolation("transform does not send the marked point to (0 : 0 : 1)");
  return TateForm{s, t, x0, y0, lambda, u, total, normal};
}

// ---------------------------------------------------------------------------
// Z[s, t].

inline IntegerPolyCoeffs tate_ring() { return IntegerPolyCoeffs(var_order::tate()); }

inline CurveCoefficients<MPoly> tate_coefficients() {
  const VarList& v = var_order::tate();
  MPoly s = mpoly_variable(v, "s"), t = mpoly_variable(v, "t");
  return {MPoly::constant(v, Integer(1)) + s, t, t, MPoly(v), MPoly(v)};
}

inline std::map<std::string, MPoly> tate_bindings() {
  auto a = tate_coefficients();
  return {{"a1", a.a1}, {"a2", a.a2}, {"a3", a.a3}, {"a4", a.a4}, {"a6", a.a6}};
}

/// psi_n, f_n and p_n with memoization.
class TateDivisionValues {
 public:
  TateDivisionValues() : ladder_(tate_ring(), tate_coefficients(), MPoly(var_order::tate()), MPoly(var_order::tate())) {}

  /// Psi_n(0, 0) on the Tate curve.
  MPoly psi(long n) { return ladder_.psi(n); }

  /// f_1 = 1 and f_n = psi_n / prod_{d | n, d < n} f_d.
  const MPoly& f(long n) {
    if (n < 1) throw UsageError("f_n needs n >= 1");
    if (auto it = f_.find(n); it != f_.end()) return it->second;
    MPoly value = MPoly::constant(var_order::tate(), Integer(1));
    if (n > 1) {
      MPoly den = MPoly::constant(var_order::tate(), Integer(1));
      for (long d = 1; d < n; ++d)
        if (n % d == 0) den = den * f(d);
      try {
        value = poly_divexact(psi(n), den);
      } catch (const NotDivisible& e) {
        throw ExactnessViolation("f_" + std::to_string(n) + ": psi_n is not divisible by prod f_d (" + e.leading_term() + ")");
      }
    }
    return f_.emplace(n, std::move(value)).first->second;
  }

  /// prod_{d | n, 0 < d < n} psi_d.
  MPoly p(long n) {
    MPoly out = MPoly::constant(var_order::tate(), Integer(1));
    for (long d = 1; d < n; ++d)
      if (n % d == 0) out = out * psi(d);
    return out;
  }

 private:
  PointLadder<IntegerPolyCoeffs> ladder_;
  std::map<long, MPoly> f_;
};

inline MPoly psi_st(long n) {
  TateDivisionValues v;
  return v.psi(n);
}

inline MPoly f_st(long n) {
  TateDivisionValues v;
  return v.f(n);
}

/// Delta(1+s, t, t, 0, 0).
inline MPoly tate_delta() { return poly_substitute(generic_discriminant(), tate_bindings(), var_order::tate()); }

struct Y1Equation {
  long n = 0;
  MPoly f, delta, p_n;
  std::vector<std::string> notes;
};

inline const std::map<std::string, std::string>& universal_curve() {
  static const std::map<std::string, std::string> u{{"a1", "1+s"}, {"a2", "t"}, {"a3", "t"}, {"a4", "0"}, {"a6", "0"}};
  return u;
}

/// Largest k with t^k dividing p, and p / t^k.
inline std::pair<unsigned long, MPoly> split_t_power(const MPoly& p) {
  const std::size_t it = 1;
  std::uint64_t k = p.is_zero() ? 0 : ~std::uint64_t{0};
  for (const auto& term : p.terms()) k = std::min<std::uint64_t>(k, p.layout().get(term.key, it));
  if (k == 0) return {0, p};
  return {static_cast<unsigned long>(k), poly_divexact(p, mpoly_variable(p.vars(), "t", k))};
}

inline Y1Equation emit_y1(long n, TateDivisionValues& values) {
  if (n < 4) throw UsageError("Y1(n) equations need n >= 4, got " + std::to_string(n));
  Y1Equation y;
  y.n = n;
  y.f = values.f(n);
  y.delta = tate_delta();
  y.p_n = values.p(n);
  auto [k, rest] = split_t_power(y.f);
  if (k > 0 && split_t_power(y.delta).first > 0) {
    std::string tk = k == 1 ? std::string("t") : "t^" + std::to_string(k);
    y.notes.push_back(tk + " divides f and t divides delta, so V(f) meets D(delta) in V(" + to_pretty(rest) + ")");
  }
  return y;
}

inline Y1Equation emit_y1(long n) {
  TateDivisionValues values;
  return emit_y1(n, values);
}

inline Json to_json(const Y1Equation& y) {
  Json curve = Json::object();
  for (const char* k : {"a1", "a2", "a3", "a4", "a6"}) curve[k] = universal_curve().at(k);
  Json j{{"n", y.n}, {"f", to_json(y.f)}, {"delta", to_json(y.delta)}, {"p_n", to_json(y.p_n)},
         {"universal_curve", curve}};
  if (!y.notes.empty()) j["notes"] = y.notes;
  return j;
}

inline std::string to_text(const Y1Equation& y) {
  std::ostringstream os;
  os << "Y1(" << y.n << ") over Z[1/" << y.n << "]\n";
  os << "universal curve: y^2*z + (1+s)*x*y*z + t*y*z^2 - x^3 - t*x^2*z\n";
  os << "f = " << to_pretty(y.f) << "\n";
  os << "delta = " << to_pretty(y.delta) << "\n";
  os << "p_n = " << to_pretty(y.p_n) << "\n";
  for (const auto& note : y.notes) os << "note: " << note << "\n";
  return os.str();
}

/// Reduction of an integer polynomial modulo m, coefficients in [0, m).
inline MPoly reduce_mod(const MPoly& p, const Integer& m) {
  std::vector<MPoly::Term> out;
  for (const auto& t : p.terms()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_mpz_t(), m.get_mpz_t());
    if (r != 0) out.push_back(MPoly::Term{t.key, std::move(r)});
  }
  return MPoly::from_sorted(p.vars(), std::move(out));
}

}  // namespace mulnpoly
