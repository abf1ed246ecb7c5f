#pragma once

// Weierstrass curves
//
//   W = y^2 z + a1 x y z + a3 y z^2 - x^3 - a2 x^2 z - a4 x z^2 - a6 z^3
//
// and projective points over concrete rings.

#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mulnpoly/coeff_rings.hpp"
#include "mulnpoly/divpoly.hpp"
#include "mulnpoly/errors.hpp"
#include "mulnpoly/projmul.hpp"
#include "mulnpoly/rings.hpp"

namespace mulnpoly {

template <class V>
struct ProjectivePoint {
  V x, y, z;

  std::array<V, 3> coords() const { return {x, y, z}; }
};

using ProjPoint = ProjectivePoint<RingElement>;

class WeierstrassCurve {
 public:
  WeierstrassCurve(RingDescriptor ring, CurveCoefficients<RingElement> a) : ring_(std::move(ring)), a_(std::move(a)) {
    if (!(common_ring(a_) == ring_)) throw UsageError("curve coefficients are not in " + ring_.to_string());
  }

  static WeierstrassCurve parse(const RingDescriptor& ring, std::span<const std::string> coeffs) {
    return WeierstrassCurve(ring, parse_coefficients(ring, coeffs));
  }

  const RingDescriptor& ring() const { return ring_; }
  const CurveCoefficients<RingElement>& a() const { return a_; }

  RingElement w(const RingElement& x, const RingElement& y, const RingElement& z) const {
    return y * y * z + a_.a1 * x * y * z + a_.a3 * y * z * z - x * x * x - a_.a2 * x * x * z - a_.a4 * x * z * z -
           a_.a6 * z * z * z;
  }

  /// (dW/dx, dW/dy, dW/dz) at (x, y, z).
  std::array<RingElement, 3> gradient(const RingElement& x, const RingElement& y, const RingElement& z) const {
    RingElement two(ring_, 2), three(ring_, 3);
    return {a_.a1 * y * z - three * x * x - two * a_.a2 * x * z - a_.a4 * z * z,
            two * y * z + a_.a1 * x * z + a_.a3 * z * z,
            y * y + a_.a1 * x * y + two * a_.a3 * y * z - a_.a2 * x * x - two * a_.a4 * x * z -
                three * a_.a6 * z * z};
  }

  friend bool operator==(const WeierstrassCurve& c, const WeierstrassCurve& d) {
    return c.ring_ == d.ring_ && c.a_.a1 == d.a_.a1 && c.a_.a2 == d.a_.a2 && c.a_.a3 == d.a_.a3 &&
           c.a_.a4 == d.a_.a4 && c.a_.a6 == d.a_.a6;
  }

 private:
  RingDescriptor ring_;
  CurveCoefficients<RingElement> a_;
};

inline void require_ring(const WeierstrassCurve& c, const ProjPoint& p) {
  for (const RingElement* e : {&p.x, &p.y, &p.z})
    if (!(e->ring() == c.ring())) throw UsageError("point coordinate is not in " + c.ring().to_string());
}

inline ProjPoint parse_point(const RingDescriptor& ring, std::span<const std::string> text) {
  if (text.size() != 3) throw UsageError("a point needs three coordinates x,y,z");
  return {RingElement::parse(ring, text[0]), RingElement::parse(ring, text[1]), RingElement::parse(ring, text[2])};
}

inline bool curve_contains(const WeierstrassCurve& c, const ProjPoint& p) {
  require_ring(c, p);
  if (!c.w(p.x, p.y, p.z).is_zero()) return false;
  return unit_ideal_test({p.x, p.y, p.z});
}

inline bool is_smooth_point(const WeierstrassCurve& c, const ProjPoint& p) {
  require_ring(c, p);
  auto g = c.gradient(p.x, p.y, p.z);
  return unit_ideal_test(std::span<const RingElement>(g));
}

/// The two-generator affine smoothness test (a1 y - 3x^2 - 2 a2 x - a4, 2y + a1 x + a3).
inline bool is_smooth_affine_point(const WeierstrassCurve& c, const RingElement& x, const RingElement& y) {
  const auto& a = c.a();
  RingElement two(c.ring(), 2), three(c.ring(), 3);
  return unit_ideal_test({a.a1 * y - three * x * x - two * a.a2 * x - a.a4, two * y + a.a1 * x + a.a3});
}

/// Generic discriminant in Z[a1, a2, a3, a4, a6].
inline const MPoly& generic_discriminant() {
  static const MPoly delta = [] {
    IntegerPolyCoeffs r(var_order::coefficients());
    return BInvariants<IntegerPolyCoeffs>::compute(r, generic_coefficients()).discriminant(r);
  }();
  return delta;
}

inline RingElement curve_discriminant(const WeierstrassCurve& c) {
  return poly_evaluate(generic_discriminant(), coefficient_bindings(c.a()), c.ring());
}

inline bool is_smooth_curve(const WeierstrassCurve& c) { return is_unit(curve_discriminant(c)); }

inline ProjPoint zero_point(const RingDescriptor& ring) {
  return {RingElement::zero(ring), RingElement::one(ring), RingElement::zero(ring)};
}

inline ProjPoint negate(const WeierstrassCurve& c, const ProjPoint& p) {
  return {p.x, -p.y - c.a().a1 * p.x - c.a().a3 * p.z, p.z};
}

/// Whether Q = u P for a unit u. The unit is recovered from a certificate
/// sum c_i P_i = 1 as u = sum c_i Q_i.
inline bool projective_equal(const ProjPoint& p, const ProjPoint& q) {
  std::array<RingElement, 3> pc{p.x, p.y, p.z};
  std::array<RingElement, 3> qc{q.x, q.y, q.z};
  auto cert = unit_ideal_certificate(std::span<const RingElement>(pc));
  if (!cert) throw ExactnessViolation("point coordinates do not generate the unit ideal");
  RingElement u = (*cert)[0] * qc[0] + (*cert)[1] * qc[1] + (*cert)[2] * qc[2];
  if (!is_unit(u)) return false;
  for (int i = 0; i < 3; ++i)
    if (!(u * pc[i] == qc[i])) return false;
  return true;
}

/// Scales to (x/z : y/z : 1) when z is a unit, to (0 : 1 : 0) when the point
/// is the zero section; otherwise returns p unchanged.
inline ProjPoint normalize(const ProjPoint& p) {
  if (is_unit(p.z)) {
    RingElement zi = ring_inverse(p.z);
    return {p.x * zi, p.y * zi, RingElement::one(p.z.ring())};
  }
  if (p.x.is_zero() && p.z.is_zero() && is_unit(p.y)) return zero_point(p.y.ring());
  return p;
}

inline std::string to_string(const ProjPoint& p) {
  return "(" + p.x.to_string() + " : " + p.y.to_string() + " : " + p.z.to_string() + ")";
}

// ---------------------------------------------------------------------------
// Chord-tangent oracle over fields, generic over a policy with inv().

template <class R>
struct FieldCurve {
  using V = typename R::value_type;
  R r;
  CurveCoefficients<V> a;

  bool is_zero(const ProjectivePoint<V>& p) const { return r.is_zero(p.z); }

  ProjectivePoint<V> zero() const { return {r.zero(), r.one(), r.zero()}; }

  ProjectivePoint<V> neg(const ProjectivePoint<V>& p) const {
    return {p.x, r.sub(r.sub(r.neg(p.y), r.mul(a.a1, p.x)), r.mul(a.a3, p.z)), p.z};
  }

  ProjectivePoint<V> affine(const ProjectivePoint<V>& p) const {
    if (is_zero(p)) return zero();
    V zi = r.inv(p.z);
    return {r.mul(p.x, zi), r.mul(p.y, zi), r.one()};
  }

  ProjectivePoint<V> add(const ProjectivePoint<V>& pp, const ProjectivePoint<V>& qq) const {
    if (is_zero(pp)) return affine(qq);
    if (is_zero(qq)) return affine(pp);
    auto p = affine(pp);
    auto q = affine(qq);
    const V& x1 = p.x;
    const V& y1 = p.y;
    const V& x2 = q.x;
    const V& y2 = q.y;
    V lambda, nu;
    if (r.equal(x1, x2)) {
      V s = r.add(r.add(r.add(y1, y2), r.mul(a.a1, x2)), a.a3);
      if (r.is_zero(s)) return zero();
      V den = r.add(r.add(r.add(y1, y1), r.mul(a.a1, x1)), a.a3);
      V di = r.inv(den);
      V x1sq = r.mul(x1, x1);
      V num = r.add(r.add(r.mul(r.from_int(3), x1sq), r.mul(r.from_int(2), r.mul(a.a2, x1))), a.a4);
      num = r.sub(num, r.mul(a.a1, y1));
      lambda = r.mul(num, di);
      V nnum = r.add(r.neg(r.mul(x1sq, x1)), r.mul(a.a4, x1));
      nnum = r.sub(r.add(nnum, r.mul(r.from_int(2), a.a6)), r.mul(a.a3, y1));
      nu = r.mul(nnum, di);
    } else {
      V di = r.inv(r.sub(x2, x1));
      lambda = r.mul(r.sub(y2, y1), di);
      nu = r.mul(r.sub(r.mul(y1, x2), r.mul(y2, x1)), di);
    }
    V x3 = r.sub(r.sub(r.sub(r.add(r.mul(lambda, lambda), r.mul(a.a1, lambda)), a.a2), x1), x2);
    V y3 = r.sub(r.sub(r.neg(r.mul(r.add(lambda, a.a1), x3)), nu), a.a3);
    return {x3, y3, r.one()};
  }

  ProjectivePoint<V> mul(const ProjectivePoint<V>& p, long n) const {
    ProjectivePoint<V> base = n < 0 ? neg(p) : p;
    unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
    ProjectivePoint<V> acc = zero();
    while (k > 0) {
      if (k & 1) acc = add(acc, base);
      k >>= 1;
      if (k) base = add(base, base);
    }
    return acc;
  }

  /// Projective equality over a field.
  bool same(const ProjectivePoint<V>& p, const ProjectivePoint<V>& q) const {
    auto cross = [&](const V& a1, const V& b1, const V& a2, const V& b2) {
      return r.equal(r.mul(a1, b2), r.mul(a2, b1));
    };
    return cross(p.x, p.y, q.x, q.y) && cross(p.x, p.z, q.x, q.z) && cross(p.y, p.z, q.y, q.z);
  }
};

inline void require_field(const RingDescriptor& ring) {
  if (!ring.is_field()) throw NonField("chord-tangent addition needs a field, got " + ring.to_string());
}

inline ProjPoint oracle_add(const WeierstrassCurve& c, const ProjPoint& p, const ProjPoint& q) {
  require_field(c.ring());
  require_ring(c, p);
  require_ring(c, q);
  if (!curve_contains(c, p) || !curve_contains(c, q)) throw NotOnCurve("oracle_add: point not on the curve");
  if (!is_smooth_point(c, p) || !is_smooth_point(c, q)) throw SingularPoint("oracle_add: singular point");
  FieldCurve<ElementCoeffs> fc{ElementCoeffs(c.ring()), c.a()};
  return fc.add(p, q);
}

inline ProjPoint oracle_mul(const WeierstrassCurve& c, const ProjPoint& p, long n) {
  require_field(c.ring());
  if (!curve_contains(c, p)) throw NotOnCurve("oracle_mul: point not on the curve");
  if (!is_smooth_point(c, p)) throw SingularPoint("oracle_mul: singular point");
  FieldCurve<ElementCoeffs> fc{ElementCoeffs(c.ring()), c.a()};
  return fc.mul(p, n);
}

// ---------------------------------------------------------------------------
// Multiplication by n through the triples.

/// Supplies the specialized n-triple for a curve.
class TripleSource {
 public:
  virtual ~TripleSource() = default;
  virtual SpecializedTriple triple(const WeierstrassCurve& c, long n) = 0;
};

/// Runs the specialized ladder over the curve's ring, memoized per curve.
class LadderTripleSource : public TripleSource {
 public:
  SpecializedTriple triple(const WeierstrassCurve& c, long n) override {
    if (!ladder_ || !(*curve_ == c)) {
      curve_ = std::make_unique<WeierstrassCurve>(c);
      ladder_ = std::make_unique<SpecializedLadder>(c.a());
      memo_.clear();
    }
    auto it = memo_.find(n);
    if (it == memo_.end()) it = memo_.emplace(n, ladder_->triple(n)).first;
    return it->second;
  }

 private:
  std::unique_ptr<WeierstrassCurve> curve_;
  std::unique_ptr<SpecializedLadder> ladder_;
  std::map<long, SpecializedTriple> memo_;
};

/// Specializes generic triples supplied by a callback (e.g. the on-disk cache).
class GenericTripleSource : public TripleSource {
 public:
  explicit GenericTripleSource(std::function<MulTriple(long)> generic) : generic_(std::move(generic)) {}

  SpecializedTriple triple(const WeierstrassCurve& c, long n) override {
    return specialize_triple(generic_(n), c.a());
  }

 private:
  std::function<MulTriple(long)> generic_;
};

inline ProjPoint mul_point(const WeierstrassCurve& c, const ProjPoint& p, long n, TripleSource& source) {
  require_ring(c, p);
  if (!curve_contains(c, p)) throw NotOnCurve("point " + to_string(p) + " is not on the curve");
  if (!is_smooth_point(c, p)) throw SingularPoint("point " + to_string(p) + " is not in the smooth locus");
  SpecializedTriple t = source.triple(c, n);
  std::array<RingElement, 3> coords{p.x, p.y, p.z};
  auto v = eval_triple(t, coords);
  ProjPoint out{v[0], v[1], v[2]};
  if (!unit_ideal_test(std::span<const RingElement>(v)))
    throw ExactnessViolation("n*P coordinates do not generate the unit ideal");
  if (!c.w(out.x, out.y, out.z).is_zero()) throw ExactnessViolation("n*P is not on the curve");
  return out;
}

inline ProjPoint mul_point(const WeierstrassCurve& c, const ProjPoint& p, long n) {
  LadderTripleSource source;
  return mul_point(c, p, n, source);
}

/// n*P = (Phi_n Psi_n : Omega_n : Psi_n^3) at (x/z, y/z); needs z a unit.
inline ProjPoint mul_point_affine(const WeierstrassCurve& c, const ProjPoint& p, long n) {
  require_ring(c, p);
  if (!is_unit(p.z)) throw UsageError("affine multiplication needs a unit z coordinate");
  if (!curve_contains(c, p)) throw NotOnCurve("point " + to_string(p) + " is not on the curve");
  if (!is_smooth_point(c, p)) throw SingularPoint("point " + to_string(p) + " is not in the smooth locus");
  if (n == 0) return zero_point(c.ring());
  RingElement zi = ring_inverse(p.z);
  RingDescriptor work = halving_ring(c.ring());
  PointLadder<ElementCoeffs> pl(ElementCoeffs(work), transfer(c.a(), work), transfer(p.x * zi, work),
                                transfer(p.y * zi, work));
  ProjPoint out{transfer(pl.phi_psi(n), c.ring()), transfer(pl.omega(n), c.ring()),
                transfer(pl.psi_cubed(n), c.ring())};
  if (!unit_ideal_test({out.x, out.y, out.z})) throw ExactnessViolation("n*P coordinates do not generate the unit ideal");
  return out;
}

/// Psi_n at the affine point (x, y) through the specialized point ladder.
inline RingElement psi_at(const WeierstrassCurve& c, const RingElement& x, const RingElement& y, long n) {
  PointLadder<ElementCoeffs> pl(ElementCoeffs(c.ring()), c.a(), x, y);
  return pl.psi(n);
}

/// Whether P is a Z/nZ-embedding: P = (a : b : 1), Psi_n(a, b) = 0 and
/// Psi_d(a, b) a unit for every proper divisor d of n.
inline bool is_Zn_embedding(const WeierstrassCurve& c, const ProjPoint& p, long n) {
  if (n < 2) throw UsageError("is_Zn_embedding needs n >= 2");
  require_ring(c, p);
  if (!is_smooth_curve(c)) throw UsageError("is_Zn_embedding needs a smooth curve");
  if (!curve_contains(c, p)) throw NotOnCurve("point " + to_string(p) + " is not on the curve");
  if (!is_unit(p.z)) return false;
  RingElement zi = ring_inverse(p.z);
  RingElement a = p.x * zi, b = p.y * zi;
  PointLadder<ElementCoeffs> pl(ElementCoeffs(c.ring()), c.a(), a, b);
  if (!pl.psi(n).is_zero()) return false;
  for (long d = 1; d < n; ++d)
    if (n % d == 0 && !is_unit(pl.psi(d))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// JSON: {"ring": ..., "a": [...], "point": [...]}.

inline Json to_json(const WeierstrassCurve& c, const std::optional<ProjPoint>& p = std::nullopt) {
  const auto& a = c.a();
  Json j{{"ring", c.ring().to_string()},
         {"a", Json::array({a.a1.to_string(), a.a2.to_string(), a.a3.to_string(), a.a4.to_string(),
                            a.a6.to_string()})}};
  if (p) j["point"] = Json::array({p->x.to_string(), p->y.to_string(), p->z.to_string()});
  return j;
}

inline std::pair<WeierstrassCurve, std::optional<ProjPoint>> curve_from_json(const Json& j) {
  RingDescriptor ring = RingDescriptor::parse(j.at("ring").get<std::string>());
  auto coeffs = j.at("a").get<std::vector<std::string>>();
  WeierstrassCurve c = WeierstrassCurve::parse(ring, coeffs);
  std::optional<ProjPoint> p;
  if (j.contains("point")) p = parse_point(ring, j.at("point").get<std::vector<std::string>>());
  return {std::move(c), std::move(p)};
}

}  // namespace mulnpoly
