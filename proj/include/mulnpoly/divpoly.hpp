#pragma once

// Division polynomials Psi_n, Phi_n, Omega_n on a Weierstrass curve
//
//   W' = Y^2 + a1*X*Y + a3*Y - X^3 - a2*X^2 - a4*X - a6
//
// over any coefficient-ring policy R. Psi_n is kept as a pure-X core c_|n|:
// Psi_n = sgn(n)*c_|n| for odd n and Psi_n = Psi2*sgn(n)*c_|n| for even n,
// where Psi2 = 2Y + a1*X + a3 and Psi2^2 = F = 4X^3 + b2*X^2 + 2*b4*X + b6
// modulo W'. The same core recurrences run on pure-X polynomials (XPolyOps)
// and on values at a fixed X (PointOps).

#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mulnpoly/coeff_rings.hpp"
#include "mulnpoly/errors.hpp"
#include "mulnpoly/mpoly.hpp"
#include "mulnpoly/rings.hpp"
#include "mulnpoly/upoly.hpp"

namespace mulnpoly {

template <class V>
struct CurveCoefficients {
  V a1, a2, a3, a4, a6;
};

template <class R>
struct BInvariants {
  using V = typename R::value_type;
  V b2, b4, b6, b8;

  static BInvariants compute(const R& r, const CurveCoefficients<V>& a) {
    auto m = [&](const V& x, const V& y) { return r.mul(x, y); };
    auto k = [&](long c, const V& x) { return r.mul(r.from_int(c), x); };
    BInvariants b;
    b.b2 = r.add(m(a.a1, a.a1), k(4, a.a2));
    b.b4 = r.add(k(2, a.a4), m(a.a1, a.a3));
    b.b6 = r.add(m(a.a3, a.a3), k(4, a.a6));
    V b8 = r.add(m(m(a.a1, a.a1), a.a6), k(4, m(a.a2, a.a6)));
    b8 = r.sub(b8, m(m(a.a1, a.a3), a.a4));
    b8 = r.add(b8, m(a.a2, m(a.a3, a.a3)));
    b.b8 = r.sub(b8, m(a.a4, a.a4));
    return b;
  }

  V discriminant(const R& r) const {
    auto m = [&](const V& x, const V& y) { return r.mul(x, y); };
    auto k = [&](long c, const V& x) { return r.mul(r.from_int(c), x); };
    V d = r.neg(m(m(b2, b2), b8));
    d = r.sub(d, k(8, m(m(b4, b4), b4)));
    d = r.sub(d, k(27, m(b6, b6)));
    return r.add(d, k(9, m(m(b2, b4), b6)));
  }
};

/// Pure-X polynomials over R.
template <class R>
class XPolyOps {
 public:
  using Ring = R;
  using V = typename R::value_type;
  using T = upoly::Dense<R>;

  explicit XPolyOps(R ring) : r_(std::move(ring)) {}

  const R& ring() const { return r_; }
  T zero() const { return {}; }
  T constant(const V& c) const { return upoly::constant(r_, c); }
  T x() const { return upoly::monomial(r_, 1, r_.one()); }
  T add(const T& a, const T& b) const { return upoly::add(r_, a, b); }
  T sub(const T& a, const T& b) const { return upoly::sub(r_, a, b); }
  T mul(const T& a, const T& b) const { return upoly::mul(r_, a, b); }
  T neg(const T& a) const { return upoly::neg(r_, a); }
  T half(const T& a) const { return upoly::half(r_, a); }
  T scale(const V& c, const T& a) const { return upoly::scale(r_, c, a); }
  /// a0 + a1*X + ... from low to high.
  T from_coefficients(std::vector<V> cs) const {
    upoly::trim(r_, cs);
    return cs;
  }

 private:
  R r_;
};

/// Values at a fixed X = x0.
template <class R>
class PointOps {
 public:
  using Ring = R;
  using V = typename R::value_type;
  using T = V;

  PointOps(R ring, V x0) : r_(std::move(ring)), x0_(std::move(x0)) {}

  const R& ring() const { return r_; }
  T zero() const { return r_.zero(); }
  T constant(const V& c) const { return c; }
  T x() const { return x0_; }
  T add(const T& a, const T& b) const { return r_.add(a, b); }
  T sub(const T& a, const T& b) const { return r_.sub(a, b); }
  T mul(const T& a, const T& b) const { return r_.mul(a, b); }
  T neg(const T& a) const { return r_.neg(a); }
  T half(const T& a) const { return r_.half(a); }
  T scale(const V& c, const T& a) const { return r_.mul(c, a); }
  T from_coefficients(const std::vector<V>& cs) const {
    T acc = r_.zero();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = r_.add(r_.mul(acc, x0_), *it);
    return acc;
  }

 private:
  R r_;
  V x0_;
};

/// An element p + q*Psi2 with p, q pure in X.
template <class T>
struct Split {
  T p, q;
};

/// An element p0 + p1*Y with p0, p1 pure in X.
template <class T>
struct YPair {
  T p0, p1;
};

/// Memoized parity-structured cores and the derived Psi, Phi, Omega.
template <class Ops>
class CoreLadder {
 public:
  using R = typename Ops::Ring;
  using V = typename Ops::V;
  using T = typename Ops::T;

  CoreLadder(Ops ops, CurveCoefficients<V> a) : ops_(std::move(ops)), a_(std::move(a)) {
    b_ = BInvariants<R>::compute(ops_.ring(), a_);
    init();
  }

  /// Cores over a ring in which b2, b4, b6, b8 are given directly. Only the
  /// pure-X quantities are meaningful; omega() and h() take a1 = a3 = 0.
  CoreLadder(Ops ops, BInvariants<R> b) : ops_(std::move(ops)), b_(std::move(b)) {
    const R& r = ops_.ring();
    a_ = {r.zero(), r.zero(), r.zero(), r.zero(), r.zero()};
    init();
  }

  const Ops& ops() const { return ops_; }
  const CurveCoefficients<V>& coefficients() const { return a_; }
  const BInvariants<R>& b() const { return b_; }
  /// F = Psi2^2 reduced modulo W'.
  const T& f() const { return f_; }
  /// a1*X + a3.
  const T& h() const { return h_; }

  /// Fill cores 0..n in increasing order.
  void fill(long n) {
    for (long k = 5; k <= n; ++k) core(k);
  }

  /// c_n for n >= 0.
  const T& core(long n) {
    if (n < 0) throw UsageError("core index must be non-negative");
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    const long k = n / 2;
    T value;
    if (n % 2 == 1) {
      // c_{2k+1} = c_{k+2} c_k^3 [F^2, k even] - c_{k-1} c_{k+1}^3 [F^2, k odd]
      T left = ops_.mul(core(k + 2), cube(core(k)));
      T right = ops_.mul(core(k - 1), cube(core(k + 1)));
      if (k % 2 == 0)
        left = ops_.mul(left, f2_);
      else
        right = ops_.mul(right, f2_);
      value = ops_.sub(left, right);
    } else {
      // c_{2k} = c_k (c_{k+2} c_{k-1}^2 - c_{k-2} c_{k+1}^2)
      T inner = ops_.sub(ops_.mul(core(k + 2), square(core(k - 1))), ops_.mul(core(k - 2), square(core(k + 1))));
      value = ops_.mul(core(k), inner);
    }
    return memo_.emplace(n, std::move(value)).first->second;
  }

  /// sgn(n) * c_|n|.
  T signed_core(long n) {
    const T& c = core(std::labs(n));
    return n < 0 ? ops_.neg(c) : c;
  }

  Split<T> psi(long n) {
    if (odd(n)) return {signed_core(n), ops_.zero()};
    return {ops_.zero(), signed_core(n)};
  }

  /// Phi_{-n} = Phi_n.
  const T& phi(long n) {
    n = std::labs(n);
    if (auto it = phi_memo_.find(n); it != phi_memo_.end()) return it->second;
    const T& sc = core(n);
    T cross = ops_.mul(core(n - 1 >= 0 ? n - 1 : 1), core(n + 1));
    if (n == 0) cross = ops_.neg(cross);
    T value = odd(n) ? ops_.sub(ops_.mul(ops_.x(), square(sc)), ops_.mul(f_, cross))
                     : ops_.sub(ops_.mul(ops_.mul(ops_.x(), f_), square(sc)), cross);
    return phi_memo_.emplace(n, std::move(value)).first->second;
  }

  Split<T> psi_cubed(long n) {
    T c3 = core_cubed(n);
    if (n < 0) c3 = ops_.neg(c3);
    if (odd(n)) return {std::move(c3), ops_.zero()};
    return {ops_.zero(), ops_.mul(f_, c3)};
  }

  Split<T> phi_psi(long n) {
    T v = ops_.mul(phi(n), signed_core(n));
    if (odd(n)) return {std::move(v), ops_.zero()};
    return {ops_.zero(), std::move(v)};
  }

  YPair<T> omega(long n) {
    const R& r = ops_.ring();
    if (n == 0) return {ops_.constant(r.one()), ops_.zero()};
    T sc = signed_core(n);
    T d = omega_cross(n);
    const T& ph = phi(n);
    if (!odd(n)) {
      T sc3 = n < 0 ? ops_.neg(core_cubed(n)) : core_cubed(n);
      T g = ops_.add(ops_.scale(a_.a1, ops_.mul(ph, sc)), ops_.scale(a_.a3, ops_.mul(f_, sc3)));
      T p0 = ops_.half(ops_.sub(d, ops_.mul(h_, g)));
      return {std::move(p0), ops_.neg(g)};
    }
    T num = ops_.sub(ops_.mul(h_, d), ops_.scale(a_.a1, ops_.mul(ph, sc)));
    num = ops_.sub(num, ops_.scale(a_.a3, n < 0 ? ops_.neg(core_cubed(n)) : core_cubed(n)));
    return {ops_.half(num), std::move(d)};
  }

  /// Psi_{n+2} Psi_{n-1}^2 - Psi_{n-2} Psi_{n+1}^2 with the Psi2 factors
  /// removed: the Y-part of 2*Omega_n (odd n) or its pure-X part (even n).
  T omega_cross(long n) {
    return ops_.sub(ops_.mul(signed_core(n + 2), square(signed_core(n - 1))),
                    ops_.mul(signed_core(n - 2), square(signed_core(n + 1))));
  }

  /// p + q*Psi2 as p0 + p1*Y.
  YPair<T> to_ypair(const Split<T>& s) const {
    return {ops_.add(s.p, ops_.mul(s.q, h_)), ops_.add(s.q, s.q)};
  }

 private:
  static bool odd(long n) { return n % 2 != 0; }

  void init() {
    const R& r = ops_.ring();
    auto k = [&](long c, const V& v) { return r.mul(r.from_int(c), v); };
    f_ = ops_.from_coefficients({b_.b6, k(2, b_.b4), b_.b2, r.from_int(4)});
    f2_ = ops_.mul(f_, f_);
    h_ = ops_.from_coefficients({a_.a3, a_.a1});
    memo_.emplace(0, ops_.zero());
    memo_.emplace(1, ops_.constant(r.one()));
    memo_.emplace(2, ops_.constant(r.one()));
    memo_.emplace(3, ops_.from_coefficients({b_.b8, k(3, b_.b6), k(3, b_.b4), b_.b2, r.from_int(3)}));
    V c4_1 = r.sub(r.mul(b_.b2, b_.b8), r.mul(b_.b4, b_.b6));
    V c4_0 = r.sub(r.mul(b_.b4, b_.b8), r.mul(b_.b6, b_.b6));
    memo_.emplace(4, ops_.from_coefficients({c4_0, c4_1, k(10, b_.b8), k(10, b_.b6), k(5, b_.b4), b_.b2,
                                             r.from_int(2)}));
  }

  const T& core_cubed(long n) {
    n = std::labs(n);
    if (auto it = cube_memo_.find(n); it != cube_memo_.end()) return it->second;
    return cube_memo_.emplace(n, cube(core(n))).first->second;
  }
  T square(const T& v) const { return ops_.mul(v, v); }
  T cube(const T& v) const { return ops_.mul(square(v), v); }

  Ops ops_;
  CurveCoefficients<V> a_;
  BInvariants<R> b_;
  T f_, f2_, h_;
  std::map<long, T> memo_;
  std::map<long, T> phi_memo_;
  std::map<long, T> cube_memo_;
};

/// Residue of R[X,Y]/(W') with Y-degree <= 1: p0(X) + p1(X)*Y.
template <class R>
struct YRep {
  upoly::Dense<R> p0, p1;
};

/// Residue with X-degree <= 2: q0(Y) + q1(Y)*X + q2(Y)*X^2.
template <class R>
struct XRep {
  std::array<upoly::Dense<R>, 3> q;

  bool is_zero() const { return q[0].empty() && q[1].empty() && q[2].empty(); }
};

/// Arithmetic and canonical forms in R[X,Y]/(W').
template <class R>
class CurveRing {
 public:
  using V = typename R::value_type;
  using D = upoly::Dense<R>;

  CurveRing(R ring, CurveCoefficients<V> a) : r_(std::move(ring)), a_(std::move(a)) {
    g_ = upoly::Dense<R>{a_.a6, a_.a4, a_.a2, r_.one()};
    upoly::trim(r_, g_);
    h_ = upoly::Dense<R>{a_.a3, a_.a1};
    upoly::trim(r_, h_);
  }

  const R& ring() const { return r_; }
  const CurveCoefficients<V>& coefficients() const { return a_; }

  YRep<R> add(const YRep<R>& u, const YRep<R>& v) const {
    return {upoly::add(r_, u.p0, v.p0), upoly::add(r_, u.p1, v.p1)};
  }
  YRep<R> sub(const YRep<R>& u, const YRep<R>& v) const {
    return {upoly::sub(r_, u.p0, v.p0), upoly::sub(r_, u.p1, v.p1)};
  }
  YRep<R> neg(const YRep<R>& u) const { return {upoly::neg(r_, u.p0), upoly::neg(r_, u.p1)}; }

  YRep<R> mul(const YRep<R>& u, const YRep<R>& v) const {
    D uv11 = upoly::mul(r_, u.p1, v.p1);
    D c0 = upoly::add(r_, upoly::mul(r_, u.p0, v.p0), upoly::mul(r_, uv11, g_));
    D c1 = upoly::add(r_, upoly::mul(r_, u.p0, v.p1), upoly::mul(r_, u.p1, v.p0));
    c1 = upoly::sub(r_, c1, upoly::mul(r_, uv11, h_));
    return {std::move(c0), std::move(c1)};
  }

  bool equal(const YRep<R>& u, const YRep<R>& v) const {
    return upoly::equal(r_, u.p0, v.p0) && upoly::equal(r_, u.p1, v.p1);
  }
  bool equal(const XRep<R>& u, const XRep<R>& v) const {
    for (int i = 0; i < 3; ++i)
      if (!upoly::equal(r_, u.q[i], v.q[i])) return false;
    return true;
  }

  /// The unique representative with X-degree at most 2.
  XRep<R> to_xrep(const YRep<R>& u) const {
    XRep<R> lo = horner_x(u.p0);
    XRep<R> hi = horner_x(u.p1);
    for (int i = 0; i < 3; ++i) lo.q[i] = upoly::add(r_, lo.q[i], upoly::shift(r_, hi.q[i], 1));
    return lo;
  }

  YRep<R> to_yrep(const XRep<R>& u) const {
    YRep<R> out;
    for (int i = 2; i >= 0; --i) {
      out = times_x(out);
      YRep<R> part = horner_y(u.q[i]);
      out = add(out, part);
    }
    return out;
  }

  /// min over stored monomials X^i Y^j of -(2i + 3j), with its coefficient.
  std::pair<long, V> ord0_and_leading(const XRep<R>& u) const {
    std::optional<long> best;
    V coeff = r_.zero();
    for (int i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < u.q[i].size(); ++j) {
        if (r_.is_zero(u.q[i][j])) continue;
        long w = 2L * i + 3L * static_cast<long>(j);
        if (!best || w > *best) {
          best = w;
          coeff = u.q[i][j];
        }
      }
    if (!best) throw UsageError("ord0 of the zero element is undefined");
    return {-*best, coeff};
  }

 private:
  // X * (q0 + q1 X + q2 X^2) with X^3 = Y^2 + a1 X Y + a3 Y - a2 X^2 - a4 X - a6.
  void step_x(XRep<R>& s) const {
    const D& q2 = s.q[2];
    D n0 = upoly::shift(r_, q2, 2);
    n0 = upoly::add(r_, n0, upoly::shift(r_, upoly::scale(r_, a_.a3, q2), 1));
    n0 = upoly::sub(r_, n0, upoly::scale(r_, a_.a6, q2));
    D n1 = upoly::add(r_, s.q[0], upoly::shift(r_, upoly::scale(r_, a_.a1, q2), 1));
    n1 = upoly::sub(r_, n1, upoly::scale(r_, a_.a4, q2));
    D n2 = upoly::sub(r_, s.q[1], upoly::scale(r_, a_.a2, q2));
    s.q = {std::move(n0), std::move(n1), std::move(n2)};
  }

  XRep<R> horner_x(const D& p) const {
    XRep<R> s;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      step_x(s);
      if (!r_.is_zero(*it)) {
        if (s.q[0].empty()) s.q[0].push_back(r_.zero());
        s.q[0][0] = r_.add(s.q[0][0], *it);
        upoly::trim(r_, s.q[0]);
      }
    }
    return s;
  }

  YRep<R> times_x(const YRep<R>& u) const { return {upoly::shift(r_, u.p0, 1), upoly::shift(r_, u.p1, 1)}; }

  // Y * (p0 + p1 Y) = p1 g + (p0 - p1 h) Y.
  YRep<R> times_y(const YRep<R>& u) const {
    return {upoly::mul(r_, u.p1, g_), upoly::sub(r_, u.p0, upoly::mul(r_, u.p1, h_))};
  }

  YRep<R> horner_y(const D& q) const {
    YRep<R> s;
    for (auto it = q.rbegin(); it != q.rend(); ++it) {
      s = times_y(s);
      s.p0 = upoly::add(r_, s.p0, upoly::constant(r_, *it));
    }
    return s;
  }

  R r_;
  CurveCoefficients<V> a_;
  D g_, h_;
};

/// The division-polynomial ladder in R[X,Y]/(W').
template <class R>
class DivPolyLadder {
 public:
  using V = typename R::value_type;
  using Ops = XPolyOps<R>;
  using T = typename Ops::T;

  DivPolyLadder(R ring, CurveCoefficients<V> a) : cores_(Ops(ring), a), curve_(ring, a) {}

  const R& ring() const { return curve_.ring(); }
  const CurveRing<R>& curve_ring() const { return curve_; }
  CoreLadder<Ops>& cores() { return cores_; }
  const BInvariants<R>& b() const { return cores_.b(); }

  void fill(long n) { cores_.fill(n); }

  YRep<R> psi(long n) { return from_pair(cores_.to_ypair(cores_.psi(n))); }
  YRep<R> phi(long n) { return {cores_.phi(n), {}}; }
  YRep<R> omega(long n) { return from_pair(cores_.omega(n)); }
  YRep<R> phi_psi(long n) { return from_pair(cores_.to_ypair(cores_.phi_psi(n))); }
  YRep<R> psi_cubed(long n) { return from_pair(cores_.to_ypair(cores_.psi_cubed(n))); }

  /// The pure-X core c_|n| together with the parity flag.
  const T& core(long n) { return cores_.core(std::labs(n)); }

 private:
  static YRep<R> from_pair(YPair<T> p) { return {std::move(p.p0), std::move(p.p1)}; }

  CoreLadder<Ops> cores_;
  CurveRing<R> curve_;
};

/// Generic coefficients a1..a6 as variables of Z[a1, a2, a3, a4, a6].
inline CurveCoefficients<MPoly> generic_coefficients() {
  const VarList& v = var_order::coefficients();
  return {mpoly_variable(v, "a1"), mpoly_variable(v, "a2"), mpoly_variable(v, "a3"), mpoly_variable(v, "a4"),
          mpoly_variable(v, "a6")};
}

using GenericLadder = DivPolyLadder<IntegerPolyCoeffs>;

inline GenericLadder make_generic_ladder() {
  return GenericLadder(IntegerPolyCoeffs(var_order::coefficients()), generic_coefficients());
}

/// Ring used to run a ladder whose Omega halving must be exact. Residue rings
/// with even modulus N are replaced by Z/2N; the result is reduced afterwards.
inline RingDescriptor halving_ring(const RingDescriptor& ring) {
  auto doubled = [](const Integer& n) -> std::optional<Integer> {
    if (mpz_even_p(n.get_mpz_t())) return Integer(n * 2);
    return std::nullopt;
  };
  if (ring.kind() == RingDescriptor::Kind::Residue) {
    if (auto m = doubled(ring.modulus())) return RingDescriptor::residue(*m);
  } else if (ring.kind() == RingDescriptor::Kind::Polynomial && ring.base().kind() == RingDescriptor::Kind::Residue) {
    if (auto m = doubled(ring.base().modulus()))
      return RingDescriptor::polynomial(RingDescriptor::residue(*m), ring.variables());
  }
  return ring;
}

/// Canonical representative of a in the ring `target` (same kind, modulus
/// possibly a multiple or divisor of a's modulus).
inline RingElement transfer(const RingElement& a, const RingDescriptor& target) {
  if (a.ring() == target) return a;
  switch (target.kind()) {
    case RingDescriptor::Kind::Residue:
      return RingElement(target, a.integer());
    case RingDescriptor::Kind::Polynomial:
      return RingElement::from_poly(target, a.poly());
    default:
      throw UsageError("cannot transfer " + a.ring().to_string() + " element to " + target.to_string());
  }
}

inline CurveCoefficients<RingElement> transfer(const CurveCoefficients<RingElement>& a, const RingDescriptor& t) {
  return {transfer(a.a1, t), transfer(a.a2, t), transfer(a.a3, t), transfer(a.a4, t), transfer(a.a6, t)};
}

/// XREP triple as MPoly parts in [a1..a6, Y] for the generic ladder.
inline std::array<MPoly, 3> xrep_parts(const XRep<IntegerPolyCoeffs>& u) {
  const VarList& target = var_order::affine_y();
  std::array<MPoly, 3> out;
  for (int i = 0; i < 3; ++i) {
    MPoly acc(target);
    for (std::size_t j = 0; j < u.q[i].size(); ++j)
      if (!u.q[i][j].is_zero()) acc += u.q[i][j].embed(target) * mpoly_variable(target, "Y", j);
    out[i] = std::move(acc);
  }
  return out;
}

/// YREP pair as MPoly parts in [a1..a6, X] for the generic ladder.
inline std::array<MPoly, 2> yrep_parts(const YRep<IntegerPolyCoeffs>& u) {
  const VarList& target = var_order::affine_x();
  auto conv = [&](const upoly::Dense<IntegerPolyCoeffs>& p) {
    MPoly acc(target);
    for (std::size_t j = 0; j < p.size(); ++j)
      if (!p[j].is_zero()) acc += p[j].embed(target) * mpoly_variable(target, "X", j);
    return acc;
  };
  return {conv(u.p0), conv(u.p1)};
}

/// {"form": "yrep"|"xrep", "parts": [...]}.
inline Json to_json(const YRep<IntegerPolyCoeffs>& u) {
  auto parts = yrep_parts(u);
  return Json{{"form", "yrep"}, {"parts", Json::array({to_json(parts[0]), to_json(parts[1])})}};
}

inline Json to_json(const XRep<IntegerPolyCoeffs>& u) {
  auto parts = xrep_parts(u);
  return Json{{"form", "xrep"},
              {"parts", Json::array({to_json(parts[0]), to_json(parts[1]), to_json(parts[2])})}};
}

/// Psi_n, Phi_n and Omega_n evaluated at an affine point (x, y).
template <class R>
struct PointDivisionValues {
  typename R::value_type psi, phi, omega;
};

/// Scalar ladder at a fixed point: O(log n) memo entries. Omega needs an
/// exact half() in R.
template <class R>
class PointLadder {
 public:
  using V = typename R::value_type;

  PointLadder(R ring, CurveCoefficients<V> a, V x, V y)
      : cores_(PointOps<R>(ring, x), a), y_(std::move(y)) {
    const R& r = cores_.ops().ring();
    psi2_ = r.add(r.add(r.add(y_, y_), r.mul(a.a1, x)), a.a3);
  }

  const R& ring() const { return cores_.ops().ring(); }

  V psi(long n) { return value(cores_.psi(n)); }
  V phi(long n) { return cores_.phi(n); }
  V phi_psi(long n) { return value(cores_.phi_psi(n)); }
  V psi_cubed(long n) { return value(cores_.psi_cubed(n)); }
  V omega(long n) {
    auto w = cores_.omega(n);
    return ring().add(w.p0, ring().mul(w.p1, y_));
  }

 private:
  V value(const Split<V>& s) const { return ring().add(s.p, ring().mul(s.q, psi2_)); }

  CoreLadder<PointOps<R>> cores_;
  V y_;
  V psi2_;
};

}  // namespace mulnpoly
