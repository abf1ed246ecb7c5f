#pragma once

// The triples (alpha_n, beta_n, gamma_n): homogenizations with z^(n^2) of the
// X-degree <= 2 representatives of Phi_n*Psi_n, Omega_n and Psi_n^3.

#include <array>
#include <cstdlib>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mulnpoly/coeff_rings.hpp"
#include "mulnpoly/divpoly.hpp"
#include "mulnpoly/errors.hpp"
#include "mulnpoly/mpoly.hpp"
#include "mulnpoly/rings.hpp"

namespace mulnpoly {

inline constexpr const char* kSignConvention = "beta-monic";

/// A, B, C as X-degree <= 2 representatives over R.
template <class R>
struct XRepTriple {
  long n = 0;
  XRep<R> a, b, c;
};

/// Builds (A_n, B_n, C_n), flipping all signs if needed so that the Y^(n^2)
/// coefficient of B_n is +1.
template <class R>
XRepTriple<R> build_xrep_triple(DivPolyLadder<R>& ladder, long n) {
  const R& r = ladder.ring();
  const CurveRing<R>& cr = ladder.curve_ring();
  XRepTriple<R> t;
  t.n = n;
  if (n == 0) {
    t.b.q[0] = upoly::constant(r, r.one());
    return t;
  }
  t.a = cr.to_xrep(ladder.phi_psi(n));
  t.b = cr.to_xrep(ladder.omega(n));
  t.c = cr.to_xrep(ladder.psi_cubed(n));
  const std::size_t top = static_cast<std::size_t>(n * n);
  const auto& b0 = t.b.q[0];
  if (b0.size() != top + 1) throw ExactnessViolation("Omega_n representative has unexpected Y-degree");
  if (r.equal(b0[top], r.neg(r.one())) && !r.equal(b0[top], r.one())) {
    for (auto* part : {&t.a, &t.b, &t.c})
      for (auto& q : part->q) q = upoly::neg(r, q);
  } else if (!r.equal(b0[top], r.one())) {
    throw ExactnessViolation("Y^(n^2) coefficient of B_n is not a unit sign");
  }
  return t;
}

/// Generic triple over Z[a1..a6] in variables [a1, a2, a3, a4, a6, x, y, z],
/// or a specialized triple over a concrete ring in [x, y, z].
template <class C>
struct BasicTriple {
  long n = 0;
  BasicMPoly<C> alpha, beta, gamma;
};

using MulTriple = BasicTriple<Integer>;

struct SpecializedTriple {
  RingDescriptor ring;
  long n = 0;
  RingPoly alpha, beta, gamma;
};

namespace detail {

inline MPoly homogenize_generic(const XRep<IntegerPolyCoeffs>& u, long n) {
  const VarList& target = var_order::generic();
  const MonomialLayout layout(target.size());
  const MonomialLayout src(var_order::coefficients().size());
  const long deg = n * n;
  std::vector<MPoly::Term> raw;
  std::vector<std::uint64_t> e(target.size());
  for (int i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < u.q[i].size(); ++j) {
      long zexp = deg - i - static_cast<long>(j);
      if (u.q[i][j].is_zero()) continue;
      if (zexp < 0) throw ExactnessViolation("negative z exponent while homogenizing");
      for (const auto& t : u.q[i][j].terms()) {
        for (std::size_t k = 0; k < 5; ++k) e[k] = src.get(t.key, k);
        e[5] = static_cast<std::uint64_t>(i);
        e[6] = j;
        e[7] = static_cast<std::uint64_t>(zexp);
        raw.push_back(MPoly::Term{layout.pack(e), t.coeff});
      }
    }
  return MPoly::from_raw(target, std::move(raw));
}

inline RingElement to_element(const RingElement& c, const RingDescriptor& ring) { return transfer(c, ring); }

inline RingElement to_element(std::uint64_t c, const RingDescriptor& ring) {
  return RingElement(ring, Integer(static_cast<unsigned long>(c)));
}

template <class R>
RingPoly homogenize_element(const XRep<R>& u, long n, const RingDescriptor& ring) {
  const VarList& target = var_order::projective();
  const MonomialLayout layout(target.size());
  const long deg = n * n;
  std::vector<RingPoly::Term> raw;
  for (int i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < u.q[i].size(); ++j) {
      RingElement c = to_element(u.q[i][j], ring);
      if (c.is_zero()) continue;
      long zexp = deg - i - static_cast<long>(j);
      if (zexp < 0) throw ExactnessViolation("negative z exponent while homogenizing");
      std::array<std::uint64_t, 3> e{static_cast<std::uint64_t>(i), j, static_cast<std::uint64_t>(zexp)};
      raw.push_back(RingPoly::Term{layout.pack(e), std::move(c)});
    }
  return RingPoly::from_raw(target, std::move(raw));
}

}  // namespace detail

/// Checks homogeneity of degree n^2 in (x, y, z), alpha, gamma in (x, z),
/// beta - y^(n^2) in (x, z). Throws ExactnessViolation naming the failure.
template <class C>
void check_triple_invariants(const BasicTriple<C>& t) {
  const std::size_t nv = t.alpha.nvars();
  if (nv < 3) throw UsageError("triple polynomials need x, y, z");
  const std::size_t ix = nv - 3, iy = nv - 2, iz = nv - 1;
  const std::uint64_t deg = static_cast<std::uint64_t>(t.n * t.n);
  auto check = [&](const BasicMPoly<C>& p, const char* name, bool is_beta) {
    bool saw_top = false;
    for (const auto& term : p.terms()) {
      const auto& lay = p.layout();
      std::uint64_t ex = lay.get(term.key, ix), ey = lay.get(term.key, iy), ez = lay.get(term.key, iz);
      if (ex + ey + ez != deg)
        throw ExactnessViolation(std::string(name) + " is not homogeneous of degree n^2 in (x, y, z)");
      if (ex == 0 && ez == 0) {
        if (!is_beta) throw ExactnessViolation(std::string(name) + " is not in the ideal (x, z)");
        bool only_y = true;
        for (std::size_t k = 0; k < ix; ++k)
          if (lay.get(term.key, k) != 0) only_y = false;
        if (!only_y) throw ExactnessViolation("beta - y^(n^2) is not in the ideal (x, z)");
        if (!(coeff_to_string(term.coeff) == "1")) throw ExactnessViolation("y^(n^2) coefficient of beta is not 1");
        saw_top = true;
      }
    }
    if (is_beta && !saw_top) throw ExactnessViolation("beta has no y^(n^2) term");
  };
  check(t.alpha, "alpha", false);
  check(t.beta, "beta", true);
  check(t.gamma, "gamma", false);
}

/// The generic triple over Z[a1, a2, a3, a4, a6] from the big-integer
/// ladder. build_triple(n) in generic_fast.hpp is the fast route.
inline MulTriple build_triple(long n, GenericLadder& ladder) {
  const VarList& v = var_order::generic();
  MulTriple t;
  t.n = n;
  if (n == 0) {
    t.alpha = MPoly(v);
    t.beta = MPoly::constant(v, Integer(1));
    t.gamma = MPoly(v);
    return t;
  }
  XRepTriple<IntegerPolyCoeffs> x = build_xrep_triple(ladder, n);
  t.alpha = detail::homogenize_generic(x.a, n);
  t.beta = detail::homogenize_generic(x.b, n);
  t.gamma = detail::homogenize_generic(x.c, n);
  check_triple_invariants(t);
  return t;
}


inline CurveCoefficients<RingElement> parse_coefficients(const RingDescriptor& ring, std::span<const std::string> text) {
  if (text.size() != 5) throw UsageError("expected five curve coefficients a1,a2,a3,a4,a6");
  return {RingElement::parse(ring, text[0]), RingElement::parse(ring, text[1]), RingElement::parse(ring, text[2]),
          RingElement::parse(ring, text[3]), RingElement::parse(ring, text[4])};
}

inline std::map<std::string, RingElement> coefficient_bindings(const CurveCoefficients<RingElement>& a) {
  return {{"a1", a.a1}, {"a2", a.a2}, {"a3", a.a3}, {"a4", a.a4}, {"a6", a.a6}};
}

inline const RingDescriptor& common_ring(const CurveCoefficients<RingElement>& a) {
  const RingDescriptor& r = a.a1.ring();
  for (const RingElement* e : {&a.a2, &a.a3, &a.a4, &a.a6})
    if (!(e->ring() == r)) throw UsageError("curve coefficients lie in different rings");
  return r;
}

/// Substitutes a1..a6 into a generic triple.
inline SpecializedTriple specialize_triple(const MulTriple& t, const CurveCoefficients<RingElement>& a) {
  const RingDescriptor& ring = common_ring(a);
  auto bind = coefficient_bindings(a);
  const VarList& xyz = var_order::projective();
  SpecializedTriple s{ring, t.n, poly_specialize(t.alpha, bind, xyz, ring), poly_specialize(t.beta, bind, xyz, ring),
                      poly_specialize(t.gamma, bind, xyz, ring)};
  check_triple_invariants(BasicTriple<RingElement>{s.n, s.alpha, s.beta, s.gamma});
  return s;
}

/// Specialized ladder over the curve's ring. Even residue moduli N run in
/// Z/2N so that the Omega halving stays exact, and are reduced at the end.
/// Residue rings whose working modulus fits in a word use word arithmetic.
class SpecializedLadder {
 public:
  explicit SpecializedLadder(const CurveCoefficients<RingElement>& a)
      : ring_(common_ring(a)), work_(halving_ring(ring_)), ladder_(make_ladder(a, work_)) {}

  const RingDescriptor& ring() const { return ring_; }

  SpecializedTriple triple(long n) {
    SpecializedTriple s{ring_, n, {}, {}, {}};
    if (n == 0) {
      const VarList& xyz = var_order::projective();
      s.alpha = RingPoly(xyz);
      s.beta = RingPoly::constant(xyz, RingElement::one(ring_));
      s.gamma = RingPoly(xyz);
      return s;
    }
    std::visit(
        [&](auto& ladder) {
          auto x = build_xrep_triple(ladder, n);
          s.alpha = detail::homogenize_element(x.a, n, ring_);
          s.beta = detail::homogenize_element(x.b, n, ring_);
          s.gamma = detail::homogenize_element(x.c, n, ring_);
        },
        ladder_);
    check_triple_invariants(BasicTriple<RingElement>{s.n, s.alpha, s.beta, s.gamma});
    return s;
  }

 private:
  using Ladder = std::variant<DivPolyLadder<ElementCoeffs>, DivPolyLadder<SmallModCoeffs>>;

  static Ladder make_ladder(const CurveCoefficients<RingElement>& a, const RingDescriptor& work) {
    if (work.kind() == RingDescriptor::Kind::Residue && work.modulus() < static_cast<unsigned long>(SmallModCoeffs::kLimit)) {
      SmallModCoeffs f(work.modulus().get_ui());
      auto w = [&](const RingElement& c) { return f.from_integer(transfer(c, work).integer()); };
      return DivPolyLadder<SmallModCoeffs>(f, {w(a.a1), w(a.a2), w(a.a3), w(a.a4), w(a.a6)});
    }
    return DivPolyLadder<ElementCoeffs>(ElementCoeffs(work), transfer(a, work));
  }

  RingDescriptor ring_;
  RingDescriptor work_;
  Ladder ladder_;
};

inline SpecializedTriple build_specialized_triple(long n, const CurveCoefficients<RingElement>& a) {
  SpecializedLadder l(a);
  return l.triple(n);
}

/// (alpha(P), beta(P), gamma(P)) with no normalization.
inline std::array<RingElement, 3> eval_triple(const SpecializedTriple& t, std::span<const RingElement> point) {
  if (point.size() != 3) throw UsageError("point needs three coordinates");
  return {evaluate(t.alpha, point, t.ring), evaluate(t.beta, point, t.ring), evaluate(t.gamma, point, t.ring)};
}

/// Evaluates an XREP triple at (x : y : z) without building polynomials.
template <class R>
std::array<typename R::value_type, 3> eval_xrep_triple(const R& r, const XRepTriple<R>& t,
                                                       const std::array<typename R::value_type, 3>& p) {
  using V = typename R::value_type;
  const std::size_t deg = static_cast<std::size_t>(t.n * t.n);
  std::vector<V> yp(deg + 1), zp(deg + 1);
  yp[0] = r.one();
  zp[0] = r.one();
  for (std::size_t k = 1; k <= deg; ++k) {
    yp[k] = r.mul(yp[k - 1], p[1]);
    zp[k] = r.mul(zp[k - 1], p[2]);
  }
  const std::array<V, 3> xp{r.one(), p[0], r.mul(p[0], p[0])};
  auto one = [&](const XRep<R>& u) {
    V acc = r.zero();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < u.q[i].size(); ++j) {
        if (r.is_zero(u.q[i][j])) continue;
        if (i + j > deg) throw ExactnessViolation("XREP term exceeds degree n^2");
        acc = r.add(acc, r.mul(u.q[i][j], r.mul(xp[i], r.mul(yp[j], zp[deg - i - j]))));
      }
    return acc;
  };
  return {one(t.a), one(t.b), one(t.c)};
}

// ---------------------------------------------------------------------------
// JSON.

inline Json to_json(const MulTriple& t) {
  return Json{{"n", t.n},
              {"vars", t.alpha.vars().names()},
              {"alpha", to_json(t.alpha)},
              {"beta", to_json(t.beta)},
              {"gamma", to_json(t.gamma)},
              {"sign_convention", kSignConvention}};
}

inline MulTriple triple_from_json(const Json& j) {
  if (!j.contains("sign_convention") || j.at("sign_convention") != kSignConvention)
    throw UsageError("triple JSON has an unknown sign convention");
  MulTriple t;
  t.n = j.at("n").get<long>();
  t.alpha = mpoly_from_json(j.at("alpha"));
  t.beta = mpoly_from_json(j.at("beta"));
  t.gamma = mpoly_from_json(j.at("gamma"));
  std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
  if (!(VarList(vars) == t.alpha.vars()) || !(t.alpha.vars() == t.beta.vars()) || !(t.beta.vars() == t.gamma.vars()))
    throw UsageError("triple JSON variable lists disagree");
  return t;
}

/// Ring-valued polynomials use the element's canonical string as "c".
inline Json to_json(const RingPoly& p) {
  Json terms = Json::array();
  for (std::size_t idx : p.canonical_order()) {
    const auto& t = p.terms()[idx];
    terms.push_back(Json{{"c", t.coeff.to_string()}, {"e", p.exponents(t.key)}});
  }
  return Json{{"vars", p.vars().names()}, {"terms", std::move(terms)}};
}

inline Json to_json(const SpecializedTriple& t) {
  return Json{{"n", t.n},
              {"ring", t.ring.to_string()},
              {"vars", t.alpha.vars().names()},
              {"alpha", to_json(t.alpha)},
              {"beta", to_json(t.beta)},
              {"gamma", to_json(t.gamma)},
              {"sign_convention", kSignConvention}};
}

}  // namespace mulnpoly
