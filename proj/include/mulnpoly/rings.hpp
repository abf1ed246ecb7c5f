#pragma once

// Coefficient rings: Z, Q, Z/NZ (any N >= 2) and polynomial rings over Z or
// Z/NZ. Elements are immutable values tagged with their descriptor.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "mulnpoly/errors.hpp"
#include "mulnpoly/mpoly.hpp"

namespace mulnpoly {

using Rational = mpq_class;

class RingDescriptor {
 public:
  enum class Kind { Integers, Rationals, Residue, Polynomial };

  static RingDescriptor integers() {
    static const RingDescriptor zz(std::make_shared<const Impl>(Impl{Kind::Integers, {}, nullptr, {}}));
    return zz;
  }
  static RingDescriptor rationals() {
    static const RingDescriptor qq(std::make_shared<const Impl>(Impl{Kind::Rationals, {}, nullptr, {}}));
    return qq;
  }
  static RingDescriptor residue(const Integer& modulus) {
    if (modulus < 2) throw UsageError("residue ring modulus must be at least 2, got " + modulus.get_str());
    return RingDescriptor(std::make_shared<const Impl>(Impl{Kind::Residue, modulus, nullptr, {}}));
  }
  static RingDescriptor polynomial(const RingDescriptor& base, VarList vars) {
    if (vars.size() == 0) throw UsageError("polynomial ring needs at least one variable");
    if (base.kind() != Kind::Integers && base.kind() != Kind::Residue)
      throw CapabilityError("polynomial rings are supported over zz and zmod:N only, not " + base.to_string());
    return RingDescriptor(std::make_shared<const Impl>(
        Impl{Kind::Polynomial, {}, std::make_shared<const RingDescriptor>(base), std::move(vars)}));
  }

  /// Canonical string forms: zz, qq, zmod:<N>, poly:<base>:<v1,v2,...>.
  static RingDescriptor parse(std::string_view text) {
    if (text == "zz") return integers();
    if (text == "qq") return rationals();
    if (text.starts_with("zmod:")) return residue(parse_integer(text.substr(5)));
    if (text.starts_with("poly:")) {
      auto rest = text.substr(5);
      auto cut = rest.rfind(':');
      if (cut == std::string_view::npos) throw UsageError("malformed ring descriptor '" + std::string(text) + "'");
      std::vector<std::string> vars;
      std::string_view list = rest.substr(cut + 1);
      while (true) {
        auto comma = list.find(',');
        vars.emplace_back(list.substr(0, comma));
        if (comma == std::string_view::npos) break;
        list = list.substr(comma + 1);
      }
      for (const auto& v : vars) {
        bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
        for (char ch : v) ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
        if (!ok) throw UsageError("bad variable name '" + v + "' in ring descriptor");
      }
      return polynomial(parse(rest.substr(0, cut)), VarList(std::move(vars)));
    }
    throw UsageError("unknown ring descriptor '" + std::string(text) + "'");
  }

  Kind kind() const { return impl_->kind; }

  const Integer& modulus() const {
    if (kind() != Kind::Residue) throw UsageError("modulus() on a non-residue ring");
    return impl_->modulus;
  }
  const RingDescriptor& base() const {
    if (kind() != Kind::Polynomial) throw UsageError("base() on a non-polynomial ring");
    return *impl_->base;
  }
  const VarList& variables() const {
    if (kind() != Kind::Polynomial) throw UsageError("variables() on a non-polynomial ring");
    return impl_->vars;
  }

  bool is_field() const {
    switch (kind()) {
      case Kind::Rationals:
        return true;
      case Kind::Residue:
        return mpz_probab_prime_p(impl_->modulus.get_mpz_t(), 40) > 0;
      default:
        return false;
    }
  }

  std::string to_string() const {
    switch (kind()) {
      case Kind::Integers:
        return "zz";
      case Kind::Rationals:
        return "qq";
      case Kind::Residue:
        return "zmod:" + impl_->modulus.get_str();
      case Kind::Polynomial: {
        std::string s = "poly:" + impl_->base->to_string() + ":";
        for (std::size_t i = 0; i < impl_->vars.size(); ++i) s += (i ? "," : "") + impl_->vars[i];
        return s;
      }
    }
    return {};
  }

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    if (a.impl_ == b.impl_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Residue:
        return a.impl_->modulus == b.impl_->modulus;
      case Kind::Polynomial:
        return *a.impl_->base == *b.impl_->base && a.impl_->vars == b.impl_->vars;
      default:
        return true;
    }
  }

 private:
  struct Impl {
    Kind kind;
    Integer modulus;
    std::shared_ptr<const RingDescriptor> base;
    VarList vars;
  };
  explicit RingDescriptor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

class RingElement {
 public:
  using Value = std::variant<Integer, Rational, MPoly>;

  RingElement() : RingElement(RingDescriptor::integers(), Integer(0)) {}

  /// Image of an integer under the canonical map Z -> R.
  RingElement(const RingDescriptor& ring, const Integer& n) : ring_(ring) {
    switch (ring.kind()) {
      case RingDescriptor::Kind::Integers:
        value_ = n;
        break;
      case RingDescriptor::Kind::Rationals:
        value_ = Rational(n);
        break;
      case RingDescriptor::Kind::Residue:
        value_ = reduce(n, ring.modulus());
        break;
      case RingDescriptor::Kind::Polynomial:
        value_ = normalize_poly(MPoly::constant(ring.variables(), n), ring);
        break;
    }
  }
  RingElement(const RingDescriptor& ring, long n) : RingElement(ring, Integer(n)) {}

  static RingElement from_rational(const RingDescriptor& ring, Rational q) {
    if (ring.kind() != RingDescriptor::Kind::Rationals) throw UsageError("rational value for non-rational ring");
    q.canonicalize();
    return RingElement(ring, Value(std::move(q)), Raw{});
  }

  static RingElement from_poly(const RingDescriptor& ring, const MPoly& p) {
    if (ring.kind() != RingDescriptor::Kind::Polynomial) throw UsageError("polynomial value for non-polynomial ring");
    MPoly q = p.vars() == ring.variables() ? p : p.restrict_to(ring.variables());
    return RingElement(ring, Value(normalize_poly(q, ring)), Raw{});
  }

  static RingElement zero(const RingDescriptor& ring) { return RingElement(ring, Integer(0)); }
  static RingElement one(const RingDescriptor& ring) { return RingElement(ring, Integer(1)); }

  /// Parses the canonical string form (see to_string).
  static RingElement parse(const RingDescriptor& ring, std::string_view text) {
    switch (ring.kind()) {
      case RingDescriptor::Kind::Integers:
        return RingElement(ring, parse_integer(trim(text)));
      case RingDescriptor::Kind::Rationals: {
        auto t = trim(text);
        auto slash = t.find('/');
        if (slash == std::string_view::npos) return RingElement(ring, parse_integer(t));
        Integer den = parse_integer(t.substr(slash + 1));
        if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
        return from_rational(ring, Rational(parse_integer(t.substr(0, slash)), den));
      }
      case RingDescriptor::Kind::Residue:
        return RingElement(ring, parse_integer(trim(text)));
      case RingDescriptor::Kind::Polynomial:
        return from_poly(ring, parse_mpoly(text, ring.variables()));
    }
    throw UsageError("unreachable");
  }

  const RingDescriptor& ring() const { return ring_; }

  bool is_zero() const {
    return std::visit(
        [](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, MPoly>)
            return v.is_zero();
          else
            return sgn(v) == 0;
        },
        value_);
  }

  /// Z and Z/NZ values (least non-negative residue for the latter).
  const Integer& integer() const {
    if (auto p = std::get_if<Integer>(&value_)) return *p;
    throw UsageError("element of " + ring_.to_string() + " has no integer value");
  }
  const Rational& rational() const {
    if (auto p = std::get_if<Rational>(&value_)) return *p;
    throw UsageError("element of " + ring_.to_string() + " has no rational value");
  }
  const MPoly& poly() const {
    if (auto p = std::get_if<MPoly>(&value_)) return *p;
    throw UsageError("element of " + ring_.to_string() + " has no polynomial value");
  }

  std::string to_string() const {
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, MPoly>)
            return to_pretty(v);
          else
            return v.get_str();
        },
        value_);
  }

  friend RingElement operator+(const RingElement& a, const RingElement& b) { return combine(a, b, Op::add); }
  friend RingElement operator-(const RingElement& a, const RingElement& b) { return combine(a, b, Op::sub); }
  friend RingElement operator*(const RingElement& a, const RingElement& b) { return combine(a, b, Op::mul); }
  RingElement operator-() const { return zero(ring_) - *this; }
  RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
  RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
  RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }

 private:
  struct Raw {};
  enum class Op { add, sub, mul };

  RingElement(const RingDescriptor& ring, Value v, Raw) : ring_(ring), value_(std::move(v)) {}

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  static Integer reduce(const Integer& n, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
  }

  static MPoly normalize_poly(const MPoly& p, const RingDescriptor& ring) {
    if (ring.base().kind() != RingDescriptor::Kind::Residue) return p;
    const Integer& m = ring.base().modulus();
    std::vector<MPoly::Term> out;
    for (const auto& t : p.terms()) {
      Integer r = reduce(t.coeff, m);
      if (r != 0) out.push_back(MPoly::Term{t.key, std::move(r)});
    }
    return MPoly::from_sorted(p.vars(), std::move(out));
  }

  static RingElement combine(const RingElement& a, const RingElement& b, Op op) {
    if (!(a.ring_ == b.ring_))
      throw UsageError("ring mismatch: " + a.ring_.to_string() + " vs " + b.ring_.to_string());
    const RingDescriptor& r = a.ring_;
    switch (r.kind()) {
      case RingDescriptor::Kind::Integers: {
        const auto& x = std::get<Integer>(a.value_);
        const auto& y = std::get<Integer>(b.value_);
        Integer z = op == Op::add ? Integer(x + y) : op == Op::sub ? Integer(x - y) : Integer(x * y);
        return RingElement(r, Value(std::move(z)), Raw{});
      }
      case RingDescriptor::Kind::Residue: {
        const auto& x = std::get<Integer>(a.value_);
        const auto& y = std::get<Integer>(b.value_);
        Integer z = op == Op::add ? Integer(x + y) : op == Op::sub ? Integer(x - y) : Integer(x * y);
        return RingElement(r, Value(reduce(z, r.modulus())), Raw{});
      }
      case RingDescriptor::Kind::Rationals: {
        const auto& x = std::get<Rational>(a.value_);
        const auto& y = std::get<Rational>(b.value_);
        Rational z = op == Op::add ? Rational(x + y) : op == Op::sub ? Rational(x - y) : Rational(x * y);
        z.canonicalize();
        return RingElement(r, Value(std::move(z)), Raw{});
      }
      case RingDescriptor::Kind::Polynomial: {
        const auto& x = std::get<MPoly>(a.value_);
        const auto& y = std::get<MPoly>(b.value_);
        MPoly z = op == Op::add ? x + y : op == Op::sub ? x - y : x * y;
        return RingElement(r, Value(normalize_poly(z, r)), Raw{});
      }
    }
    throw UsageError("unreachable");
  }

  RingDescriptor ring_;
  Value value_;
};

inline bool coeff_is_zero(const RingElement& c) { return c.is_zero(); }
inline void coeff_fma(RingElement& acc, const RingElement& a, const RingElement& b) { acc += a * b; }
inline std::string coeff_to_string(const RingElement& c) { return c.to_string(); }

using RingPoly = BasicMPoly<RingElement>;

// ---------------------------------------------------------------------------
// Named operations.

inline RingElement ring_add(const RingElement& a, const RingElement& b) { return a + b; }
inline RingElement ring_sub(const RingElement& a, const RingElement& b) { return a - b; }
inline RingElement ring_mul(const RingElement& a, const RingElement& b) { return a * b; }
inline RingElement ring_neg(const RingElement& a) { return -a; }

namespace detail {

// c is nilpotent mod N iff c^k = 0 mod N for k = bit length of N.
inline bool nilpotent_mod(const Integer& c, const Integer& n) {
  Integer r;
  mpz_powm_ui(r.get_mpz_t(), c.get_mpz_t(), mpz_sizeinbase(n.get_mpz_t(), 2), n.get_mpz_t());
  return r == 0;
}

}  // namespace detail

/// a^-1, or NotAUnit. For Z/NZ the exception carries gcd(a, N).
inline RingElement ring_inverse(const RingElement& a) {
  const RingDescriptor& r = a.ring();
  switch (r.kind()) {
    case RingDescriptor::Kind::Integers:
      if (a.integer() == 1 || a.integer() == -1) return a;
      throw NotAUnit(a.to_string() + " is not a unit in zz");
    case RingDescriptor::Kind::Rationals:
      if (a.is_zero()) throw NotAUnit("0 is not a unit in qq");
      return RingElement::from_rational(r, Rational(1) / a.rational());
    case RingDescriptor::Kind::Residue: {
      Integer g, inv;
      mpz_gcd(g.get_mpz_t(), a.integer().get_mpz_t(), r.modulus().get_mpz_t());
      if (g != 1) throw NotAUnit(a.to_string() + " is not a unit in " + r.to_string() + " (gcd " + g.get_str() + ")", g);
      mpz_invert(inv.get_mpz_t(), a.integer().get_mpz_t(), r.modulus().get_mpz_t());
      return RingElement(r, inv);
    }
    case RingDescriptor::Kind::Polynomial: {
      // Units of B[v] are u + n with u a unit of B and n nilpotent.
      const MPoly& p = a.poly();
      const RingDescriptor& base = r.base();
      const Integer* c0 = p.find(0);
      if (!c0) throw NotAUnit(a.to_string() + " is not a unit in " + r.to_string());
      RingElement u(base, *c0);
      RingElement u_inv = [&] {
        try {
          return ring_inverse(u);
        } catch (const NotAUnit&) {
          throw NotAUnit(a.to_string() + " is not a unit in " + r.to_string());
        }
      }();
      if (p.size() == 1) return RingElement(r, u_inv.integer());
      if (base.kind() == RingDescriptor::Kind::Integers)
        throw NotAUnit(a.to_string() + " is not a unit in " + r.to_string());
      for (const auto& t : p.terms())
        if (t.key != 0 && !detail::nilpotent_mod(t.coeff, base.modulus()))
          throw NotAUnit(a.to_string() + " is not a unit in " + r.to_string());
      // a = u (1 + m), m nilpotent: a^-1 = u^-1 (1 - m + m^2 - ...).
      RingElement ui(r, u_inv.integer());
      RingElement m = ui * a - RingElement::one(r);
      RingElement term = RingElement::one(r);
      RingElement sum = term;
      while (true) {
        term = -(term * m);
        if (term.is_zero()) break;
        sum += term;
      }
      return ui * sum;
    }
  }
  throw UsageError("unreachable");
}

inline bool is_unit(const RingElement& a) {
  try {
    ring_inverse(a);
    return true;
  } catch (const NotAUnit&) {
    return false;
  }
}

/// Whether the listed elements generate the unit ideal. Decided by gcds over
/// Z and Z/NZ and by nonvanishing over Q. A single element of a polynomial
/// ring is decided by unit testing; longer lists there raise CapabilityError.
inline bool unit_ideal_test(std::span<const RingElement> values) {
  if (values.empty()) throw UsageError("unit_ideal_test needs at least one element");
  const RingDescriptor& r = values[0].ring();
  for (const auto& v : values)
    if (!(v.ring() == r)) throw UsageError("unit_ideal_test: ring mismatch");
  switch (r.kind()) {
    case RingDescriptor::Kind::Integers:
    case RingDescriptor::Kind::Residue: {
      Integer g = r.kind() == RingDescriptor::Kind::Residue ? r.modulus() : Integer(0);
      for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.integer().get_mpz_t());
      return g == 1;
    }
    case RingDescriptor::Kind::Rationals:
      for (const auto& v : values)
        if (!v.is_zero()) return true;
      return false;
    case RingDescriptor::Kind::Polynomial:
      if (values.size() == 1) return is_unit(values[0]);
      throw CapabilityError("unit_ideal_test is not available in " + r.to_string());
  }
  throw UsageError("unreachable");
}

inline bool unit_ideal_test(std::initializer_list<RingElement> values) {
  return unit_ideal_test(std::span<const RingElement>(values.begin(), values.size()));
}

/// Coefficients c with sum c_i * v_i = 1, or nullopt when the v_i do not
/// generate the unit ideal. In a polynomial ring only a unit entry is found.
inline std::optional<std::vector<RingElement>> unit_ideal_certificate(std::span<const RingElement> values) {
  if (values.empty()) throw UsageError("unit_ideal_certificate needs at least one element");
  const RingDescriptor& r = values[0].ring();
  for (const auto& v : values)
    if (!(v.ring() == r)) throw UsageError("unit_ideal_certificate: ring mismatch");
  std::vector<RingElement> out(values.size(), RingElement::zero(r));
  switch (r.kind()) {
    case RingDescriptor::Kind::Integers:
    case RingDescriptor::Kind::Residue: {
      Integer g = 0;
      std::vector<Integer> c(values.size(), Integer(0));
      for (std::size_t i = 0; i < values.size(); ++i) {
        Integer ng, s, t;
        mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), values[i].integer().get_mpz_t());
        for (std::size_t k = 0; k < i; ++k) c[k] *= s;
        c[i] = t;
        g = ng;
      }
      if (r.kind() == RingDescriptor::Kind::Residue) {
        Integer ng, s, t;
        mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), r.modulus().get_mpz_t());
        for (auto& ci : c) ci *= s;
        g = ng;
      }
      if (g != 1) return std::nullopt;
      for (std::size_t i = 0; i < values.size(); ++i) out[i] = RingElement(r, c[i]);
      return out;
    }
    case RingDescriptor::Kind::Rationals:
    case RingDescriptor::Kind::Polynomial:
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (r.kind() == RingDescriptor::Kind::Rationals ? values[i].is_zero() : !is_unit(values[i])) continue;
        out[i] = ring_inverse(values[i]);
        return out;
      }
      if (r.kind() == RingDescriptor::Kind::Rationals) return std::nullopt;
      if (values.size() == 1) return std::nullopt;
      throw CapabilityError("unit_ideal_certificate is not available in " + r.to_string());
  }
  throw UsageError("unreachable");
}

// ---------------------------------------------------------------------------
// Specialization of integer polynomials into a ring.

/// Image of p under the ring morphism sending each variable in `bindings` to
/// the given element; variables in `retained` stay symbolic.
inline RingPoly poly_specialize(const MPoly& p, const std::map<std::string, RingElement>& bindings,
                                const VarList& retained, const RingDescriptor& ring) {
  for (const auto& [name, v] : bindings)
    if (!(v.ring() == ring)) throw UsageError("binding for '" + name + "' is not in " + ring.to_string());
  const std::size_t nv = p.nvars();
  std::vector<const RingElement*> bound(nv, nullptr);
  std::vector<std::size_t> kept(nv, 0);
  for (std::size_t i = 0; i < nv; ++i) {
    auto it = bindings.find(p.vars()[i]);
    if (it != bindings.end()) {
      bound[i] = &it->second;
    } else if (p.uses_variable(i)) {
      auto j = retained.index_of(p.vars()[i]);
      if (!j) throw UsageError("variable '" + p.vars()[i] + "' is neither bound nor retained");
      kept[i] = *j;
    }
  }
  std::vector<std::vector<RingElement>> powers(nv);
  auto power = [&](std::size_t i, std::uint64_t e) -> const RingElement& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(RingElement::one(ring));
    while (cache.size() <= e) cache.push_back(cache.back() * *bound[i]);
    return cache[e];
  };
  MonomialLayout rl(retained.size());
  std::vector<RingPoly::Term> raw;
  raw.reserve(p.size());
  for (const auto& t : p.terms()) {
    std::vector<std::uint64_t> e(retained.size(), 0);
    RingElement c(ring, t.coeff);
    for (std::size_t i = 0; i < nv; ++i) {
      auto ex = p.layout().get(t.key, i);
      if (ex == 0) continue;
      if (bound[i])
        c = c * power(i, ex);
      else
        e[kept[i]] += ex;
    }
    if (!c.is_zero()) raw.push_back(RingPoly::Term{rl.pack(e), std::move(c)});
  }
  return RingPoly::from_raw(retained, std::move(raw));
}

/// Evaluates p with every variable bound.
inline RingElement poly_evaluate(const MPoly& p, const std::map<std::string, RingElement>& bindings,
                                 const RingDescriptor& ring) {
  RingPoly r = poly_specialize(p, bindings, VarList{}, ring);
  return r.is_zero() ? RingElement::zero(ring) : r.terms()[0].coeff;
}

/// Evaluates a ring-valued polynomial at a point given in variable order.
inline RingElement evaluate(const RingPoly& p, std::span<const RingElement> point, const RingDescriptor& ring) {
  if (point.size() != p.nvars()) throw UsageError("evaluation point has wrong arity");
  for (const auto& v : point)
    if (!(v.ring() == ring)) throw UsageError("evaluation point is not in " + ring.to_string());
  std::vector<std::vector<RingElement>> powers(p.nvars());
  auto power = [&](std::size_t i, std::uint64_t e) -> const RingElement& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(RingElement::one(ring));
    while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
    return cache[e];
  };
  RingElement sum = RingElement::zero(ring);
  for (const auto& t : p.terms()) {
    RingElement c = t.coeff;
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (auto e = p.layout().get(t.key, i)) c = c * power(i, e);
    sum += c;
  }
  return sum;
}

}  // namespace mulnpoly
