#pragma once

// Generic triples through the b-invariants. Cores live in Z[b2, b4, b6, b8][X],
// where they are small; each X-coefficient is then expanded into
// Z[a1, a2, a3, a4, a6] by nested Horner evaluation, and the result is
// reduced to X-degree <= 2 with merge-based steps. Coefficients are 256-bit
// with checked arithmetic; std::overflow_error signals that the big-integer
// path is needed.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mulnpoly/coeff_rings.hpp"
#include "mulnpoly/divpoly.hpp"
#include "mulnpoly/errors.hpp"
#include "mulnpoly/mpoly.hpp"
#include "mulnpoly/projmul.hpp"

namespace mulnpoly {

namespace wide {

/// Signed 256-bit two's complement integer with checked addition and
/// multiplication by machine-word scalars.
class Int {
 public:
  constexpr Int() = default;
  constexpr Int(long v)  // NOLINT: small literals convert implicitly
      : w_{static_cast<std::uint64_t>(v), v < 0 ? ~0ULL : 0, v < 0 ? ~0ULL : 0, v < 0 ? ~0ULL : 0} {}

  bool negative() const { return (w_[3] >> 63) != 0; }
  bool is_zero() const { return (w_[0] | w_[1] | w_[2] | w_[3]) == 0; }
  bool odd() const { return (w_[0] & 1) != 0; }

  friend bool operator==(const Int& a, const Int& b) { return a.w_ == b.w_; }

  Int operator-() const {
    Int r;
    unsigned __int128 carry = 1;
    for (int i = 0; i < 4; ++i) {
      carry += static_cast<std::uint64_t>(~w_[i]);
      r.w_[i] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
    if (r.negative() && negative()) throw std::overflow_error("256-bit coefficient overflow");
    return r;
  }

  friend Int operator+(const Int& a, const Int& b) {
    Int r;
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
      carry += static_cast<unsigned __int128>(a.w_[i]) + b.w_[i];
      r.w_[i] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
    if (a.negative() == b.negative() && r.negative() != a.negative())
      throw std::overflow_error("256-bit coefficient overflow");
    return r;
  }

  friend Int operator*(const Int& a, long c) {
    if (c == 0 || a.is_zero()) return {};
    bool neg = a.negative() != (c < 0);
    Int m = a.negative() ? -a : a;
    auto uc = static_cast<std::uint64_t>(c < 0 ? -static_cast<unsigned long>(c) : static_cast<unsigned long>(c));
    Int r;
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
      carry += static_cast<unsigned __int128>(m.w_[i]) * uc;
      r.w_[i] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
    if (carry != 0 || r.negative()) throw std::overflow_error("256-bit coefficient overflow");
    return neg ? -r : r;
  }

  /// Exact half of an even value.
  Int half() const {
    Int r;
    for (int i = 0; i < 4; ++i) r.w_[i] = (w_[i] >> 1) | (i < 3 ? w_[i + 1] << 63 : w_[3] & (1ULL << 63));
    return r;
  }

  /// The value when it fits a machine word.
  long to_long() const {
    auto v = static_cast<long>(w_[0]);
    if (!(Int(v) == *this)) throw std::overflow_error("scalar does not fit a machine word");
    return v;
  }

  static Int from_integer(const Integer& z) {
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > 254) throw std::overflow_error("coefficient exceeds 254 bits");
    Int r;
    std::size_t count = 0;
    mpz_export(r.w_.data(), &count, -1, sizeof(std::uint64_t), 0, 0, z.get_mpz_t());
    return sgn(z) < 0 ? -r : r;
  }

  Integer to_integer() const {
    Int m = negative() ? -*this : *this;
    Integer z;
    mpz_import(z.get_mpz_t(), 4, -1, sizeof(std::uint64_t), 0, 0, m.w_.data());
    if (negative()) z = -z;
    return z;
  }

 private:
  std::array<std::uint64_t, 4> w_{};
};

inline Int from_integer(const Integer& z) { return Int::from_integer(z); }
inline Integer to_integer(const Int& v) { return v.to_integer(); }

struct Term {
  Monomial key;
  Int coeff;
};

/// Sparse polynomial in a1..a6, strictly descending keys, no zero terms.
using Poly = std::vector<Term>;

/// A polynomial scaled by a coefficient and shifted by a monomial.
struct Scaled {
  const Poly* poly;
  Monomial shift;
  long scale;
};

/// Sum of up to a handful of scaled, shifted polynomials by a k-way merge.
inline Poly merge_sum(std::span<const Scaled> parts) {
  std::array<std::size_t, 8> pos{};
  if (parts.size() > pos.size()) throw UsageError("merge_sum takes at most 8 parts");
  // First pass counts distinct keys so the output is allocated once.
  std::size_t count = 0;
  while (true) {
    bool any = false;
    Monomial best = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (pos[i] == parts[i].poly->size()) continue;
      Monomial k = (*parts[i].poly)[pos[i]].key + parts[i].shift;
      if (!any || k > best) best = k;
      any = true;
    }
    if (!any) break;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (pos[i] < parts[i].poly->size() && (*parts[i].poly)[pos[i]].key + parts[i].shift == best) ++pos[i];
    ++count;
  }
  pos = {};
  Poly out;
  out.reserve(count);
  while (true) {
    bool any = false;
    Monomial best = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (pos[i] == parts[i].poly->size()) continue;
      Monomial k = (*parts[i].poly)[pos[i]].key + parts[i].shift;
      if (!any || k > best) best = k;
      any = true;
    }
    if (!any) break;
    Int c = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (pos[i] == parts[i].poly->size()) continue;
      const Term& t = (*parts[i].poly)[pos[i]];
      if (t.key + parts[i].shift != best) continue;
      c = c + t.coeff * parts[i].scale;
      ++pos[i];
    }
    if (!c.is_zero()) out.push_back(Term{best, c});
  }
  return out;
}

inline Poly sum(const Poly& a, const Poly& b, long sb = 1) {
  const Scaled parts[] = {{&a, 0, 1}, {&b, 0, sb}};
  return merge_sum(parts);
}

inline Poly times(const Poly& a, Monomial shift, long c) {
  Poly out;
  out.reserve(a.size());
  for (const auto& t : a) out.push_back(Term{t.key + shift, t.coeff * c});
  return out;
}

/// Product with a short polynomial b: one merge over the terms of b.
inline Poly times(const Poly& a, const Poly& b) {
  if (b.size() > 8) throw UsageError("short factor expected");
  std::vector<Scaled> parts;
  for (const auto& t : b) parts.push_back(Scaled{&a, t.key, t.coeff.to_long()});
  return merge_sum(parts);
}

inline Poly half(Poly a) {
  for (auto& t : a) {
    if (t.coeff.odd()) throw ExactnessViolation("odd coefficient where an exact half was required");
    t.coeff = t.coeff.half();
  }
  return a;
}

/// Dense in X (or Y): index k holds the coefficient of the k-th power.
using Dense = std::vector<Poly>;

inline void trim(Dense& d) {
  while (!d.empty() && d.back().empty()) d.pop_back();
}

inline Dense linear(const Dense& a, const Dense& b, long sb) {
  Dense out(std::max(a.size(), b.size()));
  static const Poly empty;
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = sum(k < a.size() ? a[k] : empty, k < b.size() ? b[k] : empty, sb);
  trim(out);
  return out;
}

/// (c * m * T^s) * a for a monomial m in a1..a6.
inline Dense times(const Dense& a, Monomial m, long c, std::size_t s) {
  Dense out(a.size() + s);
  for (std::size_t k = 0; k < a.size(); ++k) out[k + s] = times(a[k], m, c);
  trim(out);
  return out;
}

inline Dense half(Dense a) {
  for (auto& p : a) p = half(std::move(p));
  return a;
}

/// X-degree <= 2 representative: q[i][j] is the coefficient of X^i Y^j.
struct XRep {
  std::array<Dense, 3> q;

  std::size_t terms() const {
    std::size_t t = 0;
    for (const auto& d : q)
      for (const auto& p : d) t += p.size();
    return t;
  }
};

}  // namespace wide

/// Generic Psi, Phi, Omega and triples over Z[a1, a2, a3, a4, a6].
class FastGenericLadder {
 public:
  using Ops = XPolyOps<IntegerPolyCoeffs>;
  using BDense = Ops::T;

  FastGenericLadder()
      : layout_(var_order::coefficients().size()),
        bvars_{"b8", "b6", "b4", "b2"},
        cores_(Ops(IntegerPolyCoeffs(bvars_)), b_variables(bvars_)) {
    const VarList& a = var_order::coefficients();
    auto a_poly = [&](const char* text) {
      MPoly p = parse_mpoly(text, a);
      wide::Poly out;
      for (const auto& t : p.terms()) out.push_back({t.key, wide::from_integer(t.coeff)});
      return out;
    };
    subst_ = {a_poly("a1^2*a6 + 4*a2*a6 - a1*a3*a4 + a2*a3^2 - a4^2"), a_poly("a3^2 + 4*a6"),
              a_poly("2*a4 + a1*a3"), a_poly("a1^2 + 4*a2")};
    for (std::size_t i = 0; i < 5; ++i) a_[i] = layout_.unit(i);
  }

  wide::XRep psi(long n) { return reduce(from_split(cores_.psi(n))); }
  wide::XRep phi(long n) { return reduce({expand(cores_.phi(n)), {}}); }
  wide::XRep phi_psi(long n) { return reduce(from_split(cores_.phi_psi(n))); }
  wide::XRep psi_cubed(long n) { return reduce(from_split(cores_.psi_cubed(n))); }

  wide::XRep omega(long n) {
    if (n == 0) return reduce({wide::Dense{wide::Poly{{0, 1}}}, {}});
    wide::Dense d = expand(cores_.omega_cross(n));
    wide::Dense v = expand(part(cores_.phi_psi(n)));
    wide::Dense w = expand(part(cores_.psi_cubed(n)));
    // g = a1*Phi_n*c_n + a3*c_n^3 (times F for even n)
    wide::Dense g = wide::linear(wide::times(v, a_[0], 1, 0), wide::times(w, a_[2], 1, 0), 1);
    wide::Dense().swap(v);
    wide::Dense().swap(w);
    wide::XRep out;
    if (n % 2 != 0) {
      wide::Dense p0 = wide::half(wide::linear(times_h(d), g, -1));
      wide::Dense().swap(g);
      out = reduce({std::move(p0), std::move(d)});
    } else {
      wide::Dense p0 = wide::half(wide::linear(d, times_h(g), -1));
      wide::Dense().swap(d);
      for (auto& p : g)
        for (auto& t : p) t.coeff = -t.coeff;
      out = reduce({std::move(p0), std::move(g)});
    }
    omega_orders_.insert_or_assign(n, ord0_and_leading(out));
    return out;
  }

  /// ord0 and leading coefficient of Omega_n, kept from the last omega(n).
  std::pair<long, MPoly> omega_order(long n) {
    if (auto it = omega_orders_.find(n); it != omega_orders_.end()) return it->second;
    omega(n);
    return omega_orders_.at(n);
  }

  /// The triple with beta monic in y^(n^2), homogenized in [a1..a6, x, y, z].
  MulTriple triple(long n) {
    const VarList& v = var_order::generic();
    MulTriple t;
    t.n = n;
    if (n == 0) {
      t.alpha = MPoly(v);
      t.beta = MPoly::constant(v, Integer(1));
      t.gamma = MPoly(v);
      return t;
    }
    long sign = 1;
    {
      wide::XRep b = omega(n);
      const std::size_t top = static_cast<std::size_t>(n * n);
      const auto& b0 = b.q[0];
      if (b0.size() != top + 1) throw ExactnessViolation("Omega_n representative has unexpected Y-degree");
      const wide::Poly& lead = b0[top];
      if (lead.size() != 1 || lead[0].key != 0 || !(lead[0].coeff == 1 || lead[0].coeff == -1))
        throw ExactnessViolation("Y^(n^2) coefficient of B_n is not a unit sign");
      sign = lead[0].coeff.to_long();
      t.beta = homogenize(std::move(b), n, sign);
    }
    t.alpha = homogenize(phi_psi(n), n, sign);
    t.gamma = homogenize(psi_cubed(n), n, sign);
    check_triple_invariants(t);
    return t;
  }

  /// Conversion for comparison with the big-integer ladder.
  static XRep<IntegerPolyCoeffs> to_xrep(const wide::XRep& u) {
    const VarList& a = var_order::coefficients();
    XRep<IntegerPolyCoeffs> out;
    for (int i = 0; i < 3; ++i)
      for (const auto& p : u.q[i]) {
        std::vector<MPoly::Term> terms;
        terms.reserve(p.size());
        for (const auto& t : p) terms.push_back({t.key, wide::to_integer(t.coeff)});
        out.q[i].push_back(MPoly::from_sorted(a, std::move(terms)));
      }
    return out;
  }

  /// min over stored X^i Y^j of -(2i + 3j) and its coefficient.
  static std::pair<long, MPoly> ord0_and_leading(const wide::XRep& u) {
    long best = -1;
    int bi = 0;
    std::size_t bj = 0;
    for (int i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < u.q[i].size(); ++j) {
        if (u.q[i][j].empty()) continue;
        long w = 2L * i + 3L * static_cast<long>(j);
        if (w > best) {
          best = w;
          bi = i;
          bj = j;
        }
      }
    if (best < 0) throw UsageError("ord0 of the zero element is undefined");
    std::vector<MPoly::Term> terms;
    for (const auto& t : u.q[bi][bj]) terms.push_back({t.key, wide::to_integer(t.coeff)});
    return {-best, MPoly::from_sorted(var_order::coefficients(), std::move(terms))};
  }

 private:
  struct YPairW {
    wide::Dense p0, p1;
  };

  static BInvariants<IntegerPolyCoeffs> b_variables(const VarList& v) {
    return {mpoly_variable(v, "b2"), mpoly_variable(v, "b4"), mpoly_variable(v, "b6"), mpoly_variable(v, "b8")};
  }

  static const BDense& part(const Split<BDense>& s) { return s.p.empty() ? s.q : s.p; }

  /// p + q*Psi2 = (p + q*h) + 2q*Y.
  YPairW from_split(const Split<BDense>& s) {
    wide::Dense p = expand(s.p);
    wide::Dense q = expand(s.q);
    return {wide::linear(p, times_h(q), 1), wide::times(q, 0, 2, 0)};
  }

  wide::Dense times_h(const wide::Dense& d) const {
    return wide::linear(wide::times(d, a_[0], 1, 1), wide::times(d, a_[2], 1, 0), 1);
  }

  wide::Dense expand(const BDense& p) const {
    wide::Dense out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(substitute(c.terms(), 0));
    wide::trim(out);
    return out;
  }

  // Nested Horner in b_var, b_{var+1}, ...; the span shares the exponents of
  // all earlier variables, so each exponent of b_var forms a contiguous run.
  wide::Poly substitute(std::span<const MPoly::Term> terms, std::size_t var) const {
    if (terms.empty()) return {};
    if (var == bvars_.size()) return {wide::Term{0, wide::from_integer(terms.front().coeff)}};
    const MonomialLayout& lay = blayout();
    wide::Poly acc;
    std::uint64_t prev = 0;
    bool first = true;
    std::size_t i = 0;
    while (i < terms.size()) {
      std::uint64_t e = lay.get(terms[i].key, var);
      std::size_t j = i;
      while (j < terms.size() && lay.get(terms[j].key, var) == e) ++j;
      wide::Poly inner = substitute(terms.subspan(i, j - i), var + 1);
      if (first) {
        acc = std::move(inner);
        first = false;
      } else {
        for (std::uint64_t k = e; k < prev; ++k) acc = wide::times(acc, subst_[var]);
        acc = wide::sum(acc, inner);
      }
      prev = e;
      i = j;
    }
    for (std::uint64_t k = 0; k < prev; ++k) acc = wide::times(acc, subst_[var]);
    return acc;
  }

  static const MonomialLayout& blayout() {
    static const MonomialLayout l(4);
    return l;
  }

  // Horner in X on p0 + p1*Y with X^3 = Y^2 + a1 X Y + a3 Y - a2 X^2 - a4 X - a6.
  wide::XRep reduce(YPairW u) const {
    wide::XRep s;
    const std::size_t deg = std::max(u.p0.size(), u.p1.size());
    for (std::size_t k = deg; k-- > 0;) {
      step_x(s);
      auto add_at = [&](std::size_t j, wide::Dense& src) {
        if (k >= src.size() || src[k].empty()) return;
        if (s.q[0].size() <= j) s.q[0].resize(j + 1);
        s.q[0][j] = s.q[0][j].empty() ? std::move(src[k]) : wide::sum(s.q[0][j], src[k]);
        wide::Poly().swap(src[k]);
      };
      add_at(0, u.p0);
      add_at(1, u.p1);
    }
    return s;
  }

  void step_x(wide::XRep& s) const {
    static const wide::Poly empty;
    const wide::Dense& q2 = s.q[2];
    auto at = [](const wide::Dense& d, std::size_t j) -> const wide::Poly& {
      return j < d.size() ? d[j] : empty;
    };
    auto below = [&](std::size_t j, std::size_t off) -> const wide::Poly& {
      return j >= off ? at(q2, j - off) : empty;
    };
    wide::Dense n0(q2.empty() ? 0 : q2.size() + 2);
    for (std::size_t j = 0; j < n0.size(); ++j) {
      const wide::Scaled parts[] = {{&below(j, 2), 0, 1}, {&below(j, 1), a_[2], 1}, {&at(q2, j), a_[4], -1}};
      n0[j] = wide::merge_sum(parts);
    }
    wide::Dense n1(std::max(s.q[0].size(), q2.empty() ? 0 : q2.size() + 1));
    for (std::size_t j = 0; j < n1.size(); ++j) {
      if (below(j, 1).empty() && at(q2, j).empty()) {
        if (j < s.q[0].size()) n1[j] = std::move(s.q[0][j]);
        continue;
      }
      const wide::Scaled parts[] = {{&at(s.q[0], j), 0, 1}, {&below(j, 1), a_[0], 1}, {&at(q2, j), a_[3], -1}};
      n1[j] = wide::merge_sum(parts);
      if (j < s.q[0].size()) wide::Poly().swap(s.q[0][j]);
    }
    wide::Dense n2(std::max(s.q[1].size(), q2.size()));
    for (std::size_t j = 0; j < n2.size(); ++j) {
      if (at(q2, j).empty()) {
        if (j < s.q[1].size()) n2[j] = std::move(s.q[1][j]);
        continue;
      }
      const wide::Scaled parts[] = {{&at(s.q[1], j), 0, 1}, {&at(q2, j), a_[1], -1}};
      n2[j] = wide::merge_sum(parts);
      if (j < s.q[1].size()) wide::Poly().swap(s.q[1][j]);
    }
    for (auto* d : {&n0, &n1, &n2}) wide::trim(*d);
    s.q = {std::move(n0), std::move(n1), std::move(n2)};
  }

  // The target order is a-monomial first, then x = X^i, then y = Y^j, so the
  // lists q[i][j] are merged directly into descending keys.
  MPoly homogenize(wide::XRep u, long n, long sign) const {
    const VarList& target = var_order::generic();
    const MonomialLayout layout(target.size());
    const long deg = n * n;
    struct Cursor {
      const wide::Poly* poly;
      std::size_t pos;
      Monomial key;
    };
    auto key_of = [&](const wide::Term& t, int i, std::size_t j) {
      std::array<std::uint64_t, 8> e{};
      for (std::size_t k = 0; k < 5; ++k) e[k] = layout_.get(t.key, k);
      e[5] = static_cast<std::uint64_t>(i);
      e[6] = j;
      e[7] = static_cast<std::uint64_t>(deg - i - static_cast<long>(j));
      return layout.pack(e);
    };
    std::vector<Cursor> heap;
    std::vector<std::pair<int, std::size_t>> where;
    for (int i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < u.q[i].size(); ++j) {
        if (u.q[i][j].empty()) continue;
        if (deg - i - static_cast<long>(j) < 0) throw ExactnessViolation("negative z exponent while homogenizing");
        heap.push_back({&u.q[i][j], 0, key_of(u.q[i][j][0], i, j)});
        where.emplace_back(i, j);
      }
    std::vector<std::size_t> idx(heap.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    auto less = [&](std::size_t a, std::size_t b) { return heap[a].key < heap[b].key; };
    std::make_heap(idx.begin(), idx.end(), less);
    std::vector<MPoly::Term> terms;
    terms.reserve(u.terms());
    while (!idx.empty()) {
      std::pop_heap(idx.begin(), idx.end(), less);
      Cursor& c = heap[idx.back()];
      const wide::Term& t = (*c.poly)[c.pos];
      terms.push_back({c.key, wide::to_integer(sign < 0 ? -t.coeff : t.coeff)});
      if (++c.pos == c.poly->size()) {
        idx.pop_back();
      } else {
        auto [i, j] = where[idx.back()];
        c.key = key_of((*c.poly)[c.pos], i, j);
        std::push_heap(idx.begin(), idx.end(), less);
      }
    }
    return MPoly::from_sorted(target, std::move(terms));
  }

  MonomialLayout layout_;
  VarList bvars_;
  CoreLadder<Ops> cores_;
  std::array<wide::Poly, 4> subst_;
  std::array<Monomial, 5> a_{};
  std::map<long, std::pair<long, MPoly>> omega_orders_;
};

/// The generic triple over Z[a1, a2, a3, a4, a6]; falls back to the
/// big-integer ladder when a coefficient outgrows 256 bits.
inline MulTriple build_triple(long n) {
  try {
    FastGenericLadder fast;
    return fast.triple(n);
  } catch (const std::overflow_error&) {
    GenericLadder ladder = make_generic_ladder();
    return build_triple(n, ladder);
  }
}

}  // namespace mulnpoly
