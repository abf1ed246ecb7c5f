#pragma once

// Exact sparse multivariate polynomials.
//
// Terms live in a vector sorted by packed monomial key, descending. The key
// packs one exponent field per variable into 128 bits with the first declared
// variable in the most significant field, so integer comparison of keys is
// lexicographic comparison of exponent vectors. The serialized order is
// different (graded lex) and is produced on demand.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "mulnpoly/errors.hpp"

namespace mulnpoly {

using Integer = mpz_class;
using Monomial = unsigned __int128;

inline bool coeff_is_zero(const Integer& c) { return sgn(c) == 0; }
inline void coeff_fma(Integer& acc, const Integer& a, const Integer& b) {
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline std::string coeff_to_string(const Integer& c) { return c.get_str(); }

inline Integer parse_integer(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw UsageError("empty integer literal");
  std::size_t start = (str[0] == '-' || str[0] == '+') ? 1 : 0;
  if (start == str.size()) throw UsageError("bad integer literal '" + str + "'");
  for (std::size_t i = start; i < str.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(str[i])))
      throw UsageError("bad integer literal '" + str + "'");
  if (str[0] == '+') str.erase(0, 1);
  return Integer(str, 10);
}

/// Ordered variable names, shared between polynomials that use them.
class VarList {
 public:
  VarList() : names_(std::make_shared<const std::vector<std::string>>()) {}
  VarList(std::vector<std::string> names) {  // NOLINT: implicit by design of call sites
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) throw UsageError("empty variable name");
      for (std::size_t j = 0; j < i; ++j)
        if (names[j] == names[i]) throw UsageError("duplicate variable name '" + names[i] + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }
  VarList(std::initializer_list<const char*> names)
      : VarList(std::vector<std::string>(names.begin(), names.end())) {}

  std::size_t size() const { return names_->size(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  auto begin() const { return names_->begin(); }
  auto end() const { return names_->end(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const VarList& a, const VarList& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// The fixed variable orders used across the library.
namespace var_order {
inline const VarList& generic() {
  static const VarList v{"a1", "a2", "a3", "a4", "a6", "x", "y", "z"};
  return v;
}
inline const VarList& affine() {
  static const VarList v{"a1", "a2", "a3", "a4", "a6", "X", "Y"};
  return v;
}
inline const VarList& affine_x() {
  static const VarList v{"a1", "a2", "a3", "a4", "a6", "X"};
  return v;
}
inline const VarList& affine_y() {
  static const VarList v{"a1", "a2", "a3", "a4", "a6", "Y"};
  return v;
}
inline const VarList& coefficients() {
  static const VarList v{"a1", "a2", "a3", "a4", "a6"};
  return v;
}
inline const VarList& projective() {
  static const VarList v{"x", "y", "z"};
  return v;
}
inline const VarList& tate() {
  static const VarList v{"s", "t"};
  return v;
}
}  // namespace var_order

class MonomialLayout {
 public:
  static constexpr std::size_t kMaxVars = 16;

  explicit MonomialLayout(std::size_t nvars) : nvars_(nvars) {
    if (nvars > kMaxVars) throw UsageError("at most 16 variables are supported");
    width_ = nvars == 0 ? 0 : std::min<unsigned>(32, 128 / static_cast<unsigned>(nvars));
    mask_ = width_ == 0 ? 0 : ((std::uint64_t{1} << width_) - 1);
  }

  std::size_t nvars() const { return nvars_; }
  std::uint64_t max_exponent() const { return mask_; }

  std::uint64_t get(Monomial m, std::size_t i) const {
    return static_cast<std::uint64_t>(m >> shift(i)) & mask_;
  }

  Monomial pack(std::span<const std::uint64_t> e) const {
    if (e.size() != nvars_) throw UsageError("exponent vector length does not match variable count");
    Monomial m = 0;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] > mask_) throw std::overflow_error("exponent exceeds packed field width");
      m |= static_cast<Monomial>(e[i]) << shift(i);
    }
    return m;
  }

  Monomial unit(std::size_t i, std::uint64_t exponent = 1) const {
    if (exponent > mask_) throw std::overflow_error("exponent exceeds packed field width");
    return static_cast<Monomial>(exponent) << shift(i);
  }

  std::vector<std::uint64_t> unpack(Monomial m) const {
    std::vector<std::uint64_t> e(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) e[i] = get(m, i);
    return e;
  }

  std::uint64_t total_degree(Monomial m) const {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += get(m, i);
    return d;
  }

  bool divides(Monomial a, Monomial b) const {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (get(a, i) > get(b, i)) return false;
    return true;
  }

 private:
  unsigned shift(std::size_t i) const {
    return width_ * static_cast<unsigned>(nvars_ - 1 - i);
  }

  std::size_t nvars_;
  unsigned width_;
  std::uint64_t mask_;
};

namespace detail {

inline std::uint64_t hash_monomial(Monomial m) {
  auto x = static_cast<std::uint64_t>(m) ^ (static_cast<std::uint64_t>(m >> 64) * 0x9e3779b97f4a7c15ULL);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Open-addressing accumulator for sums of products.
template <class C>
class TermAccumulator {
 public:
  explicit TermAccumulator(std::size_t expected = 16) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, -1);
    keys_.reserve(expected);
    coeffs_.reserve(expected);
  }

  void add_product(Monomial key, const C& a, const C& b) {
    std::int64_t& slot = find_slot(key);
    if (slot < 0) {
      slot = static_cast<std::int64_t>(keys_.size());
      keys_.push_back(key);
      coeffs_.push_back(a * b);
      maybe_grow();
    } else {
      coeff_fma(coeffs_[static_cast<std::size_t>(slot)], a, b);
    }
  }

  void add(Monomial key, const C& a) {
    std::int64_t& slot = find_slot(key);
    if (slot < 0) {
      slot = static_cast<std::int64_t>(keys_.size());
      keys_.push_back(key);
      coeffs_.push_back(a);
      maybe_grow();
    } else {
      coeffs_[static_cast<std::size_t>(slot)] += a;
    }
  }

  template <class Term>
  std::vector<Term> finish() && {
    std::vector<Term> out;
    out.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (!coeff_is_zero(coeffs_[i])) out.push_back(Term{keys_[i], std::move(coeffs_[i])});
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.key > b.key; });
    return out;
  }

 private:
  std::int64_t& find_slot(Monomial key) {
    std::size_t mask = slots_.size() - 1;
    std::size_t h = hash_monomial(key) & mask;
    while (true) {
      std::int64_t& s = slots_[h];
      if (s < 0 || keys_[static_cast<std::size_t>(s)] == key) return s;
      h = (h + 1) & mask;
    }
  }

  void maybe_grow() {
    if (keys_.size() * 2 < slots_.size()) return;
    std::vector<std::int64_t> fresh(slots_.size() * 2, -1);
    std::size_t mask = fresh.size() - 1;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      std::size_t h = hash_monomial(keys_[i]) & mask;
      while (fresh[h] >= 0) h = (h + 1) & mask;
      fresh[h] = static_cast<std::int64_t>(i);
    }
    slots_ = std::move(fresh);
  }

  std::vector<std::int64_t> slots_;
  std::vector<Monomial> keys_;
  std::vector<C> coeffs_;
};

}  // namespace detail

template <class C>
class BasicMPoly {
 public:
  using coeff_type = C;
  struct Term {
    Monomial key;
    C coeff;
  };

  BasicMPoly() : layout_(0) {}
  explicit BasicMPoly(VarList vars) : vars_(std::move(vars)), layout_(vars_.size()) {}

  /// Builds from (exponent vector, coefficient) pairs; duplicates are summed
  /// and zeros dropped.
  static BasicMPoly from_terms(VarList vars,
                               const std::vector<std::pair<std::vector<std::uint64_t>, C>>& terms) {
    BasicMPoly p(std::move(vars));
    detail::TermAccumulator<C> acc(terms.size());
    for (const auto& [e, c] : terms) acc.add(p.layout_.pack(e), c);
    p.terms_ = std::move(acc).template finish<Term>();
    return p;
  }

  /// Takes ownership of raw terms in any order; duplicates summed, zeros dropped.
  static BasicMPoly from_raw(VarList vars, std::vector<Term> raw) {
    BasicMPoly p(std::move(vars));
    std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.key > b.key; });
    std::vector<Term> out;
    out.reserve(raw.size());
    for (auto& t : raw) {
      if (!out.empty() && out.back().key == t.key)
        out.back().coeff += t.coeff;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return coeff_is_zero(t.coeff); });
    p.terms_ = std::move(out);
    return p;
  }

  /// Terms must already be strictly descending with nonzero coefficients.
  static BasicMPoly from_sorted(VarList vars, std::vector<Term> sorted) {
    BasicMPoly p(std::move(vars));
    p.terms_ = std::move(sorted);
    return p;
  }

  static BasicMPoly constant(VarList vars, C c) {
    BasicMPoly p(std::move(vars));
    if (!coeff_is_zero(c)) p.terms_.push_back(Term{0, std::move(c)});
    return p;
  }

  static BasicMPoly monomial(VarList vars, Monomial key, C c) {
    BasicMPoly p(std::move(vars));
    if (!coeff_is_zero(c)) p.terms_.push_back(Term{key, std::move(c)});
    return p;
  }

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const MonomialLayout& layout() const { return layout_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::vector<std::uint64_t> exponents(Monomial m) const { return layout_.unpack(m); }
  Monomial pack(std::span<const std::uint64_t> e) const { return layout_.pack(e); }
  Monomial var_key(std::size_t i, std::uint64_t e = 1) const { return layout_.unit(i, e); }

  const C* find(Monomial key) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, Monomial k) { return t.key > k; });
    if (it == terms_.end() || it->key != key) return nullptr;
    return &it->coeff;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0); }

  std::vector<std::uint64_t> max_degrees() const {
    std::vector<std::uint64_t> d(nvars(), 0);
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < nvars(); ++i) d[i] = std::max(d[i], layout_.get(t.key, i));
    return d;
  }

  std::uint64_t degree(std::size_t var) const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, layout_.get(t.key, var));
    return d;
  }

  bool uses_variable(std::size_t var) const {
    for (const auto& t : terms_)
      if (layout_.get(t.key, var) != 0) return true;
    return false;
  }

  BasicMPoly operator-() const {
    BasicMPoly r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{t.key, -t.coeff});
    return r;
  }

  friend BasicMPoly operator+(const BasicMPoly& p, const BasicMPoly& q) { return merge(p, q, false); }
  friend BasicMPoly operator-(const BasicMPoly& p, const BasicMPoly& q) { return merge(p, q, true); }

  friend BasicMPoly operator*(const BasicMPoly& p, const BasicMPoly& q) {
    p.require_same_vars(q);
    if (p.is_zero() || q.is_zero()) return BasicMPoly(p.vars_);
    p.check_product_fits(q);
    if (p.size() == 1) return q.mul_term(p.terms_[0].key, p.terms_[0].coeff);
    if (q.size() == 1) return p.mul_term(q.terms_[0].key, q.terms_[0].coeff);
    const BasicMPoly& big = p.size() >= q.size() ? p : q;
    const BasicMPoly& small = p.size() >= q.size() ? q : p;
    detail::TermAccumulator<C> acc(big.size() + small.size());
    for (const auto& s : small.terms_)
      for (const auto& b : big.terms_) acc.add_product(s.key + b.key, s.coeff, b.coeff);
    BasicMPoly r(p.vars_);
    r.terms_ = std::move(acc).template finish<Term>();
    return r;
  }

  BasicMPoly& operator+=(const BasicMPoly& q) { return *this = *this + q; }
  BasicMPoly& operator-=(const BasicMPoly& q) { return *this = *this - q; }
  BasicMPoly& operator*=(const BasicMPoly& q) { return *this = *this * q; }

  /// this * c * monomial(key). Order is preserved because adding a fixed
  /// exponent vector is monotone in lex order.
  BasicMPoly mul_term(Monomial key, const C& c) const {
    BasicMPoly r(vars_);
    if (key != 0) {
      auto md = max_degrees();
      for (std::size_t i = 0; i < nvars(); ++i)
        if (md[i] + layout_.get(key, i) > layout_.max_exponent())
          throw std::overflow_error("product exponent exceeds packed field width");
    }
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      C v = t.coeff * c;
      if (!coeff_is_zero(v)) r.terms_.push_back(Term{t.key + key, std::move(v)});
    }
    return r;
  }

  BasicMPoly scale(const C& c) const { return mul_term(0, c); }

  friend bool operator==(const BasicMPoly& p, const BasicMPoly& q) {
    if (!(p.vars_ == q.vars_) || p.terms_.size() != q.terms_.size()) return false;
    for (std::size_t i = 0; i < p.terms_.size(); ++i)
      if (p.terms_[i].key != q.terms_[i].key || !(p.terms_[i].coeff == q.terms_[i].coeff)) return false;
    return true;
  }

  /// Reinterprets this polynomial over a superset variable list.
  BasicMPoly embed(const VarList& target) const {
    std::vector<std::size_t> map(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto j = target.index_of(vars_[i]);
      if (!j) throw UsageError("variable '" + vars_[i] + "' missing from target variable list");
      map[i] = *j;
    }
    BasicMPoly r(target);
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& t : terms_) {
      std::vector<std::uint64_t> e(target.size(), 0);
      for (std::size_t i = 0; i < nvars(); ++i) e[map[i]] = layout_.get(t.key, i);
      raw.push_back(Term{r.layout_.pack(e), t.coeff});
    }
    return from_raw(target, std::move(raw));
  }

  /// Drops variables that do not occur; the remaining ones must be in target.
  BasicMPoly restrict_to(const VarList& target) const {
    for (std::size_t i = 0; i < nvars(); ++i)
      if (!target.index_of(vars_[i]) && uses_variable(i))
        throw UsageError("variable '" + vars_[i] + "' occurs but is not in the target list");
    std::vector<std::optional<std::size_t>> map(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) map[i] = target.index_of(vars_[i]);
    BasicMPoly r(target);
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& t : terms_) {
      std::vector<std::uint64_t> e(target.size(), 0);
      for (std::size_t i = 0; i < nvars(); ++i)
        if (map[i]) e[*map[i]] = layout_.get(t.key, i);
      raw.push_back(Term{r.layout_.pack(e), t.coeff});
    }
    return from_raw(target, std::move(raw));
  }

  std::string monomial_string(Monomial key) const {
    std::string s;
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto e = layout_.get(key, i);
      if (e == 0) continue;
      if (!s.empty()) s += '*';
      s += vars_[i];
      if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
  }

  /// Indices into terms() in serialization order: total degree descending,
  /// ties by lexicographic order on exponent vectors, descending.
  std::vector<std::size_t> canonical_order() const {
    std::vector<std::size_t> idx(terms_.size());
    std::vector<std::uint64_t> deg(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      idx[i] = i;
      deg[i] = layout_.total_degree(terms_[i].key);
    }
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    return idx;
  }

 private:
  void require_same_vars(const BasicMPoly& q) const {
    if (!(vars_ == q.vars_)) throw UsageError("polynomial variable lists differ");
  }

  void check_product_fits(const BasicMPoly& q) const {
    auto a = max_degrees();
    auto b = q.max_degrees();
    for (std::size_t i = 0; i < nvars(); ++i)
      if (a[i] + b[i] > layout_.max_exponent())
        throw std::overflow_error("product exponent of '" + vars_[i] + "' exceeds packed field width");
  }

  static BasicMPoly merge(const BasicMPoly& p, const BasicMPoly& q, bool subtract) {
    p.require_same_vars(q);
    BasicMPoly r(p.vars_);
    r.terms_.reserve(p.size() + q.size());
    std::size_t i = 0, j = 0;
    while (i < p.size() || j < q.size()) {
      if (j == q.size() || (i < p.size() && p.terms_[i].key > q.terms_[j].key)) {
        r.terms_.push_back(p.terms_[i++]);
      } else if (i == p.size() || q.terms_[j].key > p.terms_[i].key) {
        const auto& t = q.terms_[j++];
        r.terms_.push_back(Term{t.key, subtract ? C(-t.coeff) : t.coeff});
      } else {
        C v = subtract ? C(p.terms_[i].coeff - q.terms_[j].coeff) : C(p.terms_[i].coeff + q.terms_[j].coeff);
        if (!coeff_is_zero(v)) r.terms_.push_back(Term{p.terms_[i].key, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  VarList vars_;
  MonomialLayout layout_;
  std::vector<Term> terms_;
};

using MPoly = BasicMPoly<Integer>;

// ---------------------------------------------------------------------------
// Construction helpers for integer polynomials.

inline MPoly mpoly_constant(const VarList& vars, const Integer& c) { return MPoly::constant(vars, c); }

inline MPoly mpoly_variable(const VarList& vars, std::string_view name, std::uint64_t power = 1) {
  auto i = vars.index_of(name);
  if (!i) throw UsageError("unknown variable '" + std::string(name) + "'");
  MPoly p(vars);
  return MPoly::monomial(vars, p.var_key(*i, power), Integer(1));
}

template <class C>
BasicMPoly<C> poly_pow(const BasicMPoly<C>& p, unsigned long k, const C& one) {
  BasicMPoly<C> result = BasicMPoly<C>::constant(p.vars(), one);
  BasicMPoly<C> base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

inline MPoly poly_pow(const MPoly& p, unsigned long k) { return poly_pow(p, k, Integer(1)); }

/// Common weighted degree of every term, or nullopt when p is not
/// homogeneous for these weights. Zero has no degree.
template <class C>
std::optional<long> poly_homogeneous_degree(const BasicMPoly<C>& p, std::span<const long> weights) {
  if (weights.size() != p.nvars()) throw UsageError("weight vector length does not match variable count");
  if (p.is_zero()) throw UsageError("homogeneous degree of the zero polynomial is undefined");
  std::optional<long> degree;
  for (const auto& t : p.terms()) {
    long d = 0;
    for (std::size_t i = 0; i < p.nvars(); ++i) d += weights[i] * static_cast<long>(p.layout().get(t.key, i));
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return degree;
}

template <class C>
std::optional<long> poly_homogeneous_degree(const BasicMPoly<C>& p, std::initializer_list<long> weights) {
  return poly_homogeneous_degree(p, std::span<const long>(weights.begin(), weights.size()));
}

/// Divides every coefficient by d; throws ExactnessViolation on a remainder.
inline MPoly divide_coefficients_exact(const MPoly& p, const Integer& d) {
  std::vector<MPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.get_mpz_t()))
      throw ExactnessViolation("coefficient " + t.coeff.get_str() + " not divisible by " + d.get_str());
    Integer q;
    mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
    out.push_back(MPoly::Term{t.key, std::move(q)});
  }
  return MPoly::from_sorted(p.vars(), std::move(out));
}

// ---------------------------------------------------------------------------
// Exact division.

/// Returns q with q * den == num, or throws NotDivisible. Runs the
/// single-divisor division algorithm in lex order with a heap of pending
/// products, then re-multiplies to confirm.
inline MPoly poly_divexact(const MPoly& num, const MPoly& den) {
  if (!(num.vars() == den.vars())) throw UsageError("polynomial variable lists differ");
  if (den.is_zero()) throw UsageError("division by the zero polynomial");
  const auto& layout = num.layout();
  const auto& d = den.terms();
  const auto& n = num.terms();
  if (num.is_zero()) return MPoly(num.vars());

  auto num_deg = num.max_degrees();
  auto den_deg = den.max_degrees();
  auto fail = [&](Monomial key, const Integer& c) {
    auto m = num.monomial_string(key);
    std::string term = c.get_str();
    if (!m.empty()) term = c == 1 ? m : c == -1 ? "-" + m : term + "*" + m;
    throw NotDivisible("polynomial is not divisible; remainder leading term " + term, term);
  };
  for (std::size_t i = 0; i < num.nvars(); ++i)
    if (den_deg[i] > num_deg[i]) fail(n[0].key, n[0].coeff);

  struct Entry {
    Monomial key;
    std::size_t qi;
    std::size_t dj;
    bool operator<(const Entry& o) const { return key < o.key; }
  };
  std::priority_queue<Entry> heap;
  std::vector<MPoly::Term> q;
  std::size_t k = 0;
  Integer c, quot;
  while (k < n.size() || !heap.empty()) {
    Monomial m;
    if (heap.empty() || (k < n.size() && n[k].key >= heap.top().key))
      m = n[k].key;
    else
      m = heap.top().key;
    c = 0;
    if (k < n.size() && n[k].key == m) c = n[k++].coeff;
    while (!heap.empty() && heap.top().key == m) {
      Entry e = heap.top();
      heap.pop();
      mpz_submul(c.get_mpz_t(), q[e.qi].coeff.get_mpz_t(), d[e.dj].coeff.get_mpz_t());
      if (e.dj + 1 < d.size()) heap.push(Entry{q[e.qi].key + d[e.dj + 1].key, e.qi, e.dj + 1});
    }
    if (sgn(c) == 0) continue;
    if (!layout.divides(d[0].key, m) || !mpz_divisible_p(c.get_mpz_t(), d[0].coeff.get_mpz_t())) fail(m, c);
    Monomial qk = m - d[0].key;
    for (std::size_t i = 0; i < num.nvars(); ++i)
      if (layout.get(qk, i) + den_deg[i] > num_deg[i]) fail(m, c);
    mpz_divexact(quot.get_mpz_t(), c.get_mpz_t(), d[0].coeff.get_mpz_t());
    q.push_back(MPoly::Term{qk, quot});
    if (d.size() > 1) heap.push(Entry{qk + d[1].key, q.size() - 1, 1});
  }
  MPoly result = MPoly::from_sorted(num.vars(), std::move(q));
  if (!(result * den == num)) throw ExactnessViolation("poly_divexact verification multiplication failed");
  return result;
}

// ---------------------------------------------------------------------------
// Substitution.

/// Ring morphism image of p: each bound variable is replaced by a polynomial
/// in `target`; unbound variables are kept and must occur in `target`.
inline MPoly poly_substitute(const MPoly& p, const std::map<std::string, MPoly>& bindings, const VarList& target) {
  for (const auto& [name, value] : bindings)
    if (!(value.vars() == target)) throw UsageError("binding for '" + name + "' is not over the target variables");
  const std::size_t nv = p.nvars();
  std::vector<const MPoly*> bound(nv, nullptr);
  std::vector<std::size_t> kept(nv, 0);
  for (std::size_t i = 0; i < nv; ++i) {
    auto it = bindings.find(p.vars()[i]);
    if (it != bindings.end()) {
      bound[i] = &it->second;
    } else if (p.uses_variable(i)) {
      auto j = target.index_of(p.vars()[i]);
      if (!j) throw UsageError("variable '" + p.vars()[i] + "' is neither bound nor in the target list");
      kept[i] = *j;
    }
  }
  MonomialLayout tl(target.size());
  std::vector<std::vector<MPoly>> powers(nv);
  auto power = [&](std::size_t i, std::uint64_t e) -> const MPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MPoly::constant(target, Integer(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * *bound[i]);
    return cache[e];
  };
  std::vector<MPoly::Term> raw;
  for (const auto& t : p.terms()) {
    std::vector<std::uint64_t> e(target.size(), 0);
    MPoly acc = MPoly::constant(target, t.coeff);
    for (std::size_t i = 0; i < nv; ++i) {
      auto ex = p.layout().get(t.key, i);
      if (ex == 0) continue;
      if (bound[i])
        acc = acc * power(i, ex);
      else
        e[kept[i]] += ex;
    }
    Monomial shift = tl.pack(e);
    for (auto& term : acc.terms()) raw.push_back(MPoly::Term{term.key + shift, term.coeff});
  }
  return MPoly::from_raw(target, std::move(raw));
}

// ---------------------------------------------------------------------------
// Text form.

template <class C>
std::string to_pretty(const BasicMPoly<C>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t idx : p.canonical_order()) {
    const auto& t = p.terms()[idx];
    std::string c = coeff_to_string(t.coeff);
    std::string mono = p.monomial_string(t.key);
    bool negative = !c.empty() && c[0] == '-';
    std::string mag = negative ? c.substr(1) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (mono.empty())
      out += mag;
    else if (mag == "1")
      out += mono;
    else
      out += mag + "*" + mono;
    first = false;
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VarList& vars) : s_(text), vars_(vars) {}

  MPoly parse() {
    MPoly r = expr();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw UsageError("cannot parse polynomial '" + std::string(s_) + "': " + msg);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char ch) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  MPoly expr() {
    MPoly r = product();
    while (true) {
      if (accept('+'))
        r = r + product();
      else if (accept('-'))
        r = r - product();
      else
        return r;
    }
  }
  MPoly product() {
    MPoly r = unary();
    while (accept('*')) r = r * unary();
    return r;
  }
  MPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  MPoly power() {
    MPoly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      return poly_pow(base, std::stoul(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }
  MPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      MPoly r = expr();
      if (!accept(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MPoly::constant(vars_, Integer(std::string(s_.substr(start, pos_ - start)), 10));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (!vars_.index_of(name)) error("unknown variable '" + name + "'");
      return mpoly_variable(vars_, name);
    }
    error("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the text form (integers, variables, + - * ^ and parentheses).
inline MPoly parse_mpoly(std::string_view text, const VarList& vars) {
  return detail::PolyParser(text, vars).parse();
}

// ---------------------------------------------------------------------------
// JSON form: {"vars": [...], "terms": [{"c": "<decimal>", "e": [...]}, ...]}
// with terms in canonical order.

using Json = nlohmann::ordered_json;

inline Json to_json(const MPoly& p) {
  Json j;
  j["vars"] = p.vars().names();
  Json terms = Json::array();
  for (std::size_t idx : p.canonical_order()) {
    const auto& t = p.terms()[idx];
    Json term;
    term["c"] = t.coeff.get_str();
    term["e"] = p.exponents(t.key);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline MPoly mpoly_from_json(const Json& j) {
  try {
    VarList vars(j.at("vars").get<std::vector<std::string>>());
    std::vector<std::pair<std::vector<std::uint64_t>, Integer>> terms;
    for (const auto& t : j.at("terms")) {
      auto e = t.at("e").get<std::vector<std::uint64_t>>();
      if (e.size() != vars.size()) throw UsageError("term exponent vector has wrong length");
      Integer c = parse_integer(t.at("c").get<std::string>());
      if (sgn(c) == 0) throw UsageError("zero coefficient in serialized polynomial");
      terms.emplace_back(std::move(e), std::move(c));
    }
    MPoly p = MPoly::from_terms(vars, terms);
    if (p.size() != terms.size()) throw UsageError("duplicate monomials in serialized polynomial");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace mulnpoly
