#pragma once

// Coefficient-ring policies for the division-polynomial ladder. Each policy
// supplies value_type and the ring operations, plus half(): exact halving
// where it exists. Over residue rings half() halves the least non-negative
// representative (adding the modulus first when it is odd); callers that
// need halving modulo an even N compute modulo 2N and reduce afterwards.

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <utility>

#include "mulnpoly/errors.hpp"
#include "mulnpoly/mpoly.hpp"
#include "mulnpoly/rings.hpp"

namespace mulnpoly {

template <class R>
concept CoefficientRing = requires(const R& r, const typename R::value_type& a, long n) {
  { r.zero() } -> std::convertible_to<typename R::value_type>;
  { r.one() } -> std::convertible_to<typename R::value_type>;
  { r.from_int(n) } -> std::convertible_to<typename R::value_type>;
  { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.sub(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.neg(a) } -> std::convertible_to<typename R::value_type>;
  { r.half(a) } -> std::convertible_to<typename R::value_type>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.equal(a, a) } -> std::convertible_to<bool>;
};

/// Z[v1, ..., vk] with MPoly values.
class IntegerPolyCoeffs {
 public:
  using value_type = MPoly;

  explicit IntegerPolyCoeffs(VarList vars) : vars_(std::move(vars)) {}

  const VarList& vars() const { return vars_; }
  MPoly zero() const { return MPoly(vars_); }
  MPoly one() const { return MPoly::constant(vars_, Integer(1)); }
  MPoly from_int(long n) const { return MPoly::constant(vars_, Integer(n)); }
  MPoly variable(std::string_view name) const { return mpoly_variable(vars_, name); }
  MPoly add(const MPoly& a, const MPoly& b) const { return a + b; }
  MPoly sub(const MPoly& a, const MPoly& b) const { return a - b; }
  MPoly mul(const MPoly& a, const MPoly& b) const { return a * b; }
  MPoly neg(const MPoly& a) const { return -a; }
  MPoly half(const MPoly& a) const { return divide_coefficients_exact(a, Integer(2)); }
  bool is_zero(const MPoly& a) const { return a.is_zero(); }
  bool equal(const MPoly& a, const MPoly& b) const { return a == b; }

  /// a / b when b divides a, else NotDivisible.
  MPoly exact_quotient(const MPoly& a, const MPoly& b) const {
    if (b.is_constant() && !b.is_zero()) {
      try {
        return divide_coefficients_exact(a, b.terms()[0].coeff);
      } catch (const ExactnessViolation& e) {
        throw NotDivisible(e.what(), b.terms()[0].coeff.get_str());
      }
    }
    return poly_divexact(a, b);
  }

  /// Sum of products a_i * b_i accumulated in one table.
  MPoly dot(std::span<const std::pair<const MPoly*, const MPoly*>> pairs) const {
    std::size_t expected = 0;
    for (const auto& [a, b] : pairs) expected = std::max(expected, a->size() + b->size());
    detail::TermAccumulator<Integer> acc(expected * 2);
    for (const auto& [a, b] : pairs) {
      if (a->is_zero() || b->is_zero()) continue;
      check_fits(*a, *b);
      for (const auto& s : a->terms())
        for (const auto& t : b->terms()) acc.add_product(s.key + t.key, s.coeff, t.coeff);
    }
    return MPoly::from_sorted(vars_, std::move(acc).finish<MPoly::Term>());
  }

 private:
  static void check_fits(const MPoly& a, const MPoly& b) {
    auto da = a.max_degrees();
    auto db = b.max_degrees();
    for (std::size_t i = 0; i < da.size(); ++i)
      if (da[i] + db[i] > a.layout().max_exponent())
        throw std::overflow_error("product exponent exceeds packed field width");
  }

  VarList vars_;
};

/// Any supported ring through the dynamic RingElement type.
class ElementCoeffs {
 public:
  using value_type = RingElement;

  explicit ElementCoeffs(RingDescriptor ring) : ring_(std::move(ring)) {}

  const RingDescriptor& descriptor() const { return ring_; }
  RingElement zero() const { return RingElement::zero(ring_); }
  RingElement one() const { return RingElement::one(ring_); }
  RingElement from_int(long n) const { return RingElement(ring_, n); }
  RingElement add(const RingElement& a, const RingElement& b) const { return a + b; }
  RingElement sub(const RingElement& a, const RingElement& b) const { return a - b; }
  RingElement mul(const RingElement& a, const RingElement& b) const { return a * b; }
  RingElement neg(const RingElement& a) const { return -a; }
  bool is_zero(const RingElement& a) const { return a.is_zero(); }
  bool equal(const RingElement& a, const RingElement& b) const { return a == b; }
  RingElement inv(const RingElement& a) const { return ring_inverse(a); }

  RingElement half(const RingElement& a) const {
    switch (ring_.kind()) {
      case RingDescriptor::Kind::Integers: {
        if (!mpz_even_p(a.integer().get_mpz_t())) throw ExactnessViolation("halving an odd integer");
        return RingElement(ring_, Integer(a.integer() / 2));
      }
      case RingDescriptor::Kind::Rationals:
        return RingElement::from_rational(ring_, a.rational() / 2);
      case RingDescriptor::Kind::Residue:
        return RingElement(ring_, half_residue(a.integer(), ring_.modulus()));
      case RingDescriptor::Kind::Polynomial: {
        const RingDescriptor& base = ring_.base();
        std::vector<MPoly::Term> out;
        for (const auto& t : a.poly().terms()) {
          Integer h = base.kind() == RingDescriptor::Kind::Residue ? half_residue(t.coeff, base.modulus())
                                                                   : exact_half(t.coeff);
          if (h != 0) out.push_back(MPoly::Term{t.key, std::move(h)});
        }
        return RingElement::from_poly(ring_, MPoly::from_sorted(a.poly().vars(), std::move(out)));
      }
    }
    throw UsageError("unreachable");
  }

 private:
  static Integer exact_half(const Integer& v) {
    if (!mpz_even_p(v.get_mpz_t())) throw ExactnessViolation("halving an odd integer coefficient");
    return v / 2;
  }
  static Integer half_residue(const Integer& v, const Integer& m) {
    if (mpz_even_p(v.get_mpz_t())) return v / 2;
    if (mpz_odd_p(m.get_mpz_t())) return (v + m) / 2;
    throw ExactnessViolation("halving an odd residue modulo an even modulus");
  }

  RingDescriptor ring_;
};

/// Z/MZ for M < 2^32 with machine words.
class SmallModCoeffs {
 public:
  using value_type = std::uint64_t;
  static constexpr std::uint64_t kLimit = std::uint64_t{1} << 32;

  explicit SmallModCoeffs(std::uint64_t modulus) : m_(modulus) {
    if (modulus < 2 || modulus >= kLimit) throw UsageError("SmallModCoeffs modulus must be in [2, 2^32)");
  }

  std::uint64_t modulus() const { return m_; }
  std::uint64_t zero() const { return 0; }
  std::uint64_t one() const { return 1 % m_; }
  std::uint64_t from_int(long n) const {
    long r = n % static_cast<long>(m_);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(m_) : r);
  }
  std::uint64_t from_integer(const Integer& n) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), m_);
    return r.get_ui();
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + m_ - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % m_; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : m_ - a; }
  bool is_zero(std::uint64_t a) const { return a == 0; }
  bool equal(std::uint64_t a, std::uint64_t b) const { return a == b; }
  std::uint64_t inv(std::uint64_t a) const {
    std::int64_t r0 = static_cast<std::int64_t>(m_), r1 = static_cast<std::int64_t>(a % m_);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
      std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    if (r0 != 1) throw NotAUnit(std::to_string(a) + " is not a unit modulo " + std::to_string(m_), Integer(static_cast<unsigned long>(r0)));
    return static_cast<std::uint64_t>(s0 < 0 ? s0 + static_cast<std::int64_t>(m_) : s0);
  }
  std::uint64_t exact_quotient(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }
  std::uint64_t half(std::uint64_t a) const {
    if (a % 2 == 0) return a / 2;
    if (m_ % 2 == 1) return (a + m_) / 2;
    throw ExactnessViolation("halving an odd residue modulo an even modulus");
  }

  /// Dense product, reducing once per output coefficient.
  std::vector<std::uint64_t> mul_dense(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i] * b[j]);
    }
    std::vector<std::uint64_t> out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<std::uint64_t>(acc[k] % m_);
    return out;
  }

 private:
  std::uint64_t m_;
};

}  // namespace mulnpoly
