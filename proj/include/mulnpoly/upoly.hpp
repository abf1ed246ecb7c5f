#pragma once

// Dense univariate polynomials over a coefficient-ring policy. Index k holds
// the coefficient of T^k; the zero polynomial is the empty vector.

#include <algorithm>
#include <utility>
#include <vector>

#include "mulnpoly/coeff_rings.hpp"

namespace mulnpoly::upoly {

template <class R>
using Dense = std::vector<typename R::value_type>;

template <class R>
void trim(const R& r, Dense<R>& p) {
  while (!p.empty() && r.is_zero(p.back())) p.pop_back();
}

template <class R>
Dense<R> constant(const R& r, typename R::value_type c) {
  Dense<R> p;
  if (!r.is_zero(c)) p.push_back(std::move(c));
  return p;
}

template <class R>
Dense<R> monomial(const R& r, std::size_t k, typename R::value_type c) {
  if (r.is_zero(c)) return {};
  Dense<R> p(k + 1, r.zero());
  p[k] = std::move(c);
  return p;
}

template <class R>
Dense<R> add(const R& r, const Dense<R>& a, const Dense<R>& b) {
  const Dense<R>& lo = a.size() < b.size() ? a : b;
  Dense<R> out = a.size() < b.size() ? b : a;
  for (std::size_t i = 0; i < lo.size(); ++i) out[i] = r.add(out[i], lo[i]);
  trim(r, out);
  return out;
}

template <class R>
Dense<R> neg(const R& r, const Dense<R>& a) {
  Dense<R> out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(r.neg(c));
  return out;
}

template <class R>
Dense<R> sub(const R& r, const Dense<R>& a, const Dense<R>& b) {
  Dense<R> out = a;
  if (out.size() < b.size()) out.resize(b.size(), r.zero());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = r.sub(out[i], b[i]);
  trim(r, out);
  return out;
}

template <class R>
Dense<R> scale(const R& r, const typename R::value_type& c, const Dense<R>& a) {
  if (r.is_zero(c)) return {};
  Dense<R> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(r.mul(c, x));
  trim(r, out);
  return out;
}

template <class R>
Dense<R> shift(const R& r, const Dense<R>& a, std::size_t k) {
  if (a.empty()) return {};
  Dense<R> out(k, r.zero());
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

template <class R>
Dense<R> mul(const R& r, const Dense<R>& a, const Dense<R>& b) {
  if (a.empty() || b.empty()) return {};
  Dense<R> out;
  if constexpr (requires { r.mul_dense(a, b); }) {
    out = r.mul_dense(a, b);
  } else if constexpr (requires { r.dot(std::span<const std::pair<const typename R::value_type*,
                                                                 const typename R::value_type*>>{}); }) {
    using V = typename R::value_type;
    out.reserve(a.size() + b.size() - 1);
    std::vector<std::pair<const V*, const V*>> pairs;
    for (std::size_t k = 0; k + 1 < a.size() + b.size(); ++k) {
      pairs.clear();
      std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
      std::size_t hi = std::min(k, a.size() - 1);
      for (std::size_t i = lo; i <= hi; ++i) pairs.emplace_back(&a[i], &b[k - i]);
      out.push_back(r.dot(pairs));
    }
  } else {
    out.assign(a.size() + b.size() - 1, r.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = r.add(out[i + j], r.mul(a[i], b[j]));
  }
  trim(r, out);
  return out;
}

template <class R>
Dense<R> half(const R& r, const Dense<R>& a) {
  Dense<R> out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(r.half(c));
  trim(r, out);
  return out;
}

template <class R>
typename R::value_type evaluate(const R& r, const Dense<R>& a, const typename R::value_type& x) {
  typename R::value_type acc = r.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = r.add(r.mul(acc, x), *it);
  return acc;
}

template <class R>
bool equal(const R& r, const Dense<R>& a, const Dense<R>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!r.equal(a[i], b[i])) return false;
  return true;
}

/// num / den when den divides num exactly; NotDivisible otherwise. The ring
/// must provide exact_quotient for division by den's leading coefficient.
template <class R>
Dense<R> divexact(const R& r, const Dense<R>& num, const Dense<R>& den) {
  if (den.empty()) throw UsageError("division by the zero polynomial");
  if (num.size() < den.size()) {
    if (num.empty()) return {};
    throw NotDivisible("degree of the divisor exceeds the dividend", "");
  }
  Dense<R> rem = num;
  const std::size_t dd = den.size() - 1;
  Dense<R> q(num.size() - dd, r.zero());
  for (std::size_t k = q.size(); k-- > 0;) {
    if (r.is_zero(rem[k + dd])) continue;
    q[k] = r.exact_quotient(rem[k + dd], den.back());
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] = r.sub(rem[k + j], r.mul(q[k], den[j]));
  }
  for (const auto& c : rem)
    if (!r.is_zero(c)) throw NotDivisible("nonzero remainder in univariate division", "");
  trim(r, q);
  return q;
}

/// Map every coefficient through f into another policy's value type.
template <class R2, class R, class F>
Dense<R2> map(const R2& r2, const Dense<R>& a, F&& f) {
  Dense<R2> out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(f(c));
  trim(r2, out);
  return out;
}

}  // namespace mulnpoly::upoly
