#ifndef NETFLOW_RATIONAL_HPP
#define NETFLOW_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netflow {

using Rational = mpq_class;
using EdgeId = int;
using VertexId = int;

/**
 * Parse an exact rational from "p/q", "p" or a finite decimal such as "0.25".
 * Throws std::invalid_argument on malformed input or a zero denominator.
 */
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, "p" for integers.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

/// p/q in lowest terms. mpq_class(p, q) alone does not reduce.
inline Rational ratio(const mpz_class& p, const mpz_class& q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}
inline Rational ratio(long p, long q) { return ratio(mpz_class(p), mpz_class(q)); }

/// Largest integer not exceeding `value`.
long floor_to_long(const Rational& value);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const std::complex<double>& x) { return x == std::complex<double>{}; }

inline Rational magnitude(const Rational& x) { return abs(x); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

/// Norm type associated with a scalar: exact for rationals, double otherwise.
template <class V>
using NormType = decltype(magnitude(std::declval<const V&>()));

template <class V>
V from_rational(const Rational& x);

template <>
inline Rational from_rational<Rational>(const Rational& x) {
  return x;
}
template <>
inline double from_rational<double>(const Rational& x) {
  return x.get_d();
}
template <>
inline std::complex<double> from_rational<std::complex<double>>(const Rational& x) {
  return {x.get_d(), 0.0};
}

/// Finitely supported vector in l1 indexed by edge id. Zero entries are never stored.
template <class V>
using SparseVector = std::map<EdgeId, V>;

using RationalVector = SparseVector<Rational>;

/// y += a * x, dropping entries that cancel to zero.
template <class V>
void add_scaled(SparseVector<V>& y, const V& a, const SparseVector<V>& x) {
  if (is_zero(a)) return;
  for (const auto& [index, value] : x) {
    V term = a * value;
    auto it = y.find(index);
    if (it == y.end()) {
      if (!is_zero(term)) y.emplace(index, std::move(term));
    } else {
      it->second += term;
      if (is_zero(it->second)) y.erase(it);
    }
  }
}

template <class V>
NormType<V> l1_norm(const SparseVector<V>& x) {
  NormType<V> total{0};
  for (const auto& [index, value] : x) total += magnitude(value);
  return total;
}

template <class V>
bool is_nonnegative(const SparseVector<V>& x) {
  for (const auto& [index, value] : x) {
    if (value < 0) return false;
  }
  return true;
}

}  // namespace netflow

#endif  // NETFLOW_RATIONAL_HPP
