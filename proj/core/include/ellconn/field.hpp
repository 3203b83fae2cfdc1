#pragma once

#include <optional>
#include <string>

#include "ellconn/rational.hpp"

namespace ellconn {

/// Exact coefficient field plug. Two instances exist: Q (Rational) and
/// Q(eps) (RatFunc<Rational> in the formal direction eps); Jet2 values get a
/// traits instance as well so closed-form expressions can be differentiated.
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool has_epsilon = false;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_long(long n) { return Rational(n); }
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static std::optional<Rational> sqrt(const Rational& v) { return v.sqrt(); }
  static std::string str(const Rational& v) { return v.str(); }
};

template <class K>
K field_zero() {
  return FieldTraits<K>::zero();
}
template <class K>
K field_one() {
  return FieldTraits<K>::one();
}

}  // namespace ellconn
