#pragma once

#include <optional>

#include "ellconn/errors.hpp"
#include "ellconn/field.hpp"

namespace ellconn {

/// Second-order jet in two directions: value, first partials d1/d2 and second
/// partials d11/d12/d22. Arithmetic is truncated Taylor expansion, so rational
/// expressions evaluated on seeded jets yield exact derivatives.
template <class K>
struct Jet2 {
  K v = field_zero<K>();
  K d1 = field_zero<K>(), d2 = field_zero<K>();
  K d11 = field_zero<K>(), d12 = field_zero<K>(), d22 = field_zero<K>();

  Jet2() = default;
  explicit Jet2(K value) : v(std::move(value)) {}

  static Jet2 constant(const K& value) { return Jet2(value); }
  /// Seed for the coordinate driving direction 1 or 2 (axis = 1 or 2).
  static Jet2 variable(const K& value, int axis) {
    Jet2 j(value);
    if (axis == 1)
      j.d1 = field_one<K>();
    else
      j.d2 = field_one<K>();
    return j;
  }

  Jet2 operator-() const {
    Jet2 r;
    r.v = -v; r.d1 = -d1; r.d2 = -d2; r.d11 = -d11; r.d12 = -d12; r.d22 = -d22;
    return r;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v + b.v;
    r.d1 = a.d1 + b.d1; r.d2 = a.d2 + b.d2;
    r.d11 = a.d11 + b.d11; r.d12 = a.d12 + b.d12; r.d22 = a.d22 + b.d22;
    return r;
  }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v * b.v;
    r.d1 = a.d1 * b.v + a.v * b.d1;
    r.d2 = a.d2 * b.v + a.v * b.d2;
    r.d11 = a.d11 * b.v + a.d1 * b.d1 + a.d1 * b.d1 + a.v * b.d11;
    r.d12 = a.d12 * b.v + a.d1 * b.d2 + a.d2 * b.d1 + a.v * b.d12;
    r.d22 = a.d22 * b.v + a.d2 * b.d2 + a.d2 * b.d2 + a.v * b.d22;
    return r;
  }
  Jet2 inverse() const {
    if (FieldTraits<K>::is_zero(v)) throw DomainError("jet: pole at evaluation point");
    const K one = field_one<K>();
    K iv = one / v;
    K iv2 = iv * iv;
    K iv3 = iv2 * iv;
    const K two = one + one;
    Jet2 r;
    r.v = iv;
    r.d1 = -d1 * iv2;
    r.d2 = -d2 * iv2;
    r.d11 = (two * d1 * d1 - v * d11) * iv3;
    r.d12 = (two * d1 * d2 - v * d12) * iv3;
    r.d22 = (two * d2 * d2 - v * d22) * iv3;
    return r;
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * b.inverse(); }
  friend bool operator==(const Jet2& a, const Jet2& b) {
    return a.v == b.v && a.d1 == b.d1 && a.d2 == b.d2 && a.d11 == b.d11 && a.d12 == b.d12 &&
           a.d22 == b.d22;
  }
  friend bool operator!=(const Jet2& a, const Jet2& b) { return !(a == b); }
};

/// Coefficient of du1^du2 in da^db for jet-valued functions a, b.
template <class K>
K wedge_coefficient(const Jet2<K>& a, const Jet2<K>& b) {
  return a.d1 * b.d2 - a.d2 * b.d1;
}

using JetQ = Jet2<Rational>;

template <>
struct FieldTraits<JetQ> {
  static constexpr bool has_epsilon = false;
  static JetQ zero() { return JetQ(); }
  static JetQ one() { return JetQ(Rational(1)); }
  static JetQ from_long(long n) { return JetQ(Rational(n)); }
  static JetQ from_rational(const Rational& r) { return JetQ(r); }
  static bool is_zero(const JetQ& v) {
    return v.v.is_zero() && v.d1.is_zero() && v.d2.is_zero() && v.d11.is_zero() &&
           v.d12.is_zero() && v.d22.is_zero();
  }
  static std::optional<JetQ> sqrt(const JetQ&) { return std::nullopt; }
  static std::string str(const JetQ& v) { return v.v.str(); }
};

}  // namespace ellconn
