#pragma once

#include <optional>
#include <utility>

#include "ellconn/poly.hpp"

namespace ellconn {

/// Rational function num/den over K, kept in canonical form: gcd(num,den)=1,
/// den monic and nonzero. Equality is componentwise on the canonical form.
template <class K>
class RatFunc {
 public:
  RatFunc() : num_(), den_(Poly<K>::constant(field_one<K>())) {}
  RatFunc(Poly<K> num) : num_(std::move(num)), den_(Poly<K>::constant(field_one<K>())) {}  // NOLINT
  RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc constant(const K& v) { return RatFunc(Poly<K>::constant(v)); }
  static RatFunc variable() { return RatFunc(Poly<K>::variable()); }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// Constant value; valid when is_constant().
  K constant_value() const { return num_.coeff(0); }

  K eval(const K& x) const {
    K d = den_.eval(x);
    if (FieldTraits<K>::is_zero(d)) throw DomainError("ratfunc: pole at evaluation point");
    return num_.eval(x) / d;
  }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  RatFunc operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError("ratfunc: division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  /// Order of vanishing at x0: multiplicity in num minus multiplicity in den.
  int order_at(const K& x0) const {
    if (is_zero()) throw DomainError("ratfunc: order of zero function");
    return num_.root_multiplicity(x0) - den_.root_multiplicity(x0);
  }

  /// deg num - deg den; the order of the pole at infinity of the function.
  int degree() const {
    if (is_zero()) throw DomainError("ratfunc: degree of zero function");
    return num_.degree() - den_.degree();
  }

  std::optional<RatFunc> sqrt() const {
    auto n = num_.sqrt();
    if (!n) return std::nullopt;
    auto d = den_.sqrt();
    if (!d) return std::nullopt;
    return RatFunc(std::move(*n), std::move(*d));
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DomainError("ratfunc: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(field_one<K>());
      return;
    }
    Poly<K> g = Poly<K>::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    K lead = den_.leading();
    if (!(lead == field_one<K>())) {
      K inv = field_one<K>() / lead;
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  Poly<K> num_, den_;
};

/// The coefficient field Q(eps): rational functions of one formal direction.
/// Used for chart-regularity limits and polynomial-identity checks.
using QEps = RatFunc<Rational>;

template <>
struct FieldTraits<QEps> {
  static constexpr bool has_epsilon = true;
  static QEps zero() { return QEps(); }
  static QEps one() { return QEps::constant(Rational(1)); }
  static QEps from_long(long n) { return QEps::constant(Rational(n)); }
  static QEps from_rational(const Rational& r) { return QEps::constant(r); }
  static bool is_zero(const QEps& v) { return v.is_zero(); }
  static std::optional<QEps> sqrt(const QEps& v) { return v.sqrt(); }
  static std::string str(const QEps& v);  // defined in io.cpp

  static QEps epsilon() { return QEps::variable(); }
  /// Canonical form makes this decidable: pole at eps=0 iff eps divides den.
  static bool has_pole_at_origin(const QEps& v) {
    return !v.is_zero() && v.den().coeff(0).is_zero();
  }
  static Rational eval_at_origin(const QEps& v) { return v.eval(Rational(0)); }
};

}  // namespace ellconn
