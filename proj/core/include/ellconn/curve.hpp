#pragma once

#include <string>
#include <utility>

#include "ellconn/field.hpp"
#include "ellconn/poly.hpp"

namespace ellconn {

/// Point of the cubic y^2 = x(x-1)(x-lambda), either affine or the point at
/// infinity (the group identity).
template <class K>
class CurvePoint {
 public:
  CurvePoint() : infinite_(true), x_(field_zero<K>()), y_(field_zero<K>()) {}  // infinity

  static CurvePoint infinity() { return CurvePoint(); }
  static CurvePoint affine(K x, K y) {
    CurvePoint p;
    p.infinite_ = false;
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    return p;
  }

  bool is_infinity() const { return infinite_; }
  const K& x() const { return x_; }
  const K& y() const { return y_; }
  bool is_two_torsion_affine() const { return !infinite_ && FieldTraits<K>::is_zero(y_); }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinite_ != q.infinite_) return false;
    if (p.infinite_) return true;
    return p.x_ == q.x_ && p.y_ == q.y_;
  }
  friend bool operator!=(const CurvePoint& p, const CurvePoint& q) { return !(p == q); }

 private:
  bool infinite_;
  K x_, y_;
};

/// The elliptic curve y^2 = x(x-1)(x-lambda) with a marked pair of opposite
/// points t1=(t,r), t2=(t,-r) and exponent parameters nu1, nu2.
template <class K>
class CurveInstance {
 public:
  CurveInstance(K lambda, K t, K r, K nu1, K nu2)
      : lambda_(std::move(lambda)), t_(std::move(t)), r_(std::move(r)),
        nu1_(std::move(nu1)), nu2_(std::move(nu2)) {
    const K zero = field_zero<K>(), one = field_one<K>();
    if (lambda_ == zero || lambda_ == one)
      throw DomainError("instance: lambda must avoid {0, 1}");
    if (t_ == zero || t_ == one || t_ == lambda_)
      throw DomainError("instance: t must avoid {0, 1, lambda}");
    if (FieldTraits<K>::is_zero(r_)) throw DomainError("instance: r must be nonzero");
    if (!(r_ * r_ == cubic_at(t_)))
      throw DomainError("instance: r^2 = t(t-1)(t-lambda) violated");
  }

  const K& lambda() const { return lambda_; }
  const K& t() const { return t_; }
  const K& r() const { return r_; }
  const K& nu1() const { return nu1_; }
  const K& nu2() const { return nu2_; }

  /// f(x) = x(x-1)(x-lambda) = x^3 - (1+lambda)x^2 + lambda x
  Poly<K> cubic() const {
    const K one = field_one<K>();
    return Poly<K>{field_zero<K>(), lambda_, -(one + lambda_), one};
  }
  K cubic_at(const K& x) const { return x * (x - field_one<K>()) * (x - lambda_); }

  CurvePoint<K> w_infinity() const { return CurvePoint<K>::infinity(); }
  CurvePoint<K> w0() const { return CurvePoint<K>::affine(field_zero<K>(), field_zero<K>()); }
  CurvePoint<K> w1() const { return CurvePoint<K>::affine(field_one<K>(), field_zero<K>()); }
  CurvePoint<K> w_lambda() const { return CurvePoint<K>::affine(lambda_, field_zero<K>()); }
  CurvePoint<K> t1() const { return CurvePoint<K>::affine(t_, r_); }
  CurvePoint<K> t2() const { return CurvePoint<K>::affine(t_, -r_); }

  bool on_curve(const CurvePoint<K>& p) const {
    if (p.is_infinity()) return true;
    return p.y() * p.y() == cubic_at(p.x());
  }

  CurvePoint<K> negate(const CurvePoint<K>& p) const {
    if (p.is_infinity()) return p;
    return CurvePoint<K>::affine(p.x(), -p.y());
  }

  /// Chord-tangent addition with identity at infinity.
  CurvePoint<K> add(const CurvePoint<K>& p, const CurvePoint<K>& q) const {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    const K one = field_one<K>();
    K slope;
    if (p.x() == q.x()) {
      if (p.y() == -q.y()) return CurvePoint<K>::infinity();
      // tangent: s = f'(x) / 2y
      K fp = cubic().derivative().eval(p.x());
      slope = fp / (p.y() + p.y());
    } else {
      slope = (q.y() - p.y()) / (q.x() - p.x());
    }
    // x3 = s^2 - a2 - x1 - x2 with a2 = -(1+lambda)
    K x3 = slope * slope + one + lambda_ - p.x() - q.x();
    K y3 = -(p.y() + slope * (x3 - p.x()));
    return CurvePoint<K>::affine(x3, y3);
  }

  CurvePoint<K> mul(const CurvePoint<K>& p, long n) const {
    if (n < 0) return mul(negate(p), -n);
    CurvePoint<K> acc = CurvePoint<K>::infinity();
    CurvePoint<K> base = p;
    while (n > 0) {
      if (n & 1) acc = add(acc, base);
      base = add(base, base);
      n >>= 1;
    }
    return acc;
  }

 private:
  K lambda_, t_, r_, nu1_, nu2_;
};

/// Rebuild an instance over another exact field (constants embed via traits).
template <class K2>
CurveInstance<K2> lift_instance(const CurveInstance<Rational>& inst) {
  auto f = [](const Rational& r) { return FieldTraits<K2>::from_rational(r); };
  return CurveInstance<K2>(f(inst.lambda()), f(inst.t()), f(inst.r()), f(inst.nu1()), f(inst.nu2()));
}

template <class K2>
CurvePoint<K2> lift_point(const CurvePoint<Rational>& p) {
  if (p.is_infinity()) return CurvePoint<K2>::infinity();
  return CurvePoint<K2>::affine(FieldTraits<K2>::from_rational(p.x()),
                                FieldTraits<K2>::from_rational(p.y()));
}

}  // namespace ellconn
