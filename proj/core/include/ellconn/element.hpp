#pragma once

#include <utility>

#include "ellconn/curve.hpp"
#include "ellconn/ratfunc.hpp"

namespace ellconn {

/// Function-field element a(x) + b(x)*y on y^2 = f(x). Multiplication reduces
/// y^2 to f; an element is invertible iff its norm a^2 - b^2 f is nonzero,
/// which for nonzero (a,b) always holds (f is squarefree of odd degree).
template <class K>
struct CurveElement {
  RatFunc<K> a, b;

  CurveElement() = default;
  CurveElement(RatFunc<K> a_part, RatFunc<K> b_part) : a(std::move(a_part)), b(std::move(b_part)) {}

  static CurveElement zero() { return CurveElement(); }
  static CurveElement one() { return CurveElement(RatFunc<K>::constant(field_one<K>()), RatFunc<K>()); }
  static CurveElement from_ratfunc(RatFunc<K> f) { return CurveElement(std::move(f), RatFunc<K>()); }
  static CurveElement x_function() { return from_ratfunc(RatFunc<K>::variable()); }
  static CurveElement y_function() {
    return CurveElement(RatFunc<K>(), RatFunc<K>::constant(field_one<K>()));
  }

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  bool is_rational() const { return b.is_zero(); }

  CurveElement operator-() const { return CurveElement(-a, -b); }
  friend CurveElement operator+(const CurveElement& g, const CurveElement& h) {
    return CurveElement(g.a + h.a, g.b + h.b);
  }
  friend CurveElement operator-(const CurveElement& g, const CurveElement& h) {
    return CurveElement(g.a - h.a, g.b - h.b);
  }
  friend bool operator==(const CurveElement& g, const CurveElement& h) {
    return g.a == h.a && g.b == h.b;
  }
  friend bool operator!=(const CurveElement& g, const CurveElement& h) { return !(g == h); }

  friend CurveElement operator*(const K& s, const CurveElement& g) {
    RatFunc<K> c = RatFunc<K>::constant(s);
    return CurveElement(c * g.a, c * g.b);
  }
  friend CurveElement operator*(const RatFunc<K>& s, const CurveElement& g) {
    return CurveElement(s * g.a, s * g.b);
  }
};

template <class K>
CurveElement<K> mul(const CurveInstance<K>& inst, const CurveElement<K>& g, const CurveElement<K>& h) {
  RatFunc<K> f(inst.cubic());
  return CurveElement<K>(g.a * h.a + f * (g.b * h.b), g.a * h.b + g.b * h.a);
}

template <class K>
RatFunc<K> norm(const CurveInstance<K>& inst, const CurveElement<K>& g) {
  RatFunc<K> f(inst.cubic());
  return g.a * g.a - f * (g.b * g.b);
}

template <class K>
CurveElement<K> conjugate(const CurveElement<K>& g) {
  return CurveElement<K>(g.a, -g.b);
}

template <class K>
CurveElement<K> inverse(const CurveInstance<K>& inst, const CurveElement<K>& g) {
  if (g.is_zero()) throw DomainError("curve element: division by the zero function");
  RatFunc<K> n = norm(inst, g);
  RatFunc<K> inv_n = RatFunc<K>::constant(field_one<K>()) / n;
  return CurveElement<K>(g.a * inv_n, -(g.b * inv_n));
}

template <class K>
CurveElement<K> div(const CurveInstance<K>& inst, const CurveElement<K>& g, const CurveElement<K>& h) {
  return mul(inst, g, inverse(inst, h));
}

/// d/dx acting on a(x) + b(x) y, using dy/dx = f'/(2y) = f' y / (2f).
template <class K>
CurveElement<K> x_derivative(const CurveInstance<K>& inst, const CurveElement<K>& g) {
  RatFunc<K> f(inst.cubic());
  RatFunc<K> fp(inst.cubic().derivative());
  const K two = field_one<K>() + field_one<K>();
  RatFunc<K> two_rf = RatFunc<K>::constant(two);
  return CurveElement<K>(g.a.derivative(), g.b.derivative() + g.b * fp / (two_rf * f));
}

/// Value at an affine point (evaluates both coordinates; pole -> error).
template <class K>
K eval_at(const CurveElement<K>& g, const CurvePoint<K>& p) {
  if (p.is_infinity()) throw DomainError("curve element: evaluation at infinity via charts only");
  return g.a.eval(p.x()) + g.b.eval(p.x()) * p.y();
}

}  // namespace ellconn
