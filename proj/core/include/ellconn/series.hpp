#pragma once

#include <utility>
#include <vector>

#include "ellconn/element.hpp"

namespace ellconn {

/// Truncated Laurent series in a local parameter u: coefficients for
/// exponents [lead, prec) with everything below lead exactly zero and
/// everything from prec on unknown.
template <class K>
class LaurentSeries {
 public:
  LaurentSeries() : lead_(0), prec_(0) {}
  LaurentSeries(int lead, std::vector<K> coeffs)
      : lead_(lead), prec_(lead + static_cast<int>(coeffs.size())), c_(std::move(coeffs)) {}

  static LaurentSeries zero(int prec) {
    LaurentSeries s;
    s.lead_ = prec;
    s.prec_ = prec;
    return s;
  }
  static LaurentSeries constant(const K& v, int prec) {
    if (prec <= 0) return zero(prec);
    LaurentSeries s(0, std::vector<K>(static_cast<size_t>(prec), field_zero<K>()));
    s.c_[0] = v;
    return s;
  }
  /// u^k known to precision prec.
  static LaurentSeries parameter_power(int k, int prec) {
    if (prec <= k) throw DomainError("series: requested power beyond precision");
    LaurentSeries s(k, std::vector<K>(static_cast<size_t>(prec - k), field_zero<K>()));
    s.c_[0] = field_one<K>();
    return s;
  }

  int prec() const { return prec_; }
  bool is_zero_to_prec() const {
    for (const auto& v : c_)
      if (!FieldTraits<K>::is_zero(v)) return false;
    return true;
  }

  K coeff(int i) const {
    if (i >= prec_) throw DomainError("series: coefficient beyond precision");
    if (i < lead_) return field_zero<K>();
    return c_[static_cast<size_t>(i - lead_)];
  }

  /// Exponent of the first nonzero coefficient; error when zero to precision.
  int valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!FieldTraits<K>::is_zero(c_[i])) return lead_ + static_cast<int>(i);
    throw DomainError("series: valuation of (truncation-)zero series");
  }

  LaurentSeries truncated(int new_prec) const {
    if (new_prec >= prec_) return *this;
    LaurentSeries s;
    s.lead_ = std::min(lead_, new_prec);
    s.prec_ = new_prec;
    s.c_.assign(c_.begin(), c_.begin() + std::max(0, new_prec - lead_));
    return s;
  }

  /// Extends the precision with zero coefficients. Only valid when the
  /// caller can vouch for them (exact data, or an ansatz to be corrected).
  LaurentSeries zero_extended(int new_prec) const {
    if (new_prec <= prec_) return truncated(new_prec);
    LaurentSeries s = *this;
    s.c_.resize(c_.size() + static_cast<size_t>(new_prec - prec_), field_zero<K>());
    s.prec_ = new_prec;
    return s;
  }

  LaurentSeries operator-() const {
    LaurentSeries s = *this;
    for (auto& v : s.c_) v = -v;
    return s;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    int prec = std::min(a.prec_, b.prec_);
    int lead = std::min(a.lead_, b.lead_);
    lead = std::min(lead, prec);
    LaurentSeries s;
    s.lead_ = lead;
    s.prec_ = prec;
    s.c_.assign(static_cast<size_t>(prec - lead), field_zero<K>());
    for (int i = lead; i < prec; ++i) {
      K v = field_zero<K>();
      if (i >= a.lead_ && i < a.prec_) v = v + a.c_[static_cast<size_t>(i - a.lead_)];
      if (i >= b.lead_ && i < b.prec_) v = v + b.c_[static_cast<size_t>(i - b.lead_)];
      s.c_[static_cast<size_t>(i - lead)] = v;
    }
    return s;
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

  friend LaurentSeries operator*(const K& v, const LaurentSeries& a) {
    LaurentSeries s = a;
    for (auto& c : s.c_) c = v * c;
    return s;
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    // Known-zero factors still limit precision of the product.
    int a_lead = a.effective_lead(), b_lead = b.effective_lead();
    int prec = std::min(a_lead + b.prec_, b_lead + a.prec_);
    int lead = a_lead + b_lead;
    LaurentSeries s;
    s.prec_ = prec;
    if (lead >= prec) {
      s.lead_ = prec;
      return s;
    }
    s.lead_ = lead;
    s.c_.assign(static_cast<size_t>(prec - lead), field_zero<K>());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (FieldTraits<K>::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        int e = a.lead_ + static_cast<int>(i) + b.lead_ + static_cast<int>(j);
        if (e >= prec) break;
        if (e < lead) continue;
        s.c_[static_cast<size_t>(e - lead)] = s.c_[static_cast<size_t>(e - lead)] + a.c_[i] * b.c_[j];
      }
    }
    return s;
  }

  LaurentSeries inverse() const {
    int val = valuation();
    int n = prec_ - val;  // relative length
    std::vector<K> a(static_cast<size_t>(n), field_zero<K>());
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = coeff(val + i);
    std::vector<K> inv(static_cast<size_t>(n), field_zero<K>());
    K lead_inv = field_one<K>() / a[0];
    inv[0] = lead_inv;
    for (int k = 1; k < n; ++k) {
      K acc = field_zero<K>();
      for (int j = 1; j <= k; ++j) acc = acc + a[static_cast<size_t>(j)] * inv[static_cast<size_t>(k - j)];
      inv[static_cast<size_t>(k)] = -(lead_inv * acc);
    }
    return LaurentSeries(-val, std::move(inv));
  }

  /// Square root of a series with valuation 0 and constant coefficient 1.
  LaurentSeries sqrt_unit() const {
    if (prec_ <= 0 || lead_ > 0 || !(coeff(0) == field_one<K>()))
      throw DomainError("series: sqrt needs unit constant term 1");
    int n = prec_;
    std::vector<K> s(static_cast<size_t>(n), field_zero<K>());
    s[0] = field_one<K>();
    const K two = field_one<K>() + field_one<K>();
    for (int k = 1; k < n; ++k) {
      K acc = coeff(k);
      for (int i = 1; i < k; ++i) acc = acc - s[static_cast<size_t>(i)] * s[static_cast<size_t>(k - i)];
      s[static_cast<size_t>(k)] = acc / two;
    }
    return LaurentSeries(0, std::move(s));
  }

  /// Termwise d/du.
  LaurentSeries derivative() const {
    LaurentSeries s;
    s.lead_ = lead_ - 1;
    s.prec_ = prec_ - 1;
    s.c_.assign(c_.size(), field_zero<K>());
    for (size_t i = 0; i < c_.size(); ++i) {
      int e = lead_ + static_cast<int>(i);
      s.c_[i] = FieldTraits<K>::from_long(e) * c_[i];
    }
    return s;
  }

 private:
  int effective_lead() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!FieldTraits<K>::is_zero(c_[i])) return lead_ + static_cast<int>(i);
    return prec_;
  }

  int lead_;
  int prec_;
  std::vector<K> c_;
};

template <class K>
LaurentSeries<K> eval_poly_on_series(const Poly<K>& p, const LaurentSeries<K>& x) {
  LaurentSeries<K> acc = LaurentSeries<K>::zero(x.prec());
  // Horner would lose precision tracking symmetry; plain power accumulation.
  LaurentSeries<K> pw = LaurentSeries<K>::constant(field_one<K>(), x.prec());
  for (int i = 0; i <= (p.is_zero() ? -1 : p.degree()); ++i) {
    acc = acc + p.coeff(i) * pw;
    pw = pw * x;
  }
  return acc;
}

template <class K>
LaurentSeries<K> eval_ratfunc_on_series(const RatFunc<K>& r, const LaurentSeries<K>& x) {
  if (r.is_zero()) return LaurentSeries<K>::zero(x.prec());
  return eval_poly_on_series(r.num(), x) * eval_poly_on_series(r.den(), x).inverse();
}

/// Expansions of the coordinate functions at a point, in the canonical local
/// parameter: u = x-x0 at affine points off 2-torsion, u = y at affine
/// 2-torsion, u = x/y at infinity.
template <class K>
struct LocalChart {
  CurvePoint<K> at;
  LaurentSeries<K> x, y, dx_du;
};

template <class K>
LocalChart<K> make_chart(const CurveInstance<K>& inst, const CurvePoint<K>& p, int prec) {
  if (!inst.on_curve(p)) throw DomainError("chart: point not on curve");
  LocalChart<K> ch;
  ch.at = p;
  const K one = field_one<K>();
  if (p.is_infinity()) {
    // u = x/y. From y^2 = f(x): x = u^2 (x^2 - (1+lambda)x + lambda), solved
    // by x = u^{-2} w with w the unit root of w^2 - (1+(1+lambda)u^2)w + lambda u^4 = 0.
    int n = prec + 8;
    Poly<K> a_poly{one, field_zero<K>(), one + inst.lambda()};  // 1 + (1+lambda)u^2
    LaurentSeries<K> a = eval_poly_on_series(a_poly, LaurentSeries<K>::parameter_power(1, n));
    LaurentSeries<K> u4 = LaurentSeries<K>::parameter_power(4, n + 4).truncated(n);
    const K four = FieldTraits<K>::from_long(4);
    LaurentSeries<K> disc = a * a - (four * inst.lambda()) * u4;
    LaurentSeries<K> s = disc.sqrt_unit();
    const K half = one / (one + one);
    LaurentSeries<K> w = half * (a + s);
    LaurentSeries<K> u_m2 = LaurentSeries<K>::parameter_power(-2, n - 2);
    LaurentSeries<K> u_m3 = LaurentSeries<K>::parameter_power(-3, n - 3);
    ch.x = u_m2 * w;
    ch.y = u_m3 * w;
    ch.dx_du = ch.x.derivative();
    return ch;
  }
  if (p.is_two_torsion_affine()) {
    // u = y: solve f(x) = u^2 with x(0) = x0 by Newton iteration; f'(x0) is a
    // unit at a smooth 2-torsion point and the accuracy doubles each step.
    int n = prec + 6;
    const Poly<K>& f = inst.cubic();
    Poly<K> fp = f.derivative();
    int acc = 2;
    LaurentSeries<K> x = LaurentSeries<K>::constant(p.x(), acc);
    while (acc < n) {
      acc = std::min(n, 2 * acc);
      x = x.zero_extended(acc);
      LaurentSeries<K> u2 = LaurentSeries<K>::parameter_power(2, acc);
      LaurentSeries<K> num = eval_poly_on_series(f, x) - u2;
      x = x - num * eval_poly_on_series(fp, x).inverse();
      x = x.truncated(acc);
    }
    ch.x = x.zero_extended(n);
    ch.y = LaurentSeries<K>::parameter_power(1, n);
    ch.dx_du = ch.x.derivative();
    return ch;
  }
  // Generic affine point: u = x - x0, y = y0 sqrt(1 + (f(x0+u)-y0^2)/y0^2).
  int n = prec + 4;
  {
    std::vector<K> xc(static_cast<size_t>(n), field_zero<K>());
    xc[0] = p.x();
    xc[1] = one;
    ch.x = LaurentSeries<K>(0, std::move(xc));
  }
  Poly<K> shifted;  // f(x0+u) as polynomial in u
  {
    Poly<K> acc = Poly<K>::constant(field_zero<K>());
    Poly<K> base{p.x(), one};
    Poly<K> pw = Poly<K>::constant(one);
    const Poly<K>& f = inst.cubic();
    for (int i = 0; i <= f.degree(); ++i) {
      acc = acc + f.coeff(i) * pw;
      pw = pw * base;
    }
    shifted = acc;
  }
  K y0sq = p.y() * p.y();
  Poly<K> w = (one / y0sq) * shifted;  // 1 + higher order: w(0) = f(x0)/y0^2 = 1
  LaurentSeries<K> ws = eval_poly_on_series(w, LaurentSeries<K>::parameter_power(1, n));
  ch.y = p.y() * ws.sqrt_unit();
  ch.dx_du = LaurentSeries<K>::constant(one, n);
  return ch;
}

template <class K>
LaurentSeries<K> eval_on_chart(const LocalChart<K>& ch, const CurveElement<K>& g) {
  LaurentSeries<K> s = eval_ratfunc_on_series(g.a, ch.x);
  if (!g.b.is_zero()) s = s + eval_ratfunc_on_series(g.b, ch.x) * ch.y;
  return s;
}

/// Series of the 1-form factor (dx/y)/du at the chart point.
template <class K>
LaurentSeries<K> one_form_factor(const LocalChart<K>& ch) {
  return ch.dx_du * ch.y.inverse();
}

/// Precision needed so that evaluating g on a chart at p still resolves
/// coefficients through exponent `upto` (inclusive). Conservative.
template <class K>
int chart_precision_for(const CurveElement<K>& g, int upto) {
  // The two components are evaluated separately and then added, so only the
  // worse of the two precision losses matters.
  auto weight = [](const RatFunc<K>& r) {
    if (r.is_zero()) return 0;
    return 2 * (std::max(r.num().degree(), 0) + std::max(r.den().degree(), 0));
  };
  return upto + std::max(weight(g.a), weight(g.b)) + 12;
}

/// Laurent coefficients of g at p from its valuation through `order`.
template <class K>
LaurentSeries<K> local_series(const CurveInstance<K>& inst, const CurveElement<K>& g,
                              const CurvePoint<K>& p, int order) {
  if (g.is_zero()) throw DomainError("local series: zero function");
  LocalChart<K> ch = make_chart(inst, p, chart_precision_for(g, order));
  return eval_on_chart(ch, g).truncated(order + 1);
}

/// Residue at p of the scalar 1-form g dx/y.
template <class K>
K scalar_residue(const CurveInstance<K>& inst, const CurveElement<K>& g, const CurvePoint<K>& p) {
  if (g.is_zero()) return field_zero<K>();
  LocalChart<K> ch = make_chart(inst, p, chart_precision_for(g, 2));
  LaurentSeries<K> s = eval_on_chart(ch, g) * one_form_factor(ch);
  return s.coeff(-1);
}

}  // namespace ellconn
