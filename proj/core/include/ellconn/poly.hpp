#pragma once

#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>

#include "ellconn/errors.hpp"
#include "ellconn/field.hpp"

namespace ellconn {

/// Dense univariate polynomial over an exact field K. Coefficients are stored
/// lowest-degree first with no trailing zeros; the zero polynomial is empty
/// and reports the sentinel degree kZeroDegree.
template <class K>
class Poly {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
  static Poly variable() { return Poly(std::vector<K>{field_zero<K>(), field_one<K>()}); }
  /// c * x^n
  static Poly monomial(const K& c, int n) {
    std::vector<K> v(static_cast<size_t>(n) + 1, field_zero<K>());
    v.back() = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  const K& leading() const { return c_.back(); }

  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return field_zero<K>();
    return c_[static_cast<size_t>(i)];
  }
  const std::vector<K>& coeffs() const { return c_; }

  K eval(const K& x) const {
    K acc = field_zero<K>();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Horner evaluation into any ring T containing the coefficients via embed.
  template <class T, class Embed>
  T eval_in(const T& x, Embed embed) const {
    T acc = embed(field_zero<K>());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + embed(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> d(c_.size() - 1, field_zero<K>());
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * FieldTraits<K>::from_long(static_cast<long>(i));
    return Poly(std::move(d));
  }

  Poly operator-() const {
    std::vector<K> v(c_);
    for (auto& x : v) x = -x;
    return Poly(std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> v(std::max(a.c_.size(), b.c_.size()), field_zero<K>());
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] = v[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> v(a.c_.size() + b.c_.size() - 1, field_zero<K>());
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(v));
  }
  friend Poly operator*(const K& s, const Poly& p) {
    std::vector<K> v(p.c_);
    for (auto& x : v) x = s * x;
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Euclidean division; remainder has degree < degree(divisor).
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("poly: division by zero polynomial");
    Poly rem = a;
    if (a.degree() < b.degree()) return {Poly(), rem};
    std::vector<K> q(static_cast<size_t>(a.degree() - b.degree()) + 1, field_zero<K>());
    const K inv_lead = field_one<K>() / b.leading();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      int shift = rem.degree() - b.degree();
      K factor = rem.leading() * inv_lead;
      q[static_cast<size_t>(shift)] = factor;
      rem = rem - Poly::monomial(factor, shift) * b;
    }
    return {Poly(std::move(q)), rem};
  }

  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return (field_one<K>() / leading()) * (*this);
  }

  /// Monic gcd.
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Multiplicity of the root x0 (0 if not a root).
  int root_multiplicity(const K& x0) const {
    if (is_zero()) throw DomainError("poly: root multiplicity of zero polynomial");
    Poly lin{-x0, field_one<K>()};
    Poly p = *this;
    int m = 0;
    while (true) {
      auto [q, r] = divmod(p, lin);
      if (!r.is_zero()) return m;
      ++m;
      p = std::move(q);
      if (p.is_zero()) return m;
    }
  }

  /// Exact square root if this is the square of a polynomial over K.
  std::optional<Poly> sqrt() const {
    if (is_zero()) return Poly();
    if (degree() % 2 != 0) return std::nullopt;
    auto lead_root = FieldTraits<K>::sqrt(leading());
    if (!lead_root) return std::nullopt;
    int h = degree() / 2;
    std::vector<K> s(static_cast<size_t>(h) + 1, field_zero<K>());
    s[static_cast<size_t>(h)] = *lead_root;
    const K two_lead = *lead_root + *lead_root;
    // coeff(this, h+k) = 2*s[h]*s[k] + sum of s[i]*s[j] over i+j=h+k, k<i,j<h.
    for (int k = h - 1; k >= 0; --k) {
      K sum = field_zero<K>();
      for (int i = k + 1; i <= h - 1; ++i) {
        int j = h + k - i;
        if (j < k + 1 || j > h - 1) continue;
        sum = sum + s[static_cast<size_t>(i)] * s[static_cast<size_t>(j)];
      }
      s[static_cast<size_t>(k)] = (coeff(h + k) - sum) / two_lead;
    }
    Poly cand{std::move(s)};
    if (cand * cand == *this) return cand;
    return std::nullopt;
  }

 private:
  void trim() {
    while (!c_.empty() && FieldTraits<K>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<K> c_;
};

}  // namespace ellconn
