#pragma once

#include <array>

#include "ellconn/errors.hpp"
#include "ellconn/field.hpp"

namespace ellconn {

template <class T>
struct Vec2 {
  T x, y;
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

template <class T>
struct Mat2 {
  T a, b, c, d;  // row major: [a b; c d]

  static Mat2 from_rows(T a, T b, T c, T d) {
    return Mat2{std::move(a), std::move(b), std::move(c), std::move(d)};
  }

  T trace() const { return a + d; }
  T det() const { return a * d - b * c; }

  friend Mat2 operator+(const Mat2& m, const Mat2& n) {
    return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
  }
  friend Mat2 operator-(const Mat2& m, const Mat2& n) {
    return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
  }
  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend Vec2<T> operator*(const Mat2& m, const Vec2<T>& v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
  }
  friend bool operator==(const Mat2& m, const Mat2& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }
  friend bool operator!=(const Mat2& m, const Mat2& n) { return !(m == n); }
};

template <class T>
Mat2<T> scalar_mat2(const T& s, const T& zero) {
  return {s, zero, zero, s};
}

template <class K>
struct Vec3 {
  K a0, a1, a2;
  friend bool operator==(const Vec3& u, const Vec3& v) {
    return u.a0 == v.a0 && u.a1 == v.a1 && u.a2 == v.a2;
  }
  bool is_zero() const {
    return FieldTraits<K>::is_zero(a0) && FieldTraits<K>::is_zero(a1) && FieldTraits<K>::is_zero(a2);
  }
};

/// Projective equality of nonzero triples.
template <class K>
bool proportional(const Vec3<K>& u, const Vec3<K>& v) {
  if (u.is_zero() || v.is_zero()) return false;
  return u.a0 * v.a1 == u.a1 * v.a0 && u.a0 * v.a2 == u.a2 * v.a0 && u.a1 * v.a2 == u.a2 * v.a1;
}

template <class K>
struct Mat3 {
  std::array<std::array<K, 3>, 3> m;  // m[row][col]

  K det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
  Vec3<K> column(int j) const { return {m[0][static_cast<size_t>(j)], m[1][static_cast<size_t>(j)], m[2][static_cast<size_t>(j)]}; }
  friend Vec3<K> operator*(const Mat3& a, const Vec3<K>& v) {
    return {a.m[0][0] * v.a0 + a.m[0][1] * v.a1 + a.m[0][2] * v.a2,
            a.m[1][0] * v.a0 + a.m[1][1] * v.a1 + a.m[1][2] * v.a2,
            a.m[2][0] * v.a0 + a.m[2][1] * v.a1 + a.m[2][2] * v.a2};
  }
  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        K acc = field_zero<K>();
        for (int k = 0; k < 3; ++k)
          acc = acc + a.m[static_cast<size_t>(i)][static_cast<size_t>(k)] * b.m[static_cast<size_t>(k)][static_cast<size_t>(j)];
        r.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
      }
    return r;
  }
  friend Mat3 operator*(const K& s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = s * a.m[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return r;
  }
  friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }
};

/// Projective direction (u:v), normalized so the first nonzero slot is 1.
template <class K>
class ProjDir {
 public:
  ProjDir() : u_(field_one<K>()), v_(field_zero<K>()) {}
  ProjDir(const K& u, const K& v) : u_(u), v_(v) { normalize(); }

  const K& u() const { return u_; }
  const K& v() const { return v_; }

  bool is_vertical() const { return FieldTraits<K>::is_zero(u_); }  // (0:1)
  /// Affine slope v/u; only when not vertical.
  K slope() const {
    if (is_vertical()) throw DomainError("direction: slope of (0:1)");
    return v_ / u_;
  }
  Vec2<K> vec() const { return {u_, v_}; }

  friend bool operator==(const ProjDir& a, const ProjDir& b) { return a.u_ == b.u_ && a.v_ == b.v_; }
  friend bool operator!=(const ProjDir& a, const ProjDir& b) { return !(a == b); }

 private:
  void normalize() {
    if (!FieldTraits<K>::is_zero(u_)) {
      v_ = v_ / u_;
      u_ = field_one<K>();
    } else if (!FieldTraits<K>::is_zero(v_)) {
      v_ = field_one<K>();
    } else {
      throw DomainError("direction: zero vector");
    }
  }

  K u_, v_;
};

/// True when m*p is proportional to p (including m*p = 0).
template <class K>
bool maps_direction_to_itself(const Mat2<K>& m, const ProjDir<K>& p) {
  Vec2<K> w = m * p.vec();
  return FieldTraits<K>::is_zero(w.x * p.v() - w.y * p.u());
}

}  // namespace ellconn
