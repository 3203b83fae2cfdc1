#pragma once

#include <string>
#include <utility>

#include "ellconn/family.hpp"

namespace ellconn {

// ---------------------------------------------------------------------------
// Eigendirection map

template <class K>
struct ParData {
  ProjDir<K> p1_plus, p1_minus, p2_plus, p2_minus;

  friend bool operator==(const ParData& a, const ParData& b) {
    return a.p1_plus == b.p1_plus && a.p1_minus == b.p1_minus && a.p2_plus == b.p2_plus &&
           a.p2_minus == b.p2_minus;
  }
};

/// Closed form of the eigendirections of the family member at (z, c).
template <class K>
ParData<K> par_closed_form(const CurveInstance<K>& inst, const K& z1, const K& z2, const K& c1,
                           const K& c2) {
  const K two = FieldTraits<K>::from_long(2);
  ParData<K> out;
  out.p1_plus = ProjDir<K>(field_one<K>(), z1);
  out.p2_plus = ProjDir<K>(field_one<K>(), z2);
  out.p1_minus = ProjDir<K>(c1, c1 * z1 - inst.nu1() / two);
  out.p2_minus = ProjDir<K>(c2, c2 * z2 - inst.nu2() / two);
  return out;
}

/// Eigendirections computed from the residues of the family member; checks
/// the closed form along the way.
template <class K>
ParData<K> par(const CurveInstance<K>& inst, const K& z1, const K& z2, const K& c1, const K& c2) {
  if (FieldTraits<K>::is_zero(inst.nu1()) || FieldTraits<K>::is_zero(inst.nu2()))
    throw DomainError("par: requires nu1 * nu2 != 0");
  const K two = FieldTraits<K>::from_long(2);
  LogConnection<K> conn = nabla_c(inst, z1, z2, c1, c2);
  ParData<K> out;
  auto fill = [&](const CurvePoint<K>& at, const K& nu, ProjDir<K>& plus, ProjDir<K>& minus) {
    ResidueData<K> rd = residue_data(inst, conn, at);
    auto [e1, e2] = eigen(rd.principal);
    K target = nu / two;
    if (e1.value == target && e2.value == -target) {
      plus = e1.direction;
      minus = e2.direction;
    } else if (e2.value == target && e1.value == -target) {
      plus = e2.direction;
      minus = e1.direction;
    } else {
      throw CheckError("par: residue eigenvalues differ from +-nu/2");
    }
  };
  fill(inst.t1(), inst.nu1(), out.p1_plus, out.p1_minus);
  fill(inst.t2(), inst.nu2(), out.p2_plus, out.p2_minus);
  if (!(out == par_closed_form(inst, z1, z2, c1, c2)))
    throw CheckError("par: eigendirections differ from the closed form");
  return out;
}

/// Inverse of the eigendirection map: c_i = nu_i / (2 (z_i - zeta_i)), with
/// the vertical direction (0:1) mapping to c_i = 0.
template <class K>
std::pair<K, K> par_inverse(const CurveInstance<K>& inst, const K& z1, const K& z2,
                            const ProjDir<K>& p1_minus, const ProjDir<K>& p2_minus) {
  const K two = FieldTraits<K>::from_long(2);
  auto solve = [&](const K& z, const K& nu, const ProjDir<K>& dir) -> K {
    if (dir.is_vertical()) return field_zero<K>();
    K zeta = dir.slope();
    if (zeta == z) throw DomainError("par_inverse: incidence variety (zeta_i = z_i)");
    return nu / (two * (z - zeta));
  };
  return {solve(z1, inst.nu1(), p1_minus), solve(z2, inst.nu2(), p2_minus)};
}

// ---------------------------------------------------------------------------
// Apparent map

/// Coordinates of the zero divisor of the composite map cut out by the
/// rational section s = (1, x): phi = (y s_x + A s) wedge s, reduced modulo
/// the apparent locus by dividing by y. (x-t) phi / y = a0 + a1 x + a2 y.
template <class K>
Vec3<K> app_of_matrix(const CurveInstance<K>& inst, const Mat2<CurveElement<K>>& A, bool with_d) {
  using CE = CurveElement<K>;
  const K one = field_one<K>();
  CE x = CE::x_function(), y = CE::y_function();
  CE v1 = A.a + mul(inst, x, A.b);
  CE v2 = A.c + mul(inst, x, A.d);
  if (with_d) v2 = v2 + y;
  CE phi = v2 - mul(inst, x, v1);
  CE phihat = div(inst, phi, y);
  CE lin = CE::from_ratfunc(RatFunc<K>(Poly<K>{-inst.t(), one}));
  CE lhs = mul(inst, lin, phihat);
  bool poly_a = lhs.a.is_zero() || (lhs.a.den().degree() == 0 && lhs.a.num().degree() <= 1);
  bool const_b = lhs.b.is_zero() || (lhs.b.den().degree() == 0 && lhs.b.num().degree() <= 0);
  if (!poly_a || !const_b)
    throw CheckError("apparent-map transcription failure: image outside span{1, x, y}");
  Vec3<K> out;
  out.a0 = lhs.a.is_zero() ? field_zero<K>() : lhs.a.num().coeff(0) / lhs.a.den().coeff(0);
  out.a1 = lhs.a.is_zero() ? field_zero<K>() : lhs.a.num().coeff(1) / lhs.a.den().coeff(0);
  out.a2 = lhs.b.is_zero() ? field_zero<K>() : lhs.b.num().coeff(0) / lhs.b.den().coeff(0);
  return out;
}

template <class K>
Vec3<K> app(const CurveInstance<K>& inst, const LogConnection<K>& conn) {
  return app_of_matrix(inst, conn.mat, /*with_d=*/true);
}

/// Matrix of the apparent map on the finite-chart basis, normalized so its
/// cofactor determinant is exactly -32 r^2 (t-z1)^2 (t-z2)^2 (nu1+nu2+1).
template <class K>
Mat3<K> app_matrix(const CurveInstance<K>& inst, const K& z1, const K& z2) {
  const K one = field_one<K>();
  const K two = one + one, four = two + two;
  const K t = inst.t(), r = inst.r(), n1 = inst.nu1(), n2 = inst.nu2();
  const K u = z1 - t, v = z2 - t;
  Mat3<K> m;
  m.m = {{{-(r * (n1 * (two * z1 - t) + n2 * (two * z2 - t) - t)), four * r * z1 * u,
           four * r * z2 * v},
          {r * (n1 + n2 - one), -(four * r * u), -(four * r * v)},
          {-(two * (n1 * u - n2 * v)), four * u * u, -(four * v * v)}}};
  return m;
}

template <class K>
K app_det(const CurveInstance<K>& inst, const K& z1, const K& z2) {
  return app_matrix(inst, z1, z2).det();
}

template <class K>
K app_det_closed_form(const CurveInstance<K>& inst, const K& z1, const K& z2) {
  const K one = field_one<K>();
  const K c = -FieldTraits<K>::from_long(32);
  const K u = inst.t() - z1, v = inst.t() - z2;
  return c * inst.r() * inst.r() * u * u * v * v * (inst.nu1() + inst.nu2() + one);
}

/// Matrix of the apparent map on the infinite-chart basis; equals
/// app_matrix(1/Z1, 1/Z2) * chart_cocycle(Z1, Z2) identically.
template <class K>
Mat3<K> app_matrix_infinity(const CurveInstance<K>& inst, const K& Z1, const K& Z2) {
  const K one = field_one<K>();
  const K two = one + one, four = two + two;
  const K t = inst.t(), r = inst.r(), n1 = inst.nu1(), n2 = inst.nu2();
  const K u = t * Z1 - one, v = t * Z2 - one;
  Mat3<K> m;
  m.m = {{{t * r * (one - n1 - n2), -(four * r * u), -(four * r * v)},
          {r * (n1 * (two * t * Z1 - one) + n2 * (two * t * Z2 - one) - one), four * r * Z1 * u,
           four * r * Z2 * v},
          {two * t * (n1 * u - n2 * v), four * u * u, -(four * v * v)}}};
  return m;
}

template <class K>
K app_det_infinity_closed_form(const CurveInstance<K>& inst, const K& Z1, const K& Z2) {
  const K one = field_one<K>();
  const K c = -FieldTraits<K>::from_long(32);
  const K u = inst.t() * Z1 - one, v = inst.t() * Z2 - one;
  return c * inst.r() * inst.r() * u * u * v * v * (inst.nu1() + inst.nu2() + one);
}

// ---------------------------------------------------------------------------
// Degeneration analysis of the apparent map over the base point

enum class AppKind { GenericIso, LineImage, ConstantImage, Indeterminate, Unsupported };

template <class K>
struct AppClassification {
  AppKind kind = AppKind::GenericIso;
  // For LineImage: 1 or 2 when the image is independent of that coefficient
  // (a base-point degeneration), 0 when the rank drop comes from the exponent
  // resonance nu1 + nu2 + 1 = 0 and the image is the span of the two Higgs
  // images.
  int line_axis = 0;
  Vec3<K> image_point{field_zero<K>(), field_zero<K>(), field_zero<K>()};  // for ConstantImage
};

template <class K>
AppClassification<K> app_degenerate(const CurveInstance<K>& inst, const K& z1, const K& z2) {
  const K one = field_one<K>();
  AppClassification<K> out;
  bool d1 = z1 == inst.t(), d2 = z2 == inst.t();
  if (d1 && d2) {
    if (FieldTraits<K>::is_zero(inst.nu1() + inst.nu2() - one)) {
      out.kind = AppKind::Indeterminate;
    } else {
      out.kind = AppKind::ConstantImage;
      out.image_point = {inst.t(), -one, field_zero<K>()};
    }
    return out;
  }
  if (d1 || d2) {
    out.kind = AppKind::LineImage;
    out.line_axis = d1 ? 1 : 2;
    return out;
  }
  if (FieldTraits<K>::is_zero(inst.nu1() + inst.nu2() + one)) {
    out.kind = AppKind::LineImage;  // resonant: never dominant
    out.line_axis = 0;
    return out;
  }
  out.kind = AppKind::GenericIso;
  return out;
}

// ---------------------------------------------------------------------------
// Dual model of the base and the incidence pairing

/// (2t - z1 - z2 : t(z1+z2) - 2 z1 z2 : r(z1 - z2)); the common zero locus is
/// exactly the blown-up point z = (t, t).
template <class K>
Vec3<K> bun_prime(const CurveInstance<K>& inst, const K& z1, const K& z2) {
  const K two = FieldTraits<K>::from_long(2);
  Vec3<K> b{two * inst.t() - z1 - z2, inst.t() * (z1 + z2) - two * z1 * z2,
            inst.r() * (z1 - z2)};
  if (b.is_zero()) throw DomainError("bun_prime: blown-up point z = (t, t)");
  return b;
}

template <class K>
K incidence_pairing(const CurveInstance<K>& inst, const K& z1, const K& z2, const K& c1,
                    const K& c2) {
  Mat3<K> m = app_matrix(inst, z1, z2);
  Vec3<K> a = m * Vec3<K>{field_zero<K>(), c1, c2};
  Vec3<K> b = bun_prime(inst, z1, z2);
  return a.a0 * b.a0 + a.a1 * b.a1 + a.a2 * b.a2;
}

/// True iff the apparent image of the pure Higgs field pairs to zero with the
/// dual base coordinates.
template <class K>
bool incidence_check(const CurveInstance<K>& inst, const K& z1, const K& z2, const K& c1,
                     const K& c2) {
  if (FieldTraits<K>::is_zero(c1) && FieldTraits<K>::is_zero(c2))
    throw DomainError("incidence: zero Higgs field");
  return FieldTraits<K>::is_zero(incidence_pairing(inst, z1, z2, c1, c2));
}

// ---------------------------------------------------------------------------
// Chart maps between the three open charts of the moduli space, on ledgers

enum class ChartDirections { Plus, Minus };

/// Exponent rule of the fiber-preserving chart isomorphisms: two elementary
/// transformations over t1 + t2 followed by the degree-repairing twist. The
/// determinant data is unchanged (t1 + t2 - 2 w_inf is principal).
template <class K>
ExponentLedger<K> elm_chart_map(const CurveInstance<K>& inst, const ExponentLedger<K>& ledger,
                                ChartDirections dirs) {
  const K half = field_one<K>() / FieldTraits<K>::from_long(2);
  ExponentLedger<K> out = ledger;
  for (const auto& at : {inst.t1(), inst.t2()}) {
    const auto* nu = out.find(at);
    if (!nu) throw DomainError("chart map: ledger has no exponents at a marked point");
    if (dirs == ChartDirections::Plus)
      out.set(at, nu->first - half, nu->second + half);
    else
      out.set(at, nu->first + half, nu->second - half);
  }
  return out;
}

}  // namespace ellconn
