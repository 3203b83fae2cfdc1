#pragma once

#include <array>
#include <utility>

#include "ellconn/connection.hpp"
#include "ellconn/report.hpp"

namespace ellconn {

namespace detail {

/// Assembles rational_part + (over_y_part)/y as a curve element, using
/// 1/y = y/f.
template <class K>
CurveElement<K> from_parts(const CurveInstance<K>& inst, const RatFunc<K>& rational_part,
                           const RatFunc<K>& over_y_part) {
  RatFunc<K> f(inst.cubic());
  return CurveElement<K>(rational_part, over_y_part / f);
}

}  // namespace detail

/// Basis of the five-dimensional space of functions with at most simple
/// poles on w0 + w1 + w_lambda + t1 + t2.
template <class K>
std::array<CurveElement<K>, 5> dprime_basis(const CurveInstance<K>& inst) {
  using CE = CurveElement<K>;
  using RF = RatFunc<K>;
  const K one = field_one<K>();
  RF xt(Poly<K>{-inst.t(), one});
  RF x = RF::variable();
  RF f(inst.cubic());
  return {CE::one(),
          CE(RF::constant(one) / xt, RF()),
          CE(x / xt, RF()),
          CE(RF(), x / f),            // x / y
          CE(RF(), (x - RF::constant(one)) / f)};  // (x-1) / y
}

/// Reduced polar divisor w0 + w1 + w_lambda + t1 + t2 of the family.
template <class K>
Divisor<K> family_polar(const CurveInstance<K>& inst) {
  Divisor<K> d;
  d.add(inst.w0(), 1);
  d.add(inst.w1(), 1);
  d.add(inst.w_lambda(), 1);
  d.add(inst.t1(), 1);
  d.add(inst.t2(), 1);
  return d;
}

/// Base point of the two-dimensional space of systems over the parabolic
/// data (z1, z2): traceless with apparent points at the 2-torsion locus.
template <class K>
LogConnection<K> nabla0(const CurveInstance<K>& inst, const K& z1, const K& z2) {
  using RF = RatFunc<K>;
  using P = Poly<K>;
  const K one = field_one<K>();
  const K two = one + one, four = two + two;
  const K la = inst.lambda(), t = inst.t(), r = inst.r();
  const K n1 = inst.nu1(), n2 = inst.nu2();
  const K q = one / four;
  const RF x = RF::variable();
  const RF xt = RF(P{-t, one});  // x - t
  auto c = [](const K& v) { return RF::constant(v); };

  // alpha
  RF n_ay = (c(la) + c(t) * (x - c(la + one))) * x * c(n1 + n2) -
            (c(la + one) * x * x + c(-la - (la + one) * t) * x + c(t * la));
  RF a_over_y = c(q) * (n_ay / xt + c(-two * (n1 * z1 + n2 * z2)) * x);
  RF n_ar = (c(la) + c(t - la - one) * x) * c(t * (n1 - n2));
  RF a_rat = c(q) * (n_ar / (xt * c(r)) + c((la - t + one) * (n1 * z1 - n2 * z2) / r));

  // beta
  RF b_over_y = c(q) * (c(two * (n1 * z1 + n2 * z2)) - (c(la + one) - x) * c(n1 + n2 + one) +
                        c(two) * x);
  RF b_rat = c(-(t * (n2 - n1) + n1 * z1 - n2 * z2) / (two * r));

  // gamma
  RF g_over_y = (x / c(four)) * (c(two * (n1 * z1 + n2 * z2)) * (c(la) - x * c(one + la - t)) / xt +
                                 c(la * (n1 + n2 - one)));
  RF g_rat = x * c(r * (n1 * z1 - n2 * z2) / (two * t)) / xt;

  LogConnection<K> conn;
  conn.mat.a = detail::from_parts(inst, a_rat, a_over_y);
  conn.mat.b = detail::from_parts(inst, b_rat, b_over_y);
  conn.mat.c = detail::from_parts(inst, g_rat, g_over_y);
  conn.mat.d = -conn.mat.a;
  conn.polar = family_polar(inst);
  const K half = one / two;
  conn.ledger.bundle_degree = 0;
  conn.ledger.bundle_class = DivisorClass<K>{0, inst.w_infinity()};
  conn.ledger.set(inst.w0(), half, -half);
  conn.ledger.set(inst.w1(), half, -half);
  conn.ledger.set(inst.w_lambda(), half, -half);
  conn.ledger.set(inst.t1(), n1 / two, -(n1 / two));
  conn.ledger.set(inst.t2(), n2 / two, -(n2 / two));
  return conn;
}

namespace detail {

/// Shared Higgs-field shape: the t2 field is the t1 field with (w, rho) =
/// (z2, -r) in place of (z1, r).
template <class K>
Mat2<CurveElement<K>> higgs_matrix(const CurveInstance<K>& inst, const K& w, const K& rho) {
  using RF = RatFunc<K>;
  using P = Poly<K>;
  const K one = field_one<K>();
  const K two = one + one;
  const K la = inst.lambda(), t = inst.t();
  const RF x = RF::variable();
  const RF xt = RF(P{-t, one});
  auto c = [](const K& v) { return RF::constant(v); };

  RF a_over_y = c(-w) * x * (c(t - w) * x + c(t * (w - one) + la * (one - t))) / xt;
  RF a_rat = (c(-(t * la + (two * t - w) * (t - la - one) * w)) * x +
              c(t * ((t - two * w) * la - (t - la - one) * w * w))) /
             (c(two * rho) * xt);

  RF b_over_y = (x * c(t - w) * (x + c(w - la - one)) + c(t * (w - la) * (w - one))) / xt;
  RF b_rat = (c((w - t) * (w - t)) * x + c(t * ((two * t - w) * w + la - t * (la + one)))) /
             (c(rho) * xt);

  RF g_over_y = c(w) * x * (x * c(w * (one - t) + la * (w - one)) + c(la * (t - w))) / xt;
  RF g_rat = c(-(w * w * rho / t)) * x / xt;

  Mat2<CurveElement<K>> m;
  m.a = from_parts(inst, a_rat, a_over_y);
  m.b = from_parts(inst, b_rat, b_over_y);
  m.c = from_parts(inst, g_rat, g_over_y);
  m.d = -m.a;
  return m;
}

}  // namespace detail

/// Higgs field paired with the z1 direction (empty exponent ledger).
template <class K>
LogConnection<K> theta1(const CurveInstance<K>& inst, const K& z1, const K& /*z2*/) {
  LogConnection<K> h;
  h.mat = detail::higgs_matrix(inst, z1, inst.r());
  h.polar = family_polar(inst);
  return h;
}

/// Higgs field paired with the z2 direction.
template <class K>
LogConnection<K> theta2(const CurveInstance<K>& inst, const K& /*z1*/, const K& z2) {
  LogConnection<K> h;
  h.mat = detail::higgs_matrix(inst, z2, -inst.r());
  h.polar = family_polar(inst);
  return h;
}

template <class K>
Mat2<CurveElement<K>> mat_comb(const Mat2<CurveElement<K>>& base, const K& c1,
                               const Mat2<CurveElement<K>>& m1, const K& c2,
                               const Mat2<CurveElement<K>>& m2) {
  return Mat2<CurveElement<K>>{base.a + c1 * m1.a + c2 * m2.a, base.b + c1 * m1.b + c2 * m2.b,
                               base.c + c1 * m1.c + c2 * m2.c, base.d + c1 * m1.d + c2 * m2.d};
}

/// Member of the family over the finite chart: nabla0 + c1 theta1 + c2 theta2.
template <class K>
LogConnection<K> nabla_c(const CurveInstance<K>& inst, const K& z1, const K& z2, const K& c1,
                         const K& c2) {
  LogConnection<K> conn = nabla0(inst, z1, z2);
  LogConnection<K> h1 = theta1(inst, z1, z2);
  LogConnection<K> h2 = theta2(inst, z1, z2);
  conn.mat = mat_comb(conn.mat, c1, h1.mat, c2, h2.mat);
  return conn;
}

/// Coefficient change between the two chart bases: (c0,c1,c2) = M (C0,C1,C2).
template <class K>
Mat3<K> chart_cocycle(const CurveInstance<K>& inst, const K& Z1, const K& Z2) {
  const K zero = field_zero<K>(), one = field_one<K>();
  const K two = one + one;
  Mat3<K> m;
  m.m = {{{one, zero, zero},
          {inst.nu1() * Z1 / two, Z1 * Z1, zero},
          {inst.nu2() * Z2 / two, zero, Z2 * Z2}}};
  return m;
}

/// Family member in the infinite chart, expressed through the finite-chart
/// basis at z = (1/Z1, 1/Z2). Z components must be invertible; at Z_i = 0
/// evaluate over Q(eps) with Z_i = eps instead.
template <class K>
LogConnection<K> family_infinity(const CurveInstance<K>& inst, const K& Z1, const K& Z2,
                                 const K& C0, const K& C1, const K& C2) {
  if (FieldTraits<K>::is_zero(Z1) || FieldTraits<K>::is_zero(Z2)) {
    if constexpr (!FieldTraits<K>::has_epsilon) {
      throw DomainError("family: chart corner needs the epsilon field (use Z_i = eps)");
    } else {
      throw DomainError("family: Z coordinates must be nonzero in the coefficient field");
    }
  }
  const K one = field_one<K>();
  K z1 = one / Z1, z2 = one / Z2;
  Mat3<K> m = chart_cocycle(inst, Z1, Z2);
  Vec3<K> c = m * Vec3<K>{C0, C1, C2};
  LogConnection<K> base = nabla0(inst, z1, z2);
  LogConnection<K> h1 = theta1(inst, z1, z2);
  LogConnection<K> h2 = theta2(inst, z1, z2);
  LogConnection<K> out;
  out.mat = mat_comb(Mat2<CurveElement<K>>{c.a0 * base.mat.a, c.a0 * base.mat.b,
                                           c.a0 * base.mat.c, c.a0 * base.mat.d},
                     c.a1, h1.mat, c.a2, h2.mat);
  out.polar = base.polar;
  out.ledger = base.ledger;
  return out;
}

/// No entry has a pole along eps = 0 (coefficient-level divisibility test).
inline bool epsilon_regular(const LogConnection<QEps>& conn) {
  for (const auto* e : {&conn.mat.a, &conn.mat.b, &conn.mat.c, &conn.mat.d}) {
    for (const auto* rf : {&e->a, &e->b}) {
      if (rf->is_zero()) continue;
      for (const auto& coeff : rf->num().coeffs())
        if (FieldTraits<QEps>::has_pole_at_origin(coeff)) return false;
      for (const auto& coeff : rf->den().coeffs())
        if (FieldTraits<QEps>::has_pole_at_origin(coeff)) return false;
    }
  }
  return true;
}

/// The thirteen linear conditions pinning the family, plus membership in
/// L(D') and tracelessness. Used as a transcription guard.
inline Report verify_family(const CurveInstance<Rational>& inst, const Rational& z1,
                            const Rational& z2, const Rational& c1, const Rational& c2) {
  Report rep;
  const Rational half(1, 2);
  LogConnection<Rational> conn = nabla_c(inst, z1, z2, c1, c2);
  LogConnection<Rational> h1 = theta1(inst, z1, z2);
  LogConnection<Rational> h2 = theta2(inst, z1, z2);
  Divisor<Rational> dprime = family_polar(inst);

  rep.add("traceless", trace_form(conn).is_zero());

  bool member = true;
  std::string offender;
  auto check_entries = [&](const Mat2<CurveElement<Rational>>& m, const std::string& tag) {
    int idx = 0;
    for (const auto* e : {&m.a, &m.b, &m.c, &m.d}) {
      if (!e->is_zero() && !in_linear_system(inst, *e, dprime)) {
        member = false;
        offender = tag + " entry " + std::to_string(idx);
      }
      ++idx;
    }
  };
  check_entries(conn.mat, "connection");
  check_entries(h1.mat, "theta1");
  check_entries(h2.mat, "theta2");
  rep.add("entries-in-L(D')", member, offender);

  struct ApparentSpot {
    CurvePoint<Rational> at;
    Rational slope;
    const char* name;
  };
  const ApparentSpot spots[] = {{inst.w0(), Rational(0), "w0"},
                                {inst.w1(), Rational(1), "w1"},
                                {inst.w_lambda(), inst.lambda(), "wl"}};
  auto matrix_text = [](const Mat2<Rational>& m) {
    return "[" + m.a.str() + " " + m.b.str() + "; " + m.c.str() + " " + m.d.str() + "]";
  };
  for (const auto& spot : spots) {
    ResidueData<Rational> rd = residue_data(inst, conn, spot.at);
    ProjDir<Rational> q(Rational(1), spot.slope);
    bool ok = is_apparent(rd, q);
    rep.add(std::string("apparent-") + spot.name, ok,
            ok ? "" : "residue " + matrix_text(rd.principal) + ", constant part " +
                          matrix_text(rd.constant));
  }

  auto eigen_spot = [&](const CurvePoint<Rational>& at, const Rational& z, const Rational& nu,
                        const char* name) {
    ResidueData<Rational> rd = residue_data(inst, conn, at);
    Vec2<Rational> dir{Rational(1), z};
    Vec2<Rational> img = rd.principal * dir;
    Rational ev = nu * half;
    bool ok = img.x == ev * dir.x && img.y == ev * dir.y;
    std::string detail;
    if (!ok) detail = "residue action mismatch: (" + img.x.str() + ", " + img.y.str() + ")";
    rep.add(std::string("exponent-direction-") + name, ok, detail);
  };
  eigen_spot(inst.t1(), z1, inst.nu1(), "t1");
  eigen_spot(inst.t2(), z2, inst.nu2(), "t2");

  // Cross residues of the Higgs fields at the opposite marked points are not
  // pinned by the family conditions; record them for inspection.
  {
    ResidueData<Rational> r12 = residue_data(inst, h1, inst.t2());
    ResidueData<Rational> r21 = residue_data(inst, h2, inst.t1());
    auto nonzero = [](const Mat2<Rational>& m) {
      return !(m.a.is_zero() && m.b.is_zero() && m.c.is_zero() && m.d.is_zero());
    };
    rep.add("info-cross-residues", true,
            std::string("theta1@t2 ") + (nonzero(r12.principal) ? "nonzero" : "zero") +
                ", theta2@t1 " + (nonzero(r21.principal) ? "nonzero" : "zero"));
  }
  return rep;
}

}  // namespace ellconn
