#pragma once

#include <array>

#include "ellconn/jet.hpp"
#include "ellconn/maps.hpp"
#include "ellconn/report.hpp"

namespace ellconn {

/// Antisymmetric coefficient matrix of a 2-form at a sample point, in a fixed
/// coordinate order: coeff[i][j] multiplies du_i ^ du_j.
struct TwoFormSample {
  std::array<std::array<Rational, 4>, 4> coeff{};

  void set(int i, int j, const Rational& v) {
    coeff[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
    coeff[static_cast<size_t>(j)][static_cast<size_t>(i)] = -v;
  }
  const Rational& at(int i, int j) const {
    return coeff[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  bool antisymmetric() const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!(at(i, j) == -at(j, i))) return false;
    return true;
  }
  /// Coefficient of du0^du1^du2^du3 in the wedge square.
  Rational top_wedge_square() const {
    Rational pf = at(0, 1) * at(2, 3) - at(0, 2) * at(1, 3) + at(0, 3) * at(1, 2);
    return Rational(2) * pf;
  }
  friend bool operator==(const TwoFormSample& a, const TwoFormSample& b) {
    return a.coeff == b.coeff;
  }
};

/// dc1^dz1 + dc2^dz2 in coordinates (z1, z2, c1, c2): constant coefficients.
inline TwoFormSample omega_canonical() {
  TwoFormSample w;
  w.set(2, 0, Rational(1));  // dc1 ^ dz1
  w.set(3, 1, Rational(1));  // dc2 ^ dz2
  return w;
}

namespace detail {

/// Substitution c_i = nu_i / (2 (z_i - zeta_i)) as a jet-valued function.
inline JetQ substituted_c(const Rational& nu, const JetQ& z, const JetQ& zeta) {
  JetQ two = JetQ(Rational(2));
  return JetQ(nu) / (two * (z - zeta));
}

}  // namespace detail

/// Coefficients of dc1^dz1 + dc2^dz2 after the substitution, in coordinates
/// (z1, z2, zeta1, zeta2).
inline TwoFormSample par_pullback_form(const CurveInstance<Rational>& inst, const Rational& z1,
                                       const Rational& z2, const Rational& zeta1,
                                       const Rational& zeta2) {
  if (z1 == zeta1 || z2 == zeta2)
    throw DomainError("pullback: incidence locus (z_i = zeta_i)");
  const std::array<Rational, 4> pt{z1, z2, zeta1, zeta2};
  TwoFormSample out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::array<JetQ, 4> u;
      for (int k = 0; k < 4; ++k) {
        if (k == i)
          u[static_cast<size_t>(k)] = JetQ::variable(pt[static_cast<size_t>(k)], 1);
        else if (k == j)
          u[static_cast<size_t>(k)] = JetQ::variable(pt[static_cast<size_t>(k)], 2);
        else
          u[static_cast<size_t>(k)] = JetQ::constant(pt[static_cast<size_t>(k)]);
      }
      JetQ c1 = detail::substituted_c(inst.nu1(), u[0], u[2]);
      JetQ c2 = detail::substituted_c(inst.nu2(), u[1], u[3]);
      Rational v = wedge_coefficient(c1, u[0]) + wedge_coefficient(c2, u[1]);
      out.set(i, j, v);
    }
  }
  return out;
}

/// -1/2 (nu1 dz1^dzeta1/(z1-zeta1)^2 + nu2 dz2^dzeta2/(z2-zeta2)^2).
inline TwoFormSample par_target_form(const Rational& nu1, const Rational& nu2, const Rational& z1,
                                     const Rational& z2, const Rational& zeta1,
                                     const Rational& zeta2) {
  TwoFormSample out;
  const Rational mhalf(-1, 2);
  Rational d1 = z1 - zeta1, d2 = z2 - zeta2;
  out.set(0, 2, mhalf * nu1 / (d1 * d1));
  out.set(1, 3, mhalf * nu2 / (d2 * d2));
  return out;
}

inline bool par_pullback_check(const CurveInstance<Rational>& inst, const Rational& z1,
                               const Rational& z2, const Rational& zeta1, const Rational& zeta2) {
  return par_pullback_form(inst, z1, z2, zeta1, zeta2) ==
         par_target_form(inst.nu1(), inst.nu2(), z1, z2, zeta1, zeta2);
}

/// d(eta) at a sample, where eta = kappa (a . db)/(a . b) with a the apparent
/// coordinates of (1, c1, c2) and b the dual base coordinates; coordinates
/// (z1, z2, c1, c2).
inline TwoFormSample eta_differential(const CurveInstance<Rational>& inst, const Rational& z1,
                                      const Rational& z2, const Rational& c1, const Rational& c2) {
  const Rational one(1);
  Rational denom_k = inst.nu1() + inst.nu2() + one;
  if (denom_k.is_zero())
    throw DomainError("eta: requires nu1 + nu2 + 1 != 0");
  const Rational kappa = denom_k / Rational(4);
  const std::array<Rational, 4> pt{z1, z2, c1, c2};
  const CurveInstance<JetQ> jinst = lift_instance<JetQ>(inst);
  TwoFormSample out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::array<JetQ, 4> u;
      for (int k = 0; k < 4; ++k) {
        if (k == i)
          u[static_cast<size_t>(k)] = JetQ::variable(pt[static_cast<size_t>(k)], 1);
        else if (k == j)
          u[static_cast<size_t>(k)] = JetQ::variable(pt[static_cast<size_t>(k)], 2);
        else
          u[static_cast<size_t>(k)] = JetQ::constant(pt[static_cast<size_t>(k)]);
      }
      Mat3<JetQ> m = app_matrix(jinst, u[0], u[1]);
      Vec3<JetQ> a = m * Vec3<JetQ>{JetQ(one), u[2], u[3]};
      Vec3<JetQ> b = bun_prime(jinst, u[0], u[1]);
      std::array<JetQ, 3> av{a.a0, a.a1, a.a2}, bv{b.a0, b.a1, b.a2};
      JetQ s;
      for (int k = 0; k < 3; ++k) s = s + av[static_cast<size_t>(k)] * bv[static_cast<size_t>(k)];
      if (s.v.is_zero()) throw DomainError("eta: incidence pole (a . b = 0)");
      Rational n_j, n_i, dn_ij, dn_ji;  // sum a db_j, sum a db_i and their cross derivatives
      n_j = n_i = dn_ij = dn_ji = Rational(0);
      for (int k = 0; k < 3; ++k) {
        const JetQ& ak = av[static_cast<size_t>(k)];
        const JetQ& bk = bv[static_cast<size_t>(k)];
        n_j += ak.v * bk.d2;
        n_i += ak.v * bk.d1;
        dn_ij += ak.d1 * bk.d2 + ak.v * bk.d12;  // d_i of (a db_j) coefficient
        dn_ji += ak.d2 * bk.d1 + ak.v * bk.d12;  // d_j of (a db_i) coefficient
      }
      Rational sv2 = s.v * s.v;
      Rational di_wj = kappa * (dn_ij * s.v - n_j * s.d1) / sv2;
      Rational dj_wi = kappa * (dn_ji * s.v - n_i * s.d2) / sv2;
      out.set(i, j, di_wj - dj_wi);
    }
  }
  return out;
}

inline bool eta_and_domega_check(const CurveInstance<Rational>& inst, const Rational& z1,
                                 const Rational& z2, const Rational& c1, const Rational& c2) {
  return eta_differential(inst, z1, z2, c1, c2) == omega_canonical();
}

/// Mixed-partial symmetry of the building blocks under direction swap; a
/// smoke test that the jet plumbing is coherent (closedness of d eta).
inline bool jet_mixed_partials_symmetric(const CurveInstance<Rational>& inst, const Rational& z1,
                                         const Rational& z2) {
  const CurveInstance<JetQ> jinst = lift_instance<JetQ>(inst);
  JetQ a1 = JetQ::variable(z1, 1), a2 = JetQ::variable(z2, 2);
  JetQ b1 = JetQ::variable(z1, 2), b2 = JetQ::variable(z2, 1);
  Vec3<JetQ> p = bun_prime(jinst, a1, a2);
  Vec3<JetQ> q = bun_prime(jinst, b1, b2);
  return p.a0.d12 == q.a0.d12 && p.a1.d12 == q.a1.d12 && p.a2.d12 == q.a2.d12;
}

/// Invariance of dz^dzeta/(z-zeta)^2 under the Moebius generators applied
/// diagonally, and the nu-swap behavior of the weighted form under the lift
/// of (z1, z2) -> (z2, z1).
inline Report torelli_invariance_checks(const CurveInstance<Rational>& inst) {
  Report rep;
  struct Sample {
    Rational z, zeta;
  };
  const Sample samples[] = {{Rational(2), Rational(3)},   {Rational(-1), Rational(4)},
                            {Rational(1, 2), Rational(5)}, {Rational(7), Rational(-2)},
                            {Rational(3, 4), Rational(-5, 3)}, {Rational(9), Rational(1, 7)},
                            {Rational(-8, 5), Rational(6)},    {Rational(11, 2), Rational(-3, 2)},
                            {Rational(4, 9), Rational(10)},    {Rational(-6), Rational(13, 4)}};
  // Generators: z -> 2z, z -> z + 1, z -> 1/z (skipping poles of the last).
  struct Gen {
    const char* name;
    JetQ (*apply)(const JetQ&);
  };
  const Gen gens[] = {
      {"scale", [](const JetQ& z) { return JetQ(Rational(2)) * z; }},
      {"translate", [](const JetQ& z) { return z + JetQ(Rational(1)); }},
      {"invert", [](const JetQ& z) { return JetQ(Rational(1)) / z; }},
  };
  for (const auto& gen : gens) {
    bool ok = true;
    std::string detail;
    for (const auto& s : samples) {
      if (s.z.is_zero() || s.zeta.is_zero()) continue;  // stay off the pole of 1/z
      JetQ z = JetQ::variable(s.z, 1), zeta = JetQ::variable(s.zeta, 2);
      JetQ w1 = gen.apply(z), w2 = gen.apply(zeta);
      JetQ diff = w1 - w2;
      Rational pulled = wedge_coefficient(w1, w2) / (diff.v * diff.v);
      Rational d = s.z - s.zeta;
      Rational original = Rational(1) / (d * d);
      if (!(pulled == original)) {
        ok = false;
        detail = "at (" + s.z.str() + ", " + s.zeta.str() + "): " + pulled.str();
        break;
      }
    }
    rep.add(std::string("moebius-") + gen.name, ok, detail);
  }
  // Swap lift ((z1,zeta1),(z2,zeta2)) -> ((z2,zeta2),(z1,zeta1)): the
  // pullback of the weighted form is the form with nu1 and nu2 exchanged.
  {
    bool ok = true;
    std::string detail;
    const Rational pts[][4] = {{Rational(1), Rational(2), Rational(5), Rational(7)},
                               {Rational(-2), Rational(1, 3), Rational(4), Rational(-5)},
                               {Rational(3, 2), Rational(-7, 2), Rational(0), Rational(9)}};
    for (const auto& p : pts) {
      // Coordinates (z1, z2, zeta1, zeta2); the swap permutes 0<->1 and 2<->3.
      TwoFormSample direct = par_target_form(inst.nu2(), inst.nu1(), p[0], p[1], p[2], p[3]);
      TwoFormSample pulled;
      TwoFormSample target_at_image = par_target_form(inst.nu1(), inst.nu2(), p[1], p[0], p[3], p[2]);
      static const int perm[4] = {1, 0, 3, 2};
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          pulled.set(i, j, target_at_image.at(perm[i], perm[j]));
      if (!(pulled == direct)) {
        ok = false;
        detail = "swap pullback mismatch";
        break;
      }
    }
    rep.add("swap-exchanges-weights", ok, detail);
  }
  return rep;
}

}  // namespace ellconn
