#include "ellconn/selftest.hpp"

#include <array>
#include <chrono>
#include <string>
#include <vector>

#include "ellconn/instances.hpp"
#include "ellconn/parabolic.hpp"
#include "ellconn/sampling.hpp"
#include "ellconn/symplectic.hpp"

namespace ellconn {

namespace {

using CE = CurveElement<Rational>;
using V3 = Vec3<Rational>;

std::string at_sample(const Rational& a, const Rational& b) {
  return "at (" + a.str() + ", " + b.str() + ")";
}

}  // namespace

Report criterion_family_validity() {
  Report rep;
  auto inst = reference_instance();
  SampleRng rng(kSeedFamily);
  int failures = 0;
  std::string first_failure;
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) {
    Rational z1 = rng.rational(), z2 = rng.rational();
    Rational c1 = rng.rational(), c2 = rng.rational();
    Report one = verify_family(inst, z1, z2, c1, c2);
    if (!one.all_pass()) {
      ++failures;
      if (first_failure.empty()) {
        for (const auto& c : one.checks)
          if (!c.pass) {
            first_failure = c.name + " " + at_sample(z1, z2);
            break;
          }
      }
    }
  }
  auto seconds =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - start)
          .count();
  rep.add("family-verify-100-samples", failures == 0,
          failures == 0 ? "" : std::to_string(failures) + " failing samples, first: " + first_failure);
  rep.add("family-verify-runtime-budget", seconds < 60,
          std::to_string(seconds) + " s for 100 samples");
  return rep;
}

Report criterion_par_closed_form() {
  Report rep;
  auto inst = reference_instance();
  SampleRng rng(kSeedFamily);  // the same 100 parameter samples as criterion 1
  bool closed_ok = true, round_ok = true;
  std::string detail_closed, detail_round;
  for (int i = 0; i < 100; ++i) {
    Rational z1 = rng.rational(), z2 = rng.rational();
    Rational c1 = rng.rational(), c2 = rng.rational();
    try {
      ParData<Rational> pd = par(inst, z1, z2, c1, c2);  // asserts the closed form
      auto [c1r, c2r] = par_inverse(inst, z1, z2, pd.p1_minus, pd.p2_minus);
      if (!(c1r == c1 && c2r == c2)) {
        round_ok = false;
        detail_round = at_sample(z1, z2);
      }
    } catch (const CheckError& e) {
      closed_ok = false;
      detail_closed = std::string(e.what()) + " " + at_sample(z1, z2);
    }
  }
  rep.add("par-eigen-equals-closed-form", closed_ok, detail_closed);
  rep.add("par-inverse-of-par", round_ok, detail_round);
  bool fwd_ok = true;
  std::string detail_fwd;
  SampleRng rng_fwd(kSeedPar);
  for (int i = 0; i < 100; ++i) {
    Rational z1 = rng_fwd.rational(), z2 = rng_fwd.rational();
    Rational zeta1 = rng_fwd.rational_avoiding(std::array{z1});
    Rational zeta2 = rng_fwd.rational_avoiding(std::array{z2});
    ProjDir<Rational> m1(Rational(1), zeta1), m2(Rational(1), zeta2);
    auto [c1, c2] = par_inverse(inst, z1, z2, m1, m2);
    ParData<Rational> pd = par(inst, z1, z2, c1, c2);
    if (!(pd.p1_minus == m1 && pd.p2_minus == m2)) {
      fwd_ok = false;
      detail_fwd = at_sample(z1, z2);
    }
  }
  rep.add("par-of-par-inverse", fwd_ok, detail_fwd);
  return rep;
}

Report criterion_app_consistency() {
  Report rep;
  auto inst = reference_instance();
  SampleRng rng(kSeedApp);
  bool phi_ok = true;
  std::string detail_phi;
  for (int i = 0; i < 50; ++i) {
    Rational z1 = rng.rational(), z2 = rng.rational();
    Rational c1 = rng.rational(), c2 = rng.rational();
    V3 a = app(inst, nabla_c(inst, z1, z2, c1, c2));
    V3 expected = app_matrix(inst, z1, z2) * V3{Rational(1), c1, c2};
    if (expected.is_zero() || !proportional(a, expected)) {
      phi_ok = false;
      detail_phi = at_sample(z1, z2);
    }
  }
  rep.add("app-first-principles-vs-matrix-50", phi_ok, detail_phi);

  rep.add("app-det-worked-value",
          app_det(inst, Rational(1), Rational(2)) == Rational(-35328, 5),
          app_det(inst, Rational(1), Rational(2)).str());

  bool ident_ok = true;
  {
    auto einst = lift_instance<QEps>(inst);
    using T = FieldTraits<QEps>;
    for (long k = 0; k <= 6 && ident_ok; ++k) {
      QEps moving = T::from_rational(Rational(k)) + T::epsilon();
      QEps other = T::from_rational(Rational(2 * k + 1, 3));
      ident_ok = app_det(einst, moving, other) == app_det_closed_form(einst, moving, other) &&
                 app_det(einst, other, moving) == app_det_closed_form(einst, other, moving);
    }
  }
  rep.add("app-det-polynomial-identity", ident_ok);

  bool samples_ok = true;
  std::string detail_samples;
  for (int i = 0; i < 25; ++i) {
    Rational z1 = rng.rational(30, 11), z2 = rng.rational(30, 11);
    if (!(app_det(inst, z1, z2) == app_det_closed_form(inst, z1, z2))) {
      samples_ok = false;
      detail_samples = at_sample(z1, z2);
    }
  }
  rep.add("app-det-25-point-checks", samples_ok, detail_samples);
  return rep;
}

Report criterion_degeneration_ladder() {
  Report rep;
  auto inst = reference_instance();
  SampleRng rng(kSeedApp);

  {
    Rational z2(2);
    auto cls = app_degenerate(inst, inst.t(), z2);
    bool line = cls.kind == AppKind::LineImage && cls.line_axis == 1 &&
                app_matrix(inst, inst.t(), z2).column(1).is_zero();
    // image independent of c1 on the nose
    V3 a_one = app(inst, nabla_c(inst, inst.t(), z2, Rational(1), Rational(2)));
    V3 a_two = app(inst, nabla_c(inst, inst.t(), z2, Rational(-7), Rational(2)));
    rep.add("line-image-at-z1-eq-t", line && proportional(a_one, a_two));
  }
  {
    auto cls = app_degenerate(inst, inst.t(), inst.t());
    bool ok = cls.kind == AppKind::ConstantImage &&
              proportional(cls.image_point, V3{inst.t(), Rational(-1), Rational(0)});
    auto m = app_matrix(inst, inst.t(), inst.t());
    ok = ok && m.column(1).is_zero() && m.column(2).is_zero() &&
         proportional(m.column(0), V3{inst.t(), Rational(-1), Rational(0)});
    rep.add("constant-image-at-corner", ok);
  }
  {
    auto instc = degenerate_diff_instance();
    auto cls = app_degenerate(instc, instc.t(), instc.t());
    rep.add("indeterminate-corner-when-nu1-plus-nu2-is-1", cls.kind == AppKind::Indeterminate);
  }
  {
    auto instb = degenerate_sum_instance();
    bool det_zero = true;
    {
      auto einst = lift_instance<QEps>(instb);
      using T = FieldTraits<QEps>;
      for (long k = 0; k <= 6 && det_zero; ++k) {
        QEps moving = T::from_rational(Rational(k)) + T::epsilon();
        QEps other = T::from_rational(Rational(2 * k + 1, 3));
        det_zero = T::is_zero(app_det(einst, moving, other)) &&
                   T::is_zero(app_det(einst, other, moving));
      }
    }
    rep.add("degenerate-sum-det-identically-zero", det_zero);
    bool relation_ok = true;
    std::string detail;
    for (int i = 0; i < 10; ++i) {
      Rational z1 = rng.rational_avoiding(std::array{instb.t()});
      Rational z2 = rng.rational_avoiding(std::array{instb.t()});
      auto m = app_matrix(instb, z1, z2);
      Rational k1 = -instb.nu1() / (Rational(2) * (z1 - instb.t()));
      Rational k2 = (instb.nu1() + Rational(1)) / (Rational(2) * (z2 - instb.t()));
      V3 r1 = m.column(1), r2 = m.column(2);
      V3 rhs{k1 * r1.a0 + k2 * r2.a0, k1 * r1.a1 + k2 * r2.a1, k1 * r1.a2 + k2 * r2.a2};
      if (!(m.column(0) == rhs)) {
        relation_ok = false;
        detail = at_sample(z1, z2);
      }
    }
    rep.add("degenerate-sum-dependence-relation", relation_ok, detail);
  }
  return rep;
}

Report criterion_chart_transition() {
  Report rep;
  auto inst = reference_instance();
  SampleRng rng(kSeedFamily);
  bool cocycle_ok = true, square_ok = true;
  std::string detail;
  for (int i = 0; i < 10; ++i) {
    Rational Z1 = rng.nonzero_rational(6, 5), Z2 = rng.nonzero_rational(6, 5);
    Rational C0 = rng.rational(), C1 = rng.rational(), C2 = rng.rational();
    Rational z1 = Rational(1) / Z1, z2 = Rational(1) / Z2;
    auto base = nabla0(inst, z1, z2);
    auto h1 = theta1(inst, z1, z2);
    auto h2 = theta2(inst, z1, z2);
    auto inf_member = family_infinity(inst, Z1, Z2, C0, C1, C2);
    Vec3<Rational> c = chart_cocycle(inst, Z1, Z2) * Vec3<Rational>{C0, C1, C2};
    Mat2<CE> expect = mat_comb(
        Mat2<CE>{c.a0 * base.mat.a, c.a0 * base.mat.b, c.a0 * base.mat.c, c.a0 * base.mat.d},
        c.a1, h1.mat, c.a2, h2.mat);
    if (!(inf_member.mat == expect)) {
      cocycle_ok = false;
      detail = "Z = (" + Z1.str() + ", " + Z2.str() + ")";
    }
    auto t1_inf = family_infinity(inst, Z1, Z2, Rational(0), Rational(1), Rational(0));
    auto t2_inf = family_infinity(inst, Z1, Z2, Rational(0), Rational(0), Rational(1));
    Rational s1 = Z1 * Z1, s2 = Z2 * Z2;
    if (!(t1_inf.mat ==
              (Mat2<CE>{s1 * h1.mat.a, s1 * h1.mat.b, s1 * h1.mat.c, s1 * h1.mat.d}) &&
          t2_inf.mat ==
              (Mat2<CE>{s2 * h2.mat.a, s2 * h2.mat.b, s2 * h2.mat.c, s2 * h2.mat.d})))
      square_ok = false;
  }
  rep.add("cocycle-relation-10-overlap-samples", cocycle_ok, detail);
  rep.add("higgs-square-rescaling", square_ok);

  auto einst = lift_instance<QEps>(reference_instance());
  using T = FieldTraits<QEps>;
  QEps eps = T::epsilon(), one = T::one();
  bool reg1 = epsilon_regular(
      family_infinity(einst, eps, T::from_rational(Rational(1, 7)), one, T::zero(), T::zero()));
  bool reg2 = epsilon_regular(
      family_infinity(einst, T::from_rational(Rational(1, 5)), eps, one, T::zero(), T::zero()));
  rep.add("epsilon-regular-along-Z1-axis", reg1);
  rep.add("epsilon-regular-along-Z2-axis", reg2);
  return rep;
}

Report criterion_symplectic_identities() {
  Report rep;
  auto inst = reference_instance();
  SampleRng rng(kSeedSymplectic);
  bool pullback_ok = true;
  std::string detail_pb;
  for (int i = 0; i < 20; ++i) {
    Rational z1 = rng.rational(), z2 = rng.rational();
    Rational zeta1 = rng.rational_avoiding(std::array{z1});
    Rational zeta2 = rng.rational_avoiding(std::array{z2});
    if (!par_pullback_check(inst, z1, z2, zeta1, zeta2)) {
      pullback_ok = false;
      detail_pb = at_sample(z1, z2);
    }
  }
  rep.add("par-pullback-20-samples", pullback_ok, detail_pb);

  bool eta_ok = true;
  std::string detail_eta;
  int done = 0;
  while (done < 20) {
    Rational z1 = rng.rational_avoiding(std::array{inst.t()});
    Rational z2 = rng.rational_avoiding(std::array{inst.t(), z1});
    Rational c1 = rng.rational(), c2 = rng.rational();
    try {
      if (!eta_and_domega_check(inst, z1, z2, c1, c2)) {
        eta_ok = false;
        detail_eta = at_sample(z1, z2);
      }
      ++done;
    } catch (const DomainError&) {
      continue;  // incidence pole; resample
    }
  }
  rep.add("eta-differential-20-samples", eta_ok, detail_eta);

  Report torelli = torelli_invariance_checks(inst);
  for (auto& c : torelli.checks) rep.add("torelli-" + c.name, c.pass, c.detail);
  return rep;
}

Report criterion_elementary_transformations() {
  Report rep;
  auto inst = reference_instance();
  SampleRng rng(kSeedFamily);
  bool scalar_ok = true;
  std::string detail;
  const Rational mh(-1, 2);
  for (int i = 0; i < 10 && scalar_ok; ++i) {
    Rational z1 = rng.rational(), z2 = rng.rational();
    Rational c1 = rng.rational(), c2 = rng.rational();
    auto conn = nabla_c(inst, z1, z2, c1, c2);
    const std::array<std::pair<CurvePoint<Rational>, Rational>, 3> spots{
        std::pair{inst.w0(), Rational(0)}, std::pair{inst.w1(), Rational(1)},
        std::pair{inst.w_lambda(), inst.lambda()}};
    for (const auto& [at, slope] : spots) {
      auto res = elm(inst, conn, at, ProjDir<Rational>(Rational(1), slope), ElmSign::Plus);
      auto rd = residue_data(inst, res.conn, at);
      if (!(rd.principal == (Mat2<Rational>{mh, Rational(0), Rational(0), mh}))) {
        scalar_ok = false;
        detail = at_sample(z1, z2);
      }
    }
  }
  rep.add("elm-plus-scalar-residue-at-apparent-points", scalar_ok, detail);

  ExponentLedger<Rational> ledger;
  ledger.bundle_degree = 1;
  ledger.bundle_class = {1, inst.w_infinity()};
  const Rational h(1, 2);
  ledger.set(inst.t1(), inst.nu1() / Rational(2) - h, -(inst.nu1() / Rational(2)) - h);
  ledger.set(inst.t2(), inst.nu2() / Rational(2), -(inst.nu2() / Rational(2)));
  auto plus = elm_chart_map(inst, ledger, ChartDirections::Plus);
  auto minus = elm_chart_map(inst, ledger, ChartDirections::Minus);
  const auto* nu1 = ledger.find(inst.t1());
  const auto* l1 = plus.find(inst.t1());
  const auto* g1 = minus.find(inst.t1());
  bool rules_ok = l1->first == nu1->first - h && l1->second == nu1->second + h &&
                  g1->first == nu1->first + h && g1->second == nu1->second - h;
  const auto* nu2 = ledger.find(inst.t2());
  const auto* l2 = plus.find(inst.t2());
  const auto* g2 = minus.find(inst.t2());
  rules_ok = rules_ok && l2->first == nu2->first - h && l2->second == nu2->second + h &&
             g2->first == nu2->first + h && g2->second == nu2->second - h;
  rep.add("chart-exponent-rules", rules_ok);
  rep.add("chart-rules-preserve-fuchs",
          fuchs_check(ledger) && fuchs_check(plus) && fuchs_check(minus));
  return rep;
}

Report criterion_conservation() {
  Report rep;
  auto inst = reference_instance();
  auto basis = dprime_basis(inst);
  std::vector<CurvePoint<Rational>> poles{inst.w0(), inst.w1(), inst.w_lambda(), inst.t1(),
                                          inst.t2()};
  SampleRng rng(kSeedConservation);
  bool forms_ok = true;
  std::string detail;
  for (int i = 0; i < 50; ++i) {
    CE g = CE::zero();
    for (const auto& b : basis) g = g + rng.rational() * b;
    if (g.is_zero()) continue;
    Rational sum(0);
    for (const auto& p : poles) sum += scalar_residue(inst, g, p);
    if (!sum.is_zero()) {
      forms_ok = false;
      detail = "sample " + std::to_string(i) + ": sum " + sum.str();
    }
  }
  rep.add("residue-sum-50-scalar-forms", forms_ok, detail);

  bool traces_ok = true;
  for (int i = 0; i < 10; ++i) {
    Rational z1 = rng.rational(), z2 = rng.rational();
    Rational c1 = rng.rational(), c2 = rng.rational();
    CE tr = trace_form(nabla_c(inst, z1, z2, c1, c2));
    Rational sum(0);
    for (const auto& p : poles) sum += scalar_residue(inst, tr, p);
    if (!sum.is_zero() || !tr.is_zero()) traces_ok = false;
  }
  rep.add("residue-sum-family-trace-forms", traces_ok);
  return rep;
}

Report criterion_flatness_decisions() {
  Report rep;
  auto inst = reference_instance();
  using Desc = ParabolicBundleDesc<Rational>;
  const Rational h(1, 2);

  ExponentSet<Rational> generic;
  generic.bundle_degree = 1;
  generic.pairs = {{inst.nu1() / Rational(2) - h, -(inst.nu1() / Rational(2)) - h},
                   {inst.nu2() / Rational(2), -(inst.nu2() / Rational(2))}};

  auto instb = degenerate_sum_instance();
  ExponentSet<Rational> resonant;  // fails oddness/integrality
  resonant.bundle_degree = 1;
  resonant.pairs = {{instb.nu1() / Rational(2) - h, -(instb.nu1() / Rational(2)) - h},
                    {instb.nu2() / Rational(2), -(instb.nu2() / Rational(2))}};

  ExponentSet<Rational> sl2;
  sl2.bundle_degree = 0;
  sl2.pairs = {{inst.nu1(), -inst.nu1()}, {inst.nu2(), -inst.nu2()}};

  ExponentSet<Rational> fuchs_fail = generic;
  fuchs_fail.bundle_degree = 0;

  ExponentSet<Rational> tuned_zero;
  tuned_zero.bundle_degree = 0;
  tuned_zero.pairs = {{Rational(3, 4), Rational(1, 4)}, {Rational(-1, 4), Rational(-3, 4)}};

  ExponentSet<Rational> tuned_nonzero;
  tuned_nonzero.bundle_degree = 0;
  tuned_nonzero.pairs = {{Rational(3, 4), Rational(1, 4)}, {Rational(-3, 4), Rational(-1, 4)}};

  Desc e1;
  e1.kind = Desc::Kind::IndecomposableE1;
  Desc e0;
  e0.kind = Desc::Kind::E0AllOnMax;
  auto dec = [](int dl, int dm, ParabolicFlag f1, ParabolicFlag f2) {
    Desc d;
    d.kind = Desc::Kind::Decomposable;
    d.l_class.degree = dl;
    d.m_class.degree = dm;
    d.flags = {f1, f2};
    return d;
  };

  struct Case {
    const char* name;
    FlatVerdict expect;
    FlatVerdict got;
  };
  std::vector<Case> cases;
  cases.push_back({"e1-generic-fuchs", FlatVerdict::Flat, nu_flat(e1, generic)});
  cases.push_back({"e1-resonant-fuchs", FlatVerdict::Flat, nu_flat(e1, resonant)});
  cases.push_back({"e1-fuchs-fails", FlatVerdict::NotFlat, nu_flat(e1, fuchs_fail)});
  cases.push_back({"e0-all-on-max-sl2", FlatVerdict::Flat, nu_flat(e0, sl2)});
  cases.push_back({"e0-fuchs-fails", FlatVerdict::NotFlat, nu_flat(e0, fuchs_fail)});
  cases.push_back({"dec-generic-inl-inm", FlatVerdict::NotFlat,
                   nu_flat(dec(0, 1, ParabolicFlag::InL, ParabolicFlag::InM), generic)});
  cases.push_back({"dec-generic-inm-inl", FlatVerdict::NotFlat,
                   nu_flat(dec(0, 1, ParabolicFlag::InM, ParabolicFlag::InL), generic)});
  cases.push_back({"dec-generic-inl-inl", FlatVerdict::NotFlat,
                   nu_flat(dec(0, 1, ParabolicFlag::InL, ParabolicFlag::InL), generic)});
  cases.push_back({"dec-generic-inm-inm", FlatVerdict::NotFlat,
                   nu_flat(dec(0, 1, ParabolicFlag::InM, ParabolicFlag::InM), generic)});
  cases.push_back({"dec-tuned-both-zero", FlatVerdict::Flat,
                   nu_flat(dec(0, 0, ParabolicFlag::InL, ParabolicFlag::InM), tuned_zero)});
  cases.push_back({"dec-tuned-nonzero-summand", FlatVerdict::NotFlat,
                   nu_flat(dec(0, 0, ParabolicFlag::InL, ParabolicFlag::InM), tuned_nonzero)});
  cases.push_back({"dec-fuchs-fails", FlatVerdict::NotFlat,
                   nu_flat(dec(0, 1, ParabolicFlag::InL, ParabolicFlag::InM), fuchs_fail)});

  // Direction-generic cases through the base-point analysis.
  DivisorClass<Rational> det{1, inst.w_infinity()};
  Desc not_simple = dec(0, 1, ParabolicFlag::Generic, ParabolicFlag::InM);
  not_simple.base_point = inst.t1();
  cases.push_back({"dec-base-t1-generic-inm", FlatVerdict::Flat,
                   nu_flat_n2(inst, not_simple, generic, det)});
  Desc splittable = not_simple;
  splittable.base_point = inst.w0();
  cases.push_back({"dec-base-w0-generic-inm", FlatVerdict::NotFlat,
                   nu_flat_n2(inst, splittable, generic, det)});
  Desc both_generic = dec(0, 1, ParabolicFlag::Generic, ParabolicFlag::Generic);
  both_generic.base_point = inst.w0();
  cases.push_back({"dec-base-w0-generic-generic", FlatVerdict::GenericallyFlat,
                   nu_flat_n2(inst, both_generic, generic, det)});

  for (const auto& c : cases)
    rep.add(std::string("flat-") + c.name, c.got == c.expect);
  return rep;
}

Report criterion_incidence_identity() {
  Report rep;
  auto inst = reference_instance();
  // worked example: theta1 image pairs to zero with the dual coordinates
  auto m = app_matrix(inst, Rational(1), Rational(2));
  V3 a = m.column(1);
  V3 b = bun_prime(inst, Rational(1), Rational(2));
  bool worked = proportional(a, V3{Rational(48), Rational(-48), Rational(-16)}) &&
                b == V3{Rational(3), Rational(5), Rational(-6)} &&
                (Rational(48) * b.a0 - Rational(48) * b.a1 - Rational(16) * b.a2).is_zero();
  rep.add("incidence-worked-example", worked);

  bool ident = true;
  auto einst = lift_instance<QEps>(inst);
  using T = FieldTraits<QEps>;
  QEps eps = T::epsilon();
  for (long k = 0; k <= 4 && ident; ++k) {
    QEps moving = T::from_rational(Rational(k)) + eps;
    QEps other = T::from_rational(Rational(3 * k + 2, 5));
    for (int which = 0; which < 2; ++which) {
      QEps c1 = which == 0 ? T::one() : T::zero();
      QEps c2 = which == 0 ? T::zero() : T::one();
      ident = ident && T::is_zero(incidence_pairing(einst, moving, other, c1, c2)) &&
              T::is_zero(incidence_pairing(einst, other, moving, c1, c2));
    }
  }
  rep.add("incidence-polynomial-identity", ident);
  return rep;
}

Report run_selftest() {
  struct Entry {
    const char* prefix;
    Report (*fn)();
  };
  const Entry entries[] = {
      {"1-family-validity", &criterion_family_validity},
      {"2-par-closed-form", &criterion_par_closed_form},
      {"3-app-consistency", &criterion_app_consistency},
      {"4-degeneration-ladder", &criterion_degeneration_ladder},
      {"5-chart-transition", &criterion_chart_transition},
      {"6-symplectic-identities", &criterion_symplectic_identities},
      {"7-elementary-transformations", &criterion_elementary_transformations},
      {"8-conservation", &criterion_conservation},
      {"9-flatness-decisions", &criterion_flatness_decisions},
      {"10-incidence-identity", &criterion_incidence_identity},
  };
  Report all;
  for (const auto& e : entries) {
    Report r = e.fn();
    for (auto& c : r.checks)
      all.add(std::string(e.prefix) + "/" + c.name, c.pass, c.detail);
  }
  return all;
}

}  // namespace ellconn
