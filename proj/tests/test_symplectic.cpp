#include "doctest.h"

#include "ellconn/instances.hpp"
#include "ellconn/sampling.hpp"
#include "ellconn/symplectic.hpp"

using namespace ellconn;

TEST_CASE("canonical form coefficients") {
  auto w = omega_canonical();
  CHECK(w.at(2, 0) == Rational(1));  // dc1 ^ dz1
  CHECK(w.at(3, 1) == Rational(1));  // dc2 ^ dz2
  CHECK(w.at(0, 1) == Rational(0));
  CHECK(w.at(2, 3) == Rational(0));
  CHECK(w.antisymmetric());
  CHECK(!w.top_wedge_square().is_zero());
  CHECK(abs(w.top_wedge_square()) == Rational(2));
}

TEST_CASE("pullback under the eigendirection substitution: worked coefficient") {
  auto inst = reference_instance();
  // (z1, zeta1) = (1, 0): d c1/d zeta1 = nu1/(2 (z1-zeta1)^2) = 1/6 and the
  // dz1^dzeta1 coefficient of dc1^dz1 is its negative.
  auto form = par_pullback_form(inst, Rational(1), Rational(5), Rational(0), Rational(7));
  CHECK(form.at(0, 2) == Rational(-1, 6));
  auto target = par_target_form(inst.nu1(), inst.nu2(), Rational(1), Rational(5), Rational(0),
                                Rational(7));
  CHECK(target.at(0, 2) == Rational(-1, 6));
  CHECK(form == target);
}

TEST_CASE("pullback identity at random samples") {
  auto inst = reference_instance();
  SampleRng rng(kSeedSymplectic);
  for (int i = 0; i < 20; ++i) {
    Rational z1 = rng.rational(), z2 = rng.rational();
    Rational zeta1 = rng.rational_avoiding(std::array{z1});
    Rational zeta2 = rng.rational_avoiding(std::array{z2});
    CHECK(par_pullback_check(inst, z1, z2, zeta1, zeta2));
  }
  CHECK_THROWS_AS(par_pullback_form(inst, Rational(1), Rational(2), Rational(1), Rational(3)),
                  DomainError);
}

TEST_CASE("pullback identity is blockwise symmetric in the two marked points") {
  // Exchanging the two blocks together with the weights leaves it invariant.
  auto inst = reference_instance();
  CurveInstance<Rational> swapped(inst.lambda(), inst.t(), inst.r(), inst.nu2(), inst.nu1());
  Rational z1(3), z2(-2), zeta1(1, 2), zeta2(4);
  auto direct = par_pullback_form(inst, z1, z2, zeta1, zeta2);
  auto mirrored = par_pullback_form(swapped, z2, z1, zeta2, zeta1);
  CHECK(direct.at(0, 2) == mirrored.at(1, 3));
  CHECK(direct.at(1, 3) == mirrored.at(0, 2));
}

TEST_CASE("exterior derivative of eta is the canonical form") {
  auto inst = reference_instance();
  auto d_eta = eta_differential(inst, Rational(1), Rational(2), Rational(1), Rational(1));
  CHECK(d_eta == omega_canonical());

  SampleRng rng(kSeedSymplectic);
  int done = 0;
  while (done < 20) {
    Rational z1 = rng.rational_avoiding(std::array{inst.t()});
    Rational z2 = rng.rational_avoiding(std::array{inst.t(), z1});
    Rational c1 = rng.rational(), c2 = rng.rational();
    TwoFormSample s;
    try {
      s = eta_differential(inst, z1, z2, c1, c2);
    } catch (const DomainError&) {
      continue;  // incidence pole
    }
    CHECK(s == omega_canonical());
    ++done;
  }
}

TEST_CASE("eta is unchanged by constant rescaling of a and b") {
  // eta = kappa (a . db)/(a . b) is degree-0 homogeneous in a and in b, so
  // its coefficient functions are insensitive to the chosen normalizations.
  auto inst = reference_instance();
  auto jinst = lift_instance<JetQ>(inst);
  const Rational z1(1), z2(2), c1(1), c2(-2);
  auto eta_coefficient = [&](int axis, const Rational& scale_a, const Rational& scale_b) {
    // d/du_axis is slot 1; the other slots are constants.
    std::array<JetQ, 4> u{JetQ::constant(z1), JetQ::constant(z2), JetQ::constant(c1),
                          JetQ::constant(c2)};
    u[static_cast<size_t>(axis)] = JetQ::variable(u[static_cast<size_t>(axis)].v, 1);
    Vec3<JetQ> a = app_matrix(jinst, u[0], u[1]) * Vec3<JetQ>{JetQ(Rational(1)), u[2], u[3]};
    Vec3<JetQ> b = bun_prime(jinst, u[0], u[1]);
    JetQ sa(scale_a), sb(scale_b);
    std::array<JetQ, 3> av{sa * a.a0, sa * a.a1, sa * a.a2};
    std::array<JetQ, 3> bv{sb * b.a0, sb * b.a1, sb * b.a2};
    JetQ dot, num;
    for (int k = 0; k < 3; ++k) {
      dot = dot + av[static_cast<size_t>(k)] * bv[static_cast<size_t>(k)];
      num = num + JetQ(av[static_cast<size_t>(k)].v) * JetQ(bv[static_cast<size_t>(k)].d1);
    }
    return (num / dot).v;
  };
  for (int axis = 0; axis < 4; ++axis) {
    Rational base = eta_coefficient(axis, Rational(1), Rational(1));
    CHECK(eta_coefficient(axis, Rational(5), Rational(1)) == base);
    CHECK(eta_coefficient(axis, Rational(1), Rational(-3, 7)) == base);
    CHECK(eta_coefficient(axis, Rational(-2, 9), Rational(4)) == base);
  }
}

TEST_CASE("eta needs nu1 + nu2 + 1 nonzero") {
  auto instb = degenerate_sum_instance();
  CHECK_THROWS_WITH_AS(eta_differential(instb, Rational(1), Rational(2), Rational(1), Rational(1)),
                       "eta: requires nu1 + nu2 + 1 != 0", DomainError);
}

TEST_CASE("the two coordinate models agree at common samples") {
  // A sample (z, zeta) off the incidence locus corresponds to (z, c) with
  // c = nu/(2(z - zeta)); both identities must hold there simultaneously.
  auto inst = reference_instance();
  SampleRng rng(kSeedSymplectic);
  int done = 0;
  while (done < 10) {
    Rational z1 = rng.rational_avoiding(std::array{inst.t()});
    Rational z2 = rng.rational_avoiding(std::array{inst.t(), z1});
    Rational zeta1 = rng.rational_avoiding(std::array{z1});
    Rational zeta2 = rng.rational_avoiding(std::array{z2});
    auto [c1, c2] = par_inverse(inst, z1, z2, ProjDir<Rational>(Rational(1), zeta1),
                                ProjDir<Rational>(Rational(1), zeta2));
    CHECK(par_pullback_check(inst, z1, z2, zeta1, zeta2));
    try {
      CHECK(eta_and_domega_check(inst, z1, z2, c1, c2));
      ++done;
    } catch (const DomainError&) {
      continue;  // a . b = 0 pole; resample
    }
  }
}

TEST_CASE("jet mixed partials are order-symmetric") {
  auto inst = reference_instance();
  CHECK(jet_mixed_partials_symmetric(inst, Rational(4), Rational(-7)));
  CHECK(jet_mixed_partials_symmetric(inst, Rational(1, 3), Rational(2, 5)));
}

TEST_CASE("invariance under the moebius generators and the swap lift") {
  auto inst = reference_instance();
  auto rep = torelli_invariance_checks(inst);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
}
