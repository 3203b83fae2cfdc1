#include "doctest.h"

#include "ellconn/connection.hpp"
#include "ellconn/family.hpp"
#include "ellconn/instances.hpp"
#include "ellconn/sampling.hpp"

using namespace ellconn;

namespace {

using CE = CurveElement<Rational>;
using RQ = RatFunc<Rational>;
using PQ = Poly<Rational>;

CE constant(const Rational& v) { return CE::from_ratfunc(RQ::constant(v)); }

LogConnection<Rational> scalar_form_connection(const CurveInstance<Rational>& inst) {
  // diag(g, -g) with g = 1/(x - t): residue 1/r at t1.
  CE g = inverse(inst, CE::from_ratfunc(RQ(PQ{-inst.t(), Rational(1)})));
  LogConnection<Rational> conn;
  conn.mat = {g, CE::zero(), CE::zero(), -g};
  conn.polar.add(inst.t1(), 1);
  conn.polar.add(inst.t2(), 1);
  return conn;
}

}  // namespace

TEST_CASE("residues of simple forms") {
  auto inst = reference_instance();
  LogConnection<Rational> zero;
  zero.mat = {CE::zero(), CE::zero(), CE::zero(), CE::zero()};
  auto rd0 = residue_data(inst, zero, inst.t1());
  CHECK(rd0.principal == (Mat2<Rational>{Rational(0), Rational(0), Rational(0), Rational(0)}));

  auto conn = scalar_form_connection(inst);
  auto rd = residue_data(inst, conn, inst.t1());
  CHECK(rd.principal.a == Rational(1, 6));
  CHECK(rd.principal.d == Rational(-1, 6));
  CHECK(rd.principal.b == Rational(0));

  // not logarithmic: double pole at t1
  LogConnection<Rational> bad;
  CE g2 = inverse(inst, CE::from_ratfunc(RQ(PQ{-inst.t(), Rational(1)} * PQ{-inst.t(), Rational(1)})));
  bad.mat = {g2, CE::zero(), CE::zero(), -g2};
  CHECK_THROWS_AS(residue_data(inst, bad, inst.t1()), DomainError);
}

TEST_CASE("eigen data of residue matrices") {
  Mat2<Rational> diag{Rational(1, 6), Rational(0), Rational(0), Rational(-1, 6)};
  auto [e1, e2] = eigen(diag);
  CHECK(e1.value == Rational(1, 6));
  CHECK(e1.direction == ProjDir<Rational>(Rational(1), Rational(0)));
  CHECK(e2.value == Rational(-1, 6));
  CHECK(e2.direction == ProjDir<Rational>(Rational(0), Rational(1)));

  Mat2<Rational> nilpotent{Rational(0), Rational(1), Rational(0), Rational(0)};
  CHECK_THROWS_WITH_AS(eigen(nilpotent), "eigen: non-generic residue", DomainError);

  Mat2<Rational> irrational{Rational(0), Rational(2), Rational(1), Rational(0)};
  CHECK_THROWS_WITH_AS(eigen(irrational), "eigen: eigenvalues outside field", DomainError);
}

TEST_CASE("apparent-singularity predicate") {
  const Rational h(1, 2);
  ProjDir<Rational> e1(Rational(1), Rational(0));
  ResidueData<Rational> rd;
  rd.principal = {h, Rational(0), Rational(0), -h};
  rd.constant = {Rational(7), Rational(0), Rational(0), Rational(-7)};
  CHECK(is_apparent(rd, e1));

  rd.constant = {Rational(0), Rational(0), Rational(1), Rational(0)};
  CHECK(!is_apparent(rd, e1));

  // Wrong eigenvalue on the candidate direction.
  rd.principal = {-h, Rational(0), Rational(0), h};
  rd.constant = {Rational(7), Rational(0), Rational(0), Rational(-7)};
  CHECK(!is_apparent(rd, e1));
}

TEST_CASE("apparency is insensitive to the constant-part shear") {
  // Replacing A0 by A0 + s A-1 mimics a local parameter change.
  SampleRng rng(kSeedCurve);
  const Rational h(1, 2);
  ProjDir<Rational> p(Rational(1), Rational(3));
  ResidueData<Rational> rd;
  rd.principal = {h, Rational(0), Rational(0), -h};
  // conjugate so that p is the +1/2 direction
  Mat2<Rational> c{Rational(1), Rational(0), Rational(3), Rational(1)};
  Mat2<Rational> cinv{Rational(1), Rational(0), Rational(-3), Rational(1)};
  rd.principal = c * rd.principal * cinv;
  rd.constant = c * Mat2<Rational>{Rational(2), Rational(5), Rational(0), Rational(-2)} * cinv;
  bool base = is_apparent(rd, p);
  CHECK(base);
  for (int i = 0; i < 10; ++i) {
    Rational s = rng.rational();
    ResidueData<Rational> sheared = rd;
    sheared.constant = rd.constant + Mat2<Rational>{s * rd.principal.a, s * rd.principal.b,
                                                    s * rd.principal.c, s * rd.principal.d};
    CHECK(is_apparent(sheared, p) == base);
  }
}

TEST_CASE("gauge basics") {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(1), Rational(1));
  Mat2<CE> id{CE::one(), CE::zero(), CE::zero(), CE::one()};
  CHECK(gauge(inst, conn, id).mat == conn.mat);
  Mat2<CE> scalar{constant(Rational(5)), CE::zero(), CE::zero(), constant(Rational(5))};
  CHECK(gauge(inst, conn, scalar).mat == conn.mat);
  Mat2<CE> singular{CE::one(), CE::one(), CE::one(), CE::one()};
  CHECK_THROWS_AS(gauge(inst, conn, singular), DomainError);
}

TEST_CASE("gauge composition and constant-conjugation of residues") {
  auto inst = reference_instance();
  SampleRng rng(kSeedCurve);
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(3, 7), Rational(-2));
  for (int i = 0; i < 5; ++i) {
    // invertible by construction: unipotent * diagonal with polynomial entries
    CE p = CE::from_ratfunc(RQ(PQ{rng.rational(), rng.rational()}));
    CE q = CE::from_ratfunc(RQ(PQ{rng.rational()}));
    Mat2<CE> g{CE::one(), p, CE::zero(), CE::one()};
    Mat2<CE> h{constant(rng.nonzero_rational()), CE::zero(), q, CE::one()};
    auto lhs = gauge(inst, gauge(inst, conn, g), h);
    auto mat_mul = [&](const Mat2<CE>& m, const Mat2<CE>& n) {
      return Mat2<CE>{mul(inst, m.a, n.a) + mul(inst, m.b, n.c),
                      mul(inst, m.a, n.b) + mul(inst, m.b, n.d),
                      mul(inst, m.c, n.a) + mul(inst, m.d, n.c),
                      mul(inst, m.c, n.b) + mul(inst, m.d, n.d)};
    };
    auto rhs = gauge(inst, conn, mat_mul(h, g));
    CHECK(lhs.mat == rhs.mat);
  }
  // constant gauge conjugates residue data
  Mat2<Rational> c0{Rational(2), Rational(1), Rational(1), Rational(1)};
  Mat2<Rational> c0inv{Rational(1), Rational(-1), Rational(-1), Rational(2)};
  Mat2<CE> cg{constant(c0.a), constant(c0.b), constant(c0.c), constant(c0.d)};
  auto conj = gauge(inst, conn, cg);
  for (const auto& at : {inst.t1(), inst.w0()}) {
    auto before = residue_data(inst, conn, at);
    auto after = residue_data(inst, conj, at);
    CHECK(after.principal == c0 * before.principal * c0inv);
  }
}

TEST_CASE("gauge by diag(x - x0, 1) at an apparent point rescales the residue to -1/2 id") {
  auto inst = reference_instance();
  // Upper-triangular local model diag(1/2, -1/2) at the generic affine point
  // (-1, 2): residue of dx/y there is 1/y0 = 1/2 per unit of 1/(x + 1).
  const Rational mh(-1, 2);
  CE g = CE::from_ratfunc(RQ(PQ::constant(Rational(1)), PQ{Rational(1), Rational(1)}));
  LogConnection<Rational> conn;
  conn.mat = {g, CE::one(), CE::zero(), -g};
  CurvePoint<Rational> at = CurvePoint<Rational>::affine(Rational(-1), Rational(2));
  auto rd = residue_data(inst, conn, at);
  CHECK(rd.principal == (Mat2<Rational>{Rational(1, 2), Rational(0), Rational(0), mh}));
  CHECK(is_apparent(rd, ProjDir<Rational>(Rational(1), Rational(0))));
  Mat2<CE> gm{CE::from_ratfunc(RQ(PQ{Rational(1), Rational(1)})), CE::zero(), CE::zero(),
              CE::one()};
  auto after = gauge(inst, conn, gm);
  auto rd2 = residue_data(inst, after, at);
  CHECK(rd2.principal == (Mat2<Rational>{mh, Rational(0), Rational(0), mh}));
}

TEST_CASE("gauge by the 2-torsion uniformizer at an apparent family point") {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(5), Rational(-7));
  auto rd = residue_data(inst, conn, inst.w0());
  CHECK(is_apparent(rd, ProjDir<Rational>(Rational(1), Rational(0))));
  // x/y vanishes simply at w0.
  CE u = div(inst, CE::x_function(), CE::y_function());
  Mat2<CE> gm{u, CE::zero(), CE::zero(), CE::one()};
  auto after = gauge(inst, conn, gm);
  auto rd2 = residue_data(inst, after, inst.w0());
  const Rational mh(-1, 2);
  CHECK(rd2.principal == (Mat2<Rational>{mh, Rational(0), Rational(0), mh}));
}

TEST_CASE("trace form") {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(1), Rational(1));
  CHECK(trace_form(conn).is_zero());
  CE g = inverse(inst, CE::from_ratfunc(RQ(PQ{-inst.t(), Rational(1)})));
  LogConnection<Rational> diag;
  diag.mat = {g, CE::zero(), CE::zero(), g};
  CHECK(trace_form(diag) == g + g);
}

TEST_CASE("fuchs relation checks") {
  auto inst = reference_instance();
  RankOneConnection<Rational> zeta;
  zeta.cls = {1, inst.w_infinity()};
  zeta.residues = {{inst.t1(), Rational(-1)}};
  CHECK(fuchs_check(zeta));

  ExponentLedger<Rational> nu_ledger;
  nu_ledger.bundle_degree = 1;
  nu_ledger.bundle_class = {1, inst.w_infinity()};
  const Rational h(1, 2);
  nu_ledger.set(inst.t1(), inst.nu1() / Rational(2) - h, -(inst.nu1() / Rational(2)) - h);
  nu_ledger.set(inst.t2(), inst.nu2() / Rational(2), -(inst.nu2() / Rational(2)));
  CHECK(fuchs_check(nu_ledger));

  RankOneConnection<Rational> bad;
  bad.cls = {0, inst.w_infinity()};
  bad.residues = {{inst.t1(), Rational(1, 2)}};
  CHECK(!fuchs_check(bad));
}

TEST_CASE("ledger twisting") {
  auto inst = reference_instance();
  auto conn = nabla0(inst, Rational(1), Rational(2));

  RankOneConnection<Rational> trivial;
  trivial.cls = {0, inst.w_infinity()};
  auto same = twist_ledger(inst, conn.ledger, trivial);
  CHECK(same.exponent_sum() == conn.ledger.exponent_sum());
  CHECK(same.bundle_degree == conn.ledger.bundle_degree);

  // The degree-repairing twist: residues +1/2 at the 2-torsion poles and
  // -1/2 at t1, on a class of degree -1 (its own Fuchs relation holds).
  RankOneConnection<Rational> xi;
  xi.cls = {-1, inst.w_infinity()};
  xi.residues = {{inst.w0(), Rational(1, 2)},
                 {inst.w1(), Rational(1, 2)},
                 {inst.w_lambda(), Rational(1, 2)},
                 {inst.t1(), Rational(-1, 2)}};
  CHECK(fuchs_check(xi));
  auto shifted = twist_ledger(inst, conn.ledger, xi);
  const auto* nu1 = shifted.find(inst.t1());
  REQUIRE(nu1 != nullptr);
  CHECK(nu1->first == inst.nu1() / Rational(2) - Rational(1, 2));
  CHECK(nu1->second == -(inst.nu1() / Rational(2)) - Rational(1, 2));
  CHECK(fuchs_check(shifted));
  // differences invariant under any twist
  const auto* before = conn.ledger.find(inst.t1());
  CHECK(nu1->first - nu1->second == before->first - before->second);
}

TEST_CASE("ledger pipeline from the five-pole system to the two-pole connection") {
  // Three elm+ over the 2-torsion points followed by the square-root twist:
  // the exponents become the normalized two-pole data and the determinant
  // class lands on (1, w_inf).
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(1), Rational(-1));
  CHECK(fuchs_check(conn.ledger));
  const std::array<std::pair<CurvePoint<Rational>, Rational>, 3> spots{
      std::pair{inst.w0(), Rational(0)}, std::pair{inst.w1(), Rational(1)},
      std::pair{inst.w_lambda(), inst.lambda()}};
  LogConnection<Rational> current = conn;
  for (const auto& [at, slope] : spots) {
    auto res = elm(inst, current, at, ProjDir<Rational>(Rational(1), slope), ElmSign::Plus);
    current = res.conn;
    const auto* nu = current.ledger.find(at);
    REQUIRE(nu != nullptr);
    CHECK(nu->first == Rational(-1, 2));
    CHECK(nu->second == Rational(-1, 2));
  }
  CHECK(current.ledger.bundle_degree == 3);
  CHECK(current.ledger.bundle_class.sum == inst.w_infinity());
  RankOneConnection<Rational> xi;
  xi.cls = {-1, inst.w_infinity()};
  xi.residues = {{inst.w0(), Rational(1, 2)},
                 {inst.w1(), Rational(1, 2)},
                 {inst.w_lambda(), Rational(1, 2)},
                 {inst.t1(), Rational(-1, 2)}};
  auto final_ledger = twist_ledger(inst, current.ledger, xi);
  CHECK(final_ledger.bundle_degree == 1);
  CHECK(final_ledger.bundle_class == (DivisorClass<Rational>{1, inst.w_infinity()}));
  for (const auto& [at, slope] : spots) {
    (void)slope;
    const auto* nu = final_ledger.find(at);
    CHECK(nu->first == Rational(0));
    CHECK(nu->second == Rational(0));
  }
  const auto* nu1 = final_ledger.find(inst.t1());
  CHECK(nu1->first == inst.nu1() / Rational(2) - Rational(1, 2));
  CHECK(nu1->second == -(inst.nu1() / Rational(2)) - Rational(1, 2));
  const auto* nu2 = final_ledger.find(inst.t2());
  CHECK(nu2->first == inst.nu2() / Rational(2));
  CHECK(fuchs_check(final_ledger));
}

TEST_CASE("elm ledger rules and residue normalization") {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(2), Rational(-1));

  // elm+ at an apparent point makes the residue scalar -1/2 id.
  for (int which = 0; which < 3; ++which) {
    CurvePoint<Rational> at = which == 0 ? inst.w0() : which == 1 ? inst.w1() : inst.w_lambda();
    Rational slope = which == 0 ? Rational(0) : which == 1 ? Rational(1) : inst.lambda();
    auto res = elm(inst, conn, at, ProjDir<Rational>(Rational(1), slope), ElmSign::Plus);
    auto rd = residue_data(inst, res.conn, at);
    const Rational mh(-1, 2);
    CHECK(rd.principal == (Mat2<Rational>{mh, Rational(0), Rational(0), mh}));
  }

  // Ledger rule example: (-1/3, -2/3) -> (1/3, -1/3) under elm-.
  {
    auto res = elm(inst, conn, inst.t1(), ProjDir<Rational>(Rational(1), Rational(1)),
                   ElmSign::Minus);
    const auto* nu = res.conn.ledger.find(inst.t1());
    REQUIRE(nu != nullptr);
    // ledger of the family at t1 is (nu1/2, -nu1/2) = (1/6, -1/6)
    CHECK(nu->first == Rational(-1, 6) + Rational(1));
    CHECK(nu->second == Rational(1, 6));
    CHECK(res.conn.ledger.bundle_degree == -1);
  }
  ExponentLedger<Rational> lg;
  lg.bundle_degree = 1;
  lg.bundle_class = {1, inst.w_infinity()};
  lg.set(inst.t1(), Rational(-1, 3), Rational(-2, 3));
  LogConnection<Rational> carrier = conn;
  carrier.ledger = lg;
  auto res = elm(inst, carrier, inst.t1(), ProjDir<Rational>(Rational(1), Rational(1)),
                 ElmSign::Minus);
  const auto* nu = res.conn.ledger.find(inst.t1());
  CHECK(nu->first == Rational(1, 3));
  CHECK(nu->second == Rational(-1, 3));
}

TEST_CASE("elm at an axis direction composes to the identity") {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(1), Rational(4));
  for (auto first : {ElmSign::Plus, ElmSign::Minus}) {
    ProjDir<Rational> p(Rational(1), Rational(0));
    auto step1 = elm(inst, conn, inst.t1(), p, first);
    auto step2 = elm(inst, step1.conn, inst.t1(), step1.new_direction,
                     first == ElmSign::Plus ? ElmSign::Minus : ElmSign::Plus);
    CHECK(step2.conn.mat == conn.mat);
    const auto* nu_before = conn.ledger.find(inst.t1());
    const auto* nu_after = step2.conn.ledger.find(inst.t1());
    CHECK(nu_before->first == nu_after->first);
    CHECK(nu_before->second == nu_after->second);
    CHECK(step2.conn.ledger.bundle_degree == conn.ledger.bundle_degree);
  }
}

TEST_CASE("elm at a generic direction preserves gauge-invariant data on round trip") {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(1), Rational(4));
  ProjDir<Rational> p(Rational(1), Rational(5));
  auto step1 = elm(inst, conn, inst.t1(), p, ElmSign::Plus);
  auto step2 = elm(inst, step1.conn, inst.t1(), step1.new_direction, ElmSign::Minus);
  for (const auto& at : {inst.t1(), inst.t2(), inst.w0()}) {
    auto before = residue_data(inst, conn, at);
    auto after = residue_data(inst, step2.conn, at);
    CHECK(before.principal.trace() == after.principal.trace());
    CHECK(before.principal.det() == after.principal.det());
  }
  CHECK(step2.conn.ledger.bundle_degree == conn.ledger.bundle_degree);
}
