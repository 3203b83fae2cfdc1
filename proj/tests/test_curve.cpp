#include "doctest.h"

#include <vector>

#include "ellconn/divisor.hpp"
#include "ellconn/family.hpp"
#include "ellconn/instances.hpp"
#include "ellconn/sampling.hpp"

using namespace ellconn;

namespace {

using PtQ = CurvePoint<Rational>;
using CE = CurveElement<Rational>;
using RQ = RatFunc<Rational>;
using PQ = Poly<Rational>;

std::vector<PtQ> rational_points(const CurveInstance<Rational>& inst) {
  return {inst.w_infinity(), inst.w0(),
          inst.w1(),         inst.w_lambda(),
          inst.t1(),         inst.t2(),
          PtQ::affine(Rational(-1), Rational(2)),
          PtQ::affine(Rational(-1), Rational(-2))};
}

}  // namespace

TEST_CASE("instance invariants are enforced with diagnostics") {
  CHECK_THROWS_WITH_AS(CurveInstance<Rational>(Rational(1), Rational(3), Rational(6),
                                               Rational(1, 3), Rational(1, 5)),
                       "instance: lambda must avoid {0, 1}", DomainError);
  CHECK_THROWS_AS(CurveInstance<Rational>(Rational(-3), Rational(0), Rational(6), Rational(1, 3),
                                          Rational(1, 5)),
                  DomainError);
  CHECK_THROWS_AS(CurveInstance<Rational>(Rational(-3), Rational(3), Rational(5), Rational(1, 3),
                                          Rational(1, 5)),
                  DomainError);
  CHECK_THROWS_AS(CurveInstance<Rational>(Rational(-3), Rational(3), Rational(0), Rational(1, 3),
                                          Rational(1, 5)),
                  DomainError);
}

TEST_CASE("point membership") {
  auto inst = reference_instance();
  CHECK(inst.on_curve(PtQ::affine(Rational(3), Rational(6))));
  CHECK(!inst.on_curve(PtQ::affine(Rational(3), Rational(5))));
  CHECK(inst.on_curve(inst.w_infinity()));
}

TEST_CASE("group law basics") {
  auto inst = reference_instance();
  CHECK(inst.negate(inst.t1()) == inst.t2());
  CHECK(inst.add(inst.w0(), inst.w1()) == inst.w_lambda());
  CHECK(inst.add(inst.t1(), inst.t2()) == inst.w_infinity());
}

TEST_CASE("group law identity and associativity over rational points") {
  auto inst = reference_instance();
  auto pts = rational_points(inst);
  for (const auto& p : pts) {
    CHECK(inst.add(p, inst.w_infinity()) == p);
    CHECK(inst.add(p, inst.negate(p)) == inst.w_infinity());
    for (const auto& q : pts) {
      CHECK(inst.add(p, q) == inst.add(q, p));
      for (const auto& s : pts)
        CHECK(inst.add(inst.add(p, q), s) == inst.add(p, inst.add(q, s)));
    }
  }
}

TEST_CASE("group law edge cases") {
  auto inst = reference_instance();
  // doubling a 2-torsion point gives the identity
  CHECK(inst.add(inst.w0(), inst.w0()) == inst.w_infinity());
  CHECK(inst.mul(inst.w_lambda(), 2) == inst.w_infinity());
  // scalar multiples, including negatives
  auto p = CurvePoint<Rational>::affine(Rational(-1), Rational(2));
  CHECK(inst.mul(p, 2) == inst.w1());
  CHECK(inst.mul(p, -1) == inst.negate(p));
  CHECK(inst.mul(p, 0) == inst.w_infinity());
  CHECK(inst.add(inst.mul(p, 3), inst.mul(p, -3)) == inst.w_infinity());
  // the marked pair doubles to the same 2-torsion point
  CHECK(inst.mul(inst.t1(), 2) == inst.w1());
  CHECK(inst.mul(inst.t2(), 2) == inst.w1());
}

TEST_CASE("local charts satisfy the curve equation") {
  auto inst = reference_instance();
  for (const auto& p : rational_points(inst)) {
    auto ch = make_chart(inst, p, 12);
    auto fx = eval_poly_on_series(inst.cubic(), ch.x);
    auto diff = ch.y * ch.y - fx;
    CHECK(diff.is_zero_to_prec());
    if (p.is_infinity()) {
      // the local parameter is x/y
      auto ratio = ch.x * ch.y.inverse();
      CHECK(ratio.valuation() == 1);
      CHECK(ratio.coeff(1) == Rational(1));
      CHECK(ratio.coeff(2) == Rational(0));
    }
  }
}

TEST_CASE("function field arithmetic") {
  auto inst = reference_instance();
  CE y = CE::y_function();
  CE x = CE::x_function();
  CE y2 = mul(inst, y, y);
  CHECK(y2.a == RQ(inst.cubic()));
  CHECK(y2.b.is_zero());

  CE inv_y = inverse(inst, y);
  CHECK(inv_y.a.is_zero());
  CHECK(inv_y.b == RQ(PQ::constant(Rational(1))) / RQ(inst.cubic()));
  CHECK(mul(inst, y, inv_y) == CE::one());

  CE prod = mul(inst, x + y, x - y);
  CHECK(prod.b.is_zero());
  CHECK(prod.a == RQ::variable() * RQ::variable() - RQ(inst.cubic()));

  CHECK_THROWS_AS(div(inst, x, CE::zero()), DomainError);
}

TEST_CASE("valuations at the standard chart types") {
  auto inst = reference_instance();
  CE x = CE::x_function();
  CE y = CE::y_function();
  CHECK(valuation(inst, x, inst.w_infinity()) == -2);
  CHECK(valuation(inst, y, inst.w_infinity()) == -3);
  CHECK(valuation(inst, x, inst.w0()) == 2);
  CE xt = CE::from_ratfunc(RQ(PQ{-inst.t(), Rational(1)}));
  CHECK(valuation(inst, xt, inst.t1()) == 1);
}

TEST_CASE("local series oracle values") {
  auto inst = reference_instance();
  CE x = CE::x_function();
  CE y = CE::y_function();
  CE inv_xt = inverse(inst, CE::from_ratfunc(RQ(PQ{-inst.t(), Rational(1)})));

  auto s1 = local_series(inst, inv_xt, inst.t1(), 0);
  CHECK(s1.coeff(-1) == Rational(1));

  auto s2 = local_series(inst, y, inst.t1(), 1);
  CHECK(s2.coeff(0) == Rational(6));

  // x = y^2/((x-1)(x-lambda)) near w0; leading coefficient 1/((0-1)(0-lambda))
  auto s3 = local_series(inst, x, inst.w0(), 3);
  CHECK(s3.valuation() == 2);
  CHECK(s3.coeff(2) == Rational(-1, 3));
  CHECK(s3.coeff(3) == Rational(0));
}

TEST_CASE("series multiplication agrees with product expansion") {
  auto inst = reference_instance();
  SampleRng rng(kSeedCurve);
  auto pts = rational_points(inst);
  CE x = CE::x_function();
  CE y = CE::y_function();
  for (int i = 0; i < 10; ++i) {
    CE g = CE::from_ratfunc(RQ(PQ{rng.nonzero_rational(), rng.rational(), Rational(1)})) + y;
    CE h = x + CE::from_ratfunc(RQ(PQ::constant(rng.nonzero_rational())));
    const auto& p = pts[static_cast<size_t>(rng.integer(0, static_cast<long>(pts.size()) - 1))];
    auto sg = local_series(inst, g, p, 4);
    auto sh = local_series(inst, h, p, 4);
    auto sgh = local_series(inst, mul(inst, g, h), p, 3);
    auto prod = sg * sh;
    for (int k = sgh.valuation(); k <= 3 && k < prod.prec(); ++k)
      CHECK(prod.coeff(k) == sgh.coeff(k));
  }
}

TEST_CASE("valuations agree with a deep series expansion") {
  // Cross-check the bounded search in valuation() against series developed
  // far beyond the bound.
  auto inst = reference_instance();
  SampleRng rng(kSeedCurve);
  auto pts = rational_points(inst);
  for (int i = 0; i < 12; ++i) {
    // elements engineered to cancel at the sample point
    const auto& p = pts[static_cast<size_t>(rng.integer(1, static_cast<long>(pts.size()) - 1))];
    if (p.is_infinity() || p.is_two_torsion_affine()) continue;
    // g = (y - y0) - s (x - x0) vanishes at p to order >= 2 when s is the
    // tangent slope f'(x0)/(2 y0).
    Rational slope = inst.cubic().derivative().eval(p.x()) / (Rational(2) * p.y());
    CE g = CE(RQ(PQ{-p.y() + slope * p.x(), -slope}), RQ(PQ::constant(Rational(1))));
    int v = valuation(inst, g, p);
    auto deep = local_series(inst, g, p, v + 6);
    CHECK(deep.valuation() == v);
    CHECK(v >= 2);
  }
}

TEST_CASE("principal divisors") {
  auto inst = reference_instance();
  CE xt = CE::from_ratfunc(RQ(PQ{-inst.t(), Rational(1)}));
  auto d1 = divisor_of(inst, xt);
  CHECK(d1.degree() == 0);
  CHECK(d1.multiplicity(inst.t1()) == 1);
  CHECK(d1.multiplicity(inst.t2()) == 1);
  CHECK(d1.multiplicity(inst.w_infinity()) == -2);

  auto d2 = divisor_of(inst, CE::y_function());
  CHECK(d2.degree() == 0);
  CHECK(d2.multiplicity(inst.w0()) == 1);
  CHECK(d2.multiplicity(inst.w1()) == 1);
  CHECK(d2.multiplicity(inst.w_lambda()) == 1);
  CHECK(d2.multiplicity(inst.w_infinity()) == -3);

  CHECK(divisor_of(inst, CE::one()).is_zero());
  CHECK_THROWS_AS(divisor_of(inst, CE::zero()), DomainError);
}

TEST_CASE("divisors of random supported elements have degree zero") {
  auto inst = reference_instance();
  SampleRng rng(kSeedCurve);
  // factors with fully rational loci: x, x-1, x+3, x-t, x+1, y
  std::vector<CE> gens{CE::x_function(),
                       CE::from_ratfunc(RQ(PQ{Rational(-1), Rational(1)})),
                       CE::from_ratfunc(RQ(PQ{Rational(3), Rational(1)})),
                       CE::from_ratfunc(RQ(PQ{Rational(-3), Rational(1)})),
                       CE::from_ratfunc(RQ(PQ{Rational(1), Rational(1)})),
                       CE::y_function()};
  auto pts = rational_points(inst);
  for (int trial = 0; trial < 15; ++trial) {
    CE g = CE::one();
    CE h = CE::one();
    for (int k = 0; k < 3; ++k) {
      const CE& pick = gens[static_cast<size_t>(rng.integer(0, 5))];
      if (rng.integer(0, 1))
        g = mul(inst, g, pick);
      else
        h = mul(inst, h, pick);
    }
    CE q = div(inst, g, h);
    CHECK(divisor_of(inst, q).degree() == 0);
    // valuations are additive
    const auto& p = pts[static_cast<size_t>(rng.integer(0, static_cast<long>(pts.size()) - 1))];
    CHECK(valuation(inst, mul(inst, g, h), p) ==
          valuation(inst, g, p) + valuation(inst, h, p));
  }
}

TEST_CASE("divisor blocks cover non-rational loci") {
  auto inst = reference_instance();
  // x - 2 splits in x but f(2) = 10 is not a square: conjugate pair block.
  CE g = CE::from_ratfunc(RQ(PQ{Rational(-2), Rational(1)}));
  auto d = divisor_of(inst, g);
  CHECK(d.has_blocks());
  CHECK(d.degree() == 0);
  CHECK(d.multiplicity(inst.w_infinity()) == -2);
  // x^2 - 5 has no rational roots at all.
  CE h = CE::from_ratfunc(RQ(PQ{Rational(-5), Rational(0), Rational(1)}));
  auto dh = divisor_of(inst, h);
  CHECK(dh.has_blocks());
  CHECK(dh.degree() == 0);
}

TEST_CASE("linear equivalence and h0") {
  auto inst = reference_instance();
  Divisor<Rational> torsion;
  torsion.add(inst.w0(), 1);
  torsion.add(inst.w1(), 1);
  torsion.add(inst.w_lambda(), 1);
  Divisor<Rational> three_inf = Divisor<Rational>::single(inst.w_infinity(), 3);
  CHECK(linear_equiv(inst, torsion, three_inf));

  Divisor<Rational> d;
  d.add(inst.w_infinity(), 1);
  d.add(inst.t1(), 1);
  d.add(inst.t2(), 1);
  CHECK(h0(inst, class_of(inst, d)) == 3);

  Divisor<Rational> e;
  e.add(inst.w_infinity(), 1);
  e.add(inst.t1(), -1);
  CHECK(h0(inst, class_of(inst, e)) == 0);
  CHECK(h0(inst, DivisorClass<Rational>{0, inst.w_infinity()}) == 1);
}

TEST_CASE("linear system membership") {
  auto inst = reference_instance();
  Divisor<Rational> d;
  d.add(inst.w_infinity(), 1);
  d.add(inst.t1(), 1);
  d.add(inst.t2(), 1);
  CE inv_xt = inverse(inst, CE::from_ratfunc(RQ(PQ{-inst.t(), Rational(1)})));
  CHECK(in_linear_system(inst, inv_xt, d));
  CE y_over_xt = mul(inst, CE::y_function(), inv_xt);
  CHECK(in_linear_system(inst, y_over_xt, d));
  Divisor<Rational> just_marked;
  just_marked.add(inst.t1(), 1);
  just_marked.add(inst.t2(), 1);
  CHECK(!in_linear_system(inst, CE::x_function(), just_marked));
}

TEST_CASE("the polar basis spans L(D') and satisfies the residue theorem") {
  auto inst = reference_instance();
  auto basis = dprime_basis(inst);
  Divisor<Rational> dprime = family_polar(inst);
  for (const auto& g : basis) CHECK(in_linear_system(inst, g, dprime));

  SampleRng rng(kSeedConservation);
  std::vector<CurvePoint<Rational>> poles{inst.w0(), inst.w1(), inst.w_lambda(), inst.t1(),
                                          inst.t2()};
  for (int trial = 0; trial < 50; ++trial) {
    CE g = CE::zero();
    for (const auto& b : basis) g = g + rng.rational() * b;
    if (g.is_zero()) continue;
    Rational sum(0);
    for (const auto& p : poles) sum += scalar_residue(inst, g, p);
    CHECK(sum == Rational(0));
  }
}
