#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ellconn/divisor.hpp"
#include "ellconn/linalg.hpp"

namespace ellconn {

/// Bookkeeping for local exponents (nu+, nu-) per pole together with the
/// degree and class of the underlying determinant bundle. The Fuchs relation
/// deg + sum(nu+ + nu-) = 0 holds for ledgers of actual connections.
template <class K>
struct ExponentLedger {
  std::vector<std::pair<CurvePoint<K>, std::pair<K, K>>> exponents;
  int bundle_degree = 0;
  DivisorClass<K> bundle_class;

  const std::pair<K, K>* find(const CurvePoint<K>& p) const {
    for (const auto& [q, nu] : exponents)
      if (q == p) return &nu;
    return nullptr;
  }
  void set(const CurvePoint<K>& p, const K& plus, const K& minus) {
    for (auto& [q, nu] : exponents) {
      if (q == p) {
        nu = {plus, minus};
        return;
      }
    }
    exponents.push_back({p, {plus, minus}});
  }

  K exponent_sum() const {
    K s = field_zero<K>();
    for (const auto& [p, nu] : exponents) s = s + nu.first + nu.second;
    return s;
  }
};

/// Rank-one logarithmic connection, reduced to its discrete data: bundle
/// class and residues. deg(cls) + sum(residues) = 0 when consistent.
template <class K>
struct RankOneConnection {
  DivisorClass<K> cls;
  std::vector<std::pair<CurvePoint<K>, K>> residues;

  K residue_at(const CurvePoint<K>& p) const {
    for (const auto& [q, r] : residues)
      if (q == p) return r;
    return field_zero<K>();
  }
  K residue_sum() const {
    K s = field_zero<K>();
    for (const auto& [p, r] : residues) s = s + r;
    return s;
  }
};

/// Logarithmic sl2 connection d + A dx/y on the trivial rank-2 bundle; A has
/// entries in L(polar).
template <class K>
struct LogConnection {
  Mat2<CurveElement<K>> mat;
  Divisor<K> polar;
  ExponentLedger<K> ledger;
};

/// Principal and constant part of the connection matrix 1-form at a point,
/// in the canonical local parameter.
template <class K>
struct ResidueData {
  Mat2<K> principal;  // residue matrix
  Mat2<K> constant;   // next coefficient
};

template <class K>
ResidueData<K> residue_data(const CurveInstance<K>& inst, const LogConnection<K>& conn,
                            const CurvePoint<K>& p) {
  int prec_needed = 2;  // exponents -2..1 resolved below
  for (const auto* e : {&conn.mat.a, &conn.mat.b, &conn.mat.c, &conn.mat.d})
    prec_needed = std::max(prec_needed, chart_precision_for(*e, 1));
  LocalChart<K> ch = make_chart(inst, p, prec_needed);
  LaurentSeries<K> form = one_form_factor(ch);
  ResidueData<K> out;
  auto extract = [&](const CurveElement<K>& entry, K& res, K& cst) {
    if (entry.is_zero()) {
      res = field_zero<K>();
      cst = field_zero<K>();
      return;
    }
    LaurentSeries<K> s = eval_on_chart(ch, entry) * form;
    if (!s.is_zero_to_prec() && s.valuation() < -1)
      throw DomainError("residue: pole of order >= 2, not logarithmic");
    res = s.coeff(-1);
    cst = s.coeff(0);
  };
  extract(conn.mat.a, out.principal.a, out.constant.a);
  extract(conn.mat.b, out.principal.b, out.constant.b);
  extract(conn.mat.c, out.principal.c, out.constant.c);
  extract(conn.mat.d, out.principal.d, out.constant.d);
  return out;
}

/// Exact eigenpairs of a 2x2 residue matrix with distinct eigenvalues in K.
template <class K>
struct EigenPair {
  K value;
  ProjDir<K> direction;
};

template <class K>
std::pair<EigenPair<K>, EigenPair<K>> eigen(const Mat2<K>& m) {
  K tr = m.trace();
  K det = m.det();
  const K four = FieldTraits<K>::from_long(4);
  K disc = tr * tr - four * det;
  if (FieldTraits<K>::is_zero(disc)) throw DomainError("eigen: non-generic residue");
  auto root = FieldTraits<K>::sqrt(disc);
  if (!root) throw DomainError("eigen: eigenvalues outside field");
  const K two = FieldTraits<K>::from_long(2);
  K l1 = (tr + *root) / two;
  K l2 = (tr - *root) / two;
  // Row (a - lam, b) of m - lam*id gives the kernel direction (-b, a - lam)
  // when nonzero; otherwise the second row does.
  auto kernel_dir = [&](const K& lam) {
    K a = m.a - lam, b = m.b;
    if (!FieldTraits<K>::is_zero(a) || !FieldTraits<K>::is_zero(b)) return ProjDir<K>(-b, a);
    return ProjDir<K>(-(m.d - lam), m.c);
  };
  return {EigenPair<K>{l1, kernel_dir(l1)}, EigenPair<K>{l2, kernel_dir(l2)}};
}

/// Apparent-singularity test at a point with residue data `rd` and candidate
/// direction p: (principal - 1/2 id) p = 0 and (constant * p) parallel to p.
template <class K>
bool is_apparent(const ResidueData<K>& rd, const ProjDir<K>& p) {
  const K half = field_one<K>() / FieldTraits<K>::from_long(2);
  Vec2<K> v = rd.principal * p.vec();
  if (!(v.x == half * p.u() && v.y == half * p.v())) return false;
  return maps_direction_to_itself(rd.constant, p);
}

namespace detail {

/// A' = G A G^{-1} - y G_x G^{-1}, returned without polar recomputation.
template <class K>
Mat2<CurveElement<K>> gauge_matrix(const CurveInstance<K>& inst,
                                   const Mat2<CurveElement<K>>& a,
                                   const Mat2<CurveElement<K>>& g) {
  CurveElement<K> det = mul(inst, g.a, g.d) - mul(inst, g.b, g.c);
  if (det.is_zero()) throw DomainError("gauge: non-invertible matrix");
  CurveElement<K> inv_det = inverse(inst, det);
  Mat2<CurveElement<K>> ginv{mul(inst, g.d, inv_det), mul(inst, -g.b, inv_det),
                             mul(inst, -g.c, inv_det), mul(inst, g.a, inv_det)};
  auto mat_mul = [&](const Mat2<CurveElement<K>>& m, const Mat2<CurveElement<K>>& n) {
    return Mat2<CurveElement<K>>{
        mul(inst, m.a, n.a) + mul(inst, m.b, n.c), mul(inst, m.a, n.b) + mul(inst, m.b, n.d),
        mul(inst, m.c, n.a) + mul(inst, m.d, n.c), mul(inst, m.c, n.b) + mul(inst, m.d, n.d)};
  };
  Mat2<CurveElement<K>> conj = mat_mul(mat_mul(g, a), ginv);
  CurveElement<K> y = CurveElement<K>::y_function();
  Mat2<CurveElement<K>> gx{x_derivative(inst, g.a), x_derivative(inst, g.b),
                           x_derivative(inst, g.c), x_derivative(inst, g.d)};
  Mat2<CurveElement<K>> ygx{mul(inst, y, gx.a), mul(inst, y, gx.b), mul(inst, y, gx.c),
                            mul(inst, y, gx.d)};
  Mat2<CurveElement<K>> der = mat_mul(ygx, ginv);
  return conj - der;
}

inline Divisor<Rational> polar_of_matrix(const CurveInstance<Rational>& inst,
                                         const Mat2<CurveElement<Rational>>& m) {
  Divisor<Rational> polar;
  for (const auto* e : {&m.a, &m.b, &m.c, &m.d}) {
    if (e->is_zero()) continue;
    Divisor<Rational> pd = pole_divisor(inst, *e);
    for (const auto& [p, mult] : pd.points)
      if (mult > polar.multiplicity(p)) polar.add(p, mult - polar.multiplicity(p));
  }
  return polar;
}

}  // namespace detail

/// Solution-side gauge transformation: horizontal frames Y map to GY and the
/// matrix becomes G A G^{-1} - y G_x G^{-1} (as a dx/y coefficient).
inline LogConnection<Rational> gauge(const CurveInstance<Rational>& inst,
                                     const LogConnection<Rational>& conn,
                                     const Mat2<CurveElement<Rational>>& g) {
  LogConnection<Rational> out;
  out.mat = detail::gauge_matrix(inst, conn.mat, g);
  out.polar = detail::polar_of_matrix(inst, out.mat);
  out.ledger = conn.ledger;
  return out;
}

template <class K>
CurveElement<K> trace_form(const LogConnection<K>& conn) {
  return conn.mat.a + conn.mat.d;
}

template <class K>
bool fuchs_check(const ExponentLedger<K>& ledger) {
  return FieldTraits<K>::is_zero(FieldTraits<K>::from_long(ledger.bundle_degree) +
                                 ledger.exponent_sum());
}

template <class K>
bool fuchs_check(const RankOneConnection<K>& conn) {
  return FieldTraits<K>::is_zero(FieldTraits<K>::from_long(conn.cls.degree) +
                                 conn.residue_sum());
}

/// Tensor by a rank-one connection: shifts each exponent pair by the residue
/// and the determinant data by twice the class (rank 2).
template <class K>
ExponentLedger<K> twist_ledger(const CurveInstance<K>& inst, const ExponentLedger<K>& ledger,
                               const RankOneConnection<K>& xi) {
  ExponentLedger<K> out = ledger;
  for (auto& [p, nu] : out.exponents) {
    K res = xi.residue_at(p);
    nu.first = nu.first + res;
    nu.second = nu.second + res;
  }
  // A pole of xi away from the ledger becomes a new scalar pole (res, res).
  for (const auto& [p, res] : xi.residues) {
    if (!out.find(p) && !FieldTraits<K>::is_zero(res)) out.set(p, res, res);
  }
  out.bundle_degree += 2 * xi.cls.degree;
  out.bundle_class = class_add(inst, out.bundle_class, class_scale(inst, xi.cls, 2));
  return out;
}

enum class ElmSign { Plus, Minus };

template <class K>
struct ElmResult {
  LogConnection<K> conn;
  ProjDir<K> new_direction;
};

/// Elementary transformation at (p, dir): conjugate dir to (1:0), apply the
/// meromorphic diagonal gauge, conjugate back. Ledger rule at p:
///   elm-: (nu+, nu-) -> (nu- + 1, nu+), det class shifted by -[p];
///   elm+: (nu+, nu-) -> (nu-, nu+ - 1), det class shifted by +[p].
inline ElmResult<Rational> elm(const CurveInstance<Rational>& inst,
                               const LogConnection<Rational>& conn,
                               const CurvePoint<Rational>& p, const ProjDir<Rational>& dir,
                               ElmSign sign) {
  if (p.is_infinity()) throw DomainError("elm: center must be affine");
  using CE = CurveElement<Rational>;
  const Rational one(1), zero(0);
  // Constant conjugation sending dir to (1:0).
  Mat2<Rational> c0, c0inv;
  if (!dir.is_vertical()) {
    Rational s = dir.slope();
    c0 = {one, zero, -s, one};  // maps (1, s) to (1, 0)
    c0inv = {one, zero, s, one};
  } else {
    c0 = {zero, one, one, zero};
    c0inv = c0;
  }
  auto lift = [](const Mat2<Rational>& m) {
    auto e = [](const Rational& v) { return CE::from_ratfunc(RatFunc<Rational>::constant(v)); };
    return Mat2<CE>{e(m.a), e(m.b), e(m.c), e(m.d)};
  };
  // Local uniformizer at p: x - x0 off 2-torsion, (x - x0)/y at 2-torsion
  // (where x - x0 vanishes doubly). Its other zeros and poles are where the
  // trivialized picture absorbs the determinant twist.
  CE uniformizer = CE::from_ratfunc(RatFunc<Rational>(Poly<Rational>{-p.x(), one}));
  if (p.is_two_torsion_affine()) uniformizer = div(inst, uniformizer, CE::y_function());
  Mat2<CE> d;
  if (sign == ElmSign::Plus) {
    d = {uniformizer, CE::zero(), CE::zero(), CE::one()};
  } else {
    d = {CE::one(), CE::zero(), CE::zero(), inverse(inst, uniformizer)};
  }
  auto mat_mul = [&](const Mat2<CE>& m, const Mat2<CE>& n) {
    return Mat2<CE>{mul(inst, m.a, n.a) + mul(inst, m.b, n.c), mul(inst, m.a, n.b) + mul(inst, m.b, n.d),
                    mul(inst, m.c, n.a) + mul(inst, m.d, n.c), mul(inst, m.c, n.b) + mul(inst, m.d, n.d)};
  };
  Mat2<CE> g = mat_mul(lift(c0inv), mat_mul(d, lift(c0)));
  ElmResult<Rational> out;
  out.conn.mat = detail::gauge_matrix(inst, conn.mat, g);
  out.conn.polar = detail::polar_of_matrix(inst, out.conn.mat);
  out.conn.ledger = conn.ledger;
  // New distinguished direction: the (0:1) slot of the normal form carried
  // back through the conjugation.
  out.new_direction = ProjDir<Rational>(c0inv.b, c0inv.d);
  // Ledger update at p.
  if (const auto* nu = out.conn.ledger.find(p)) {
    auto [plus, minus] = *nu;
    if (sign == ElmSign::Minus)
      out.conn.ledger.set(p, minus + one, plus);
    else
      out.conn.ledger.set(p, minus, plus - one);
  }
  int shift = sign == ElmSign::Plus ? 1 : -1;
  out.conn.ledger.bundle_degree += shift;
  out.conn.ledger.bundle_class =
      class_add(inst, out.conn.ledger.bundle_class,
                DivisorClass<Rational>{shift, shift > 0 ? p : inst.negate(p)});
  return out;
}

}  // namespace ellconn
