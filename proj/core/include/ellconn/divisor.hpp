#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellconn/series.hpp"

namespace ellconn {

/// Formal integer combination of curve points, plus aggregate "blocks" for
/// loci whose points are not rational: a block records a monic factor q(x)
/// and the summed valuation over all points above its roots.
template <class K>
struct Divisor {
  struct Block {
    Poly<K> factor;
    int total;
  };

  std::vector<std::pair<CurvePoint<K>, int>> points;
  std::vector<Block> blocks;

  static Divisor single(const CurvePoint<K>& p, int mult = 1) {
    Divisor d;
    if (mult != 0) d.points.push_back({p, mult});
    return d;
  }

  int degree() const {
    int deg = 0;
    for (const auto& [p, m] : points) deg += m;
    for (const auto& b : blocks) deg += b.total;
    return deg;
  }

  int multiplicity(const CurvePoint<K>& p) const {
    for (const auto& [q, m] : points)
      if (q == p) return m;
    return 0;
  }

  bool has_blocks() const { return !blocks.empty(); }
  bool is_zero() const { return points.empty() && blocks.empty(); }

  void add(const CurvePoint<K>& p, int mult) {
    if (mult == 0) return;
    for (size_t i = 0; i < points.size(); ++i) {
      if (points[i].first == p) {
        points[i].second += mult;
        if (points[i].second == 0) points.erase(points.begin() + static_cast<long>(i));
        return;
      }
    }
    points.push_back({p, mult});
  }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (const auto& [p, m] : b.points) r.add(p, m);
    for (const auto& blk : b.blocks) r.blocks.push_back(blk);
    return r;
  }
  Divisor operator-() const {
    Divisor r = *this;
    for (auto& [p, m] : r.points) m = -m;
    for (auto& b : r.blocks) b.total = -b.total;
    return r;
  }
  friend Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }

  bool is_effective() const {
    for (const auto& [p, m] : points)
      if (m < 0) return false;
    for (const auto& b : blocks)
      if (b.total < 0) return false;
    return true;
  }
};

/// Divisor class on a genus-one curve: (degree, group-law sum of the points)
/// with w_infinity as origin; two divisors are linearly equivalent iff their
/// classes coincide.
template <class K>
struct DivisorClass {
  int degree = 0;
  CurvePoint<K> sum = CurvePoint<K>::infinity();

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.degree == b.degree && a.sum == b.sum;
  }
  friend bool operator!=(const DivisorClass& a, const DivisorClass& b) { return !(a == b); }
};

template <class K>
DivisorClass<K> class_of(const CurveInstance<K>& inst, const Divisor<K>& d) {
  if (d.has_blocks()) throw DomainError("divisor class: unsupported locus (non-rational block)");
  DivisorClass<K> c;
  c.degree = d.degree();
  CurvePoint<K> s = CurvePoint<K>::infinity();
  for (const auto& [p, m] : d.points) s = inst.add(s, inst.mul(p, m));
  c.sum = s;
  return c;
}

template <class K>
DivisorClass<K> class_add(const CurveInstance<K>& inst, const DivisorClass<K>& a,
                          const DivisorClass<K>& b) {
  return {a.degree + b.degree, inst.add(a.sum, b.sum)};
}
template <class K>
DivisorClass<K> class_sub(const CurveInstance<K>& inst, const DivisorClass<K>& a,
                          const DivisorClass<K>& b) {
  return {a.degree - b.degree, inst.add(a.sum, inst.negate(b.sum))};
}
template <class K>
DivisorClass<K> class_scale(const CurveInstance<K>& inst, const DivisorClass<K>& a, long n) {
  return {static_cast<int>(n) * a.degree, inst.mul(a.sum, n)};
}

template <class K>
bool linear_equiv(const CurveInstance<K>& inst, const Divisor<K>& d1, const Divisor<K>& d2) {
  return class_of(inst, d1) == class_of(inst, d2);
}

/// Genus-one Riemann-Roch: h0 = deg for deg > 0; 1 for the trivial degree-0
/// class; 0 otherwise.
template <class K>
int h0(const CurveInstance<K>& inst, const DivisorClass<K>& cls) {
  if (cls.degree > 0) return cls.degree;
  if (cls.degree == 0 && cls.sum == inst.w_infinity()) return 1;
  return 0;
}

/// Order of vanishing of g at p in the canonical local parameter (x-x0 at
/// generic affine points, y at 2-torsion, x/y at infinity).
template <class K>
int valuation(const CurveInstance<K>& inst, const CurveElement<K>& g, const CurvePoint<K>& p) {
  if (g.is_zero()) throw DomainError("valuation: zero function");
  if (!inst.on_curve(p)) throw DomainError("valuation: point not on curve");
  constexpr int kInf = INT_MAX;
  if (p.is_infinity()) {
    // ord(x) = -2 and ord(y) = -3: the parts have opposite parity.
    int va = g.a.is_zero() ? kInf : -2 * g.a.degree();
    int vb = g.b.is_zero() ? kInf : -2 * g.b.degree() - 3;
    return std::min(va, vb);
  }
  if (p.is_two_torsion_affine()) {
    // ord(x - x0) = 2 and ord(y) = 1: parity separates the parts again.
    int va = g.a.is_zero() ? kInf : 2 * g.a.order_at(p.x());
    int vb = g.b.is_zero() ? kInf : 2 * g.b.order_at(p.x()) + 1;
    return std::min(va, vb);
  }
  int lb = kInf;
  if (!g.a.is_zero()) lb = std::min(lb, g.a.order_at(p.x()));
  if (!g.b.is_zero()) lb = std::min(lb, g.b.order_at(p.x()));
  // val(g) + val(conj g) = ord(norm) and val(conj g) >= lb bound the search.
  int vn = norm(inst, g).order_at(p.x());
  int ub = vn - lb;
  return local_series(inst, g, p, ub).valuation();
}

// ---------------------------------------------------------------------------
// Rational root extraction (Q instances)

struct RootSplit {
  std::vector<std::pair<Rational, int>> roots;  // (root, multiplicity)
  Poly<Rational> remainder;                     // monic, no rational roots
};

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  if (n == 0) throw DomainError("roots: divisor enumeration of zero");
  std::vector<std::pair<mpz_class, int>> fact;
  auto push = [&](const mpz_class& p, int e) { fact.push_back({p, e}); };
  mpz_class m = n;
  for (long p = 2; p <= 1000000 && m > 1; p = (p == 2 ? 3 : p + 2)) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      push(mpz_class(p), e);
    }
    mpz_class pp(p);
    if (pp * pp > m) break;
  }
  if (m > 1) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) == 0)
      throw DomainError("roots: cannot factor coefficient " + m.get_str());
    push(m, 1);
  }
  std::vector<mpz_class> divs{mpz_class(1)};
  for (const auto& [p, e] : fact) {
    size_t sz = divs.size();
    mpz_class pk(1);
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace detail

/// Splits off all rational roots (with multiplicity); the remainder is monic
/// with no rational root.
inline RootSplit rational_roots(const Poly<Rational>& input) {
  if (input.is_zero()) throw DomainError("roots: zero polynomial");
  RootSplit out;
  Poly<Rational> p = input.monic();
  // Strip x^k.
  int zero_mult = 0;
  while (!p.is_zero() && p.coeff(0).is_zero() && p.degree() > 0) {
    p = Poly<Rational>::divmod(p, Poly<Rational>::variable()).first;
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.push_back({Rational(0), zero_mult});
  if (p.degree() <= 0) {
    out.remainder = Poly<Rational>::constant(Rational(1));
    return out;
  }
  // Integerize: common denominator then content.
  mpz_class den_lcm(1);
  for (const auto& c : p.coeffs()) {
    mpz_class d = c.raw().get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  std::vector<mpz_class> zc;
  zc.reserve(static_cast<size_t>(p.degree()) + 1);
  mpz_class content(0);
  for (int i = 0; i <= p.degree(); ++i) {
    mpq_class scaled = p.coeff(i).raw() * mpq_class(den_lcm);
    zc.push_back(scaled.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), zc.back().get_mpz_t());
  }
  for (auto& c : zc) c /= content;
  // Candidates num/den with num | constant term, den | leading coefficient.
  size_t lo = 0;
  while (zc[lo] == 0) ++lo;  // zero roots already stripped; defensive
  std::vector<mpz_class> nums = detail::positive_divisors(zc[lo]);
  std::vector<mpz_class> dens = detail::positive_divisors(zc.back());
  Poly<Rational> rem = p;
  for (const auto& nu : nums) {
    for (const auto& de : dens) {
      for (int sign : {1, -1}) {
        if (rem.degree() <= 0) break;
        Rational cand(mpq_class(sign * nu, de));
        int mult = 0;
        while (rem.degree() > 0 && rem.eval(cand).is_zero()) {
          rem = Poly<Rational>::divmod(rem, Poly<Rational>{-cand, Rational(1)}).first;
          ++mult;
        }
        if (mult > 0) out.roots.push_back({cand, mult});
      }
    }
  }
  out.remainder = rem.monic();
  return out;
}

/// Squarefree split of a monic polynomial: list of (factor, multiplicity).
inline std::vector<std::pair<Poly<Rational>, int>> squarefree_parts(Poly<Rational> p) {
  std::vector<std::pair<Poly<Rational>, int>> out;
  p = p.monic();
  int shift = 0;
  while (p.degree() > 0) {
    Poly<Rational> g = Poly<Rational>::gcd(p, p.derivative());
    Poly<Rational> sqfree = p / g;  // product of distinct factors of p
    // factors of multiplicity exactly shift+1 are sqfree / gcd(sqfree, g)
    Poly<Rational> exact = sqfree / Poly<Rational>::gcd(sqfree, g);
    if (exact.degree() > 0) out.push_back({exact, shift + 1});
    p = g;
    ++shift;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Divisors of function-field elements (Q instances)

namespace detail {

enum class FiberKind { TwoTorsion, Split, NonSplit };

struct FiberInfo {
  FiberKind kind;
  Rational y0;  // for Split
};

inline FiberInfo classify_fiber(const CurveInstance<Rational>& inst, const Rational& x0) {
  Rational fx = inst.cubic_at(x0);
  if (fx.is_zero()) return {FiberKind::TwoTorsion, Rational(0)};
  auto root = fx.sqrt();
  if (root) return {FiberKind::Split, *root};
  return {FiberKind::NonSplit, Rational(0)};
}

}  // namespace detail

/// Principal divisor of g. Rational loci are split into points; loci without
/// rational points are reported as aggregate blocks. Total degree is zero.
inline Divisor<Rational> divisor_of(const CurveInstance<Rational>& inst,
                                    const CurveElement<Rational>& g) {
  if (g.is_zero()) throw DomainError("divisor: zero function");
  Divisor<Rational> div;
  RatFunc<Rational> nm = norm(inst, g);

  // Candidate affine x-loci: roots of the norm and of component denominators.
  std::vector<Rational> xs;
  auto add_roots = [&xs](const Poly<Rational>& p) {
    if (p.degree() <= 0) return Poly<Rational>::constant(Rational(1));
    RootSplit rs = rational_roots(p);
    for (const auto& [r, m] : rs.roots) {
      (void)m;
      if (std::find(xs.begin(), xs.end(), r) == xs.end()) xs.push_back(r);
    }
    return rs.remainder;
  };
  Poly<Rational> norm_num_rem = add_roots(nm.num());
  Poly<Rational> norm_den_rem = add_roots(nm.den());
  add_roots(g.a.den());
  add_roots(g.b.den());

  for (const auto& x0 : xs) {
    auto info = detail::classify_fiber(inst, x0);
    switch (info.kind) {
      case detail::FiberKind::TwoTorsion: {
        CurvePoint<Rational> p = CurvePoint<Rational>::affine(x0, Rational(0));
        div.add(p, valuation(inst, g, p));
        break;
      }
      case detail::FiberKind::Split: {
        CurvePoint<Rational> pp = CurvePoint<Rational>::affine(x0, info.y0);
        CurvePoint<Rational> pm = CurvePoint<Rational>::affine(x0, -info.y0);
        int vp = valuation(inst, g, pp);
        int vm = valuation(inst, g, pm);
        if (vp + vm != nm.order_at(x0))
          throw CheckError("divisor: sheet valuations disagree with norm order");
        div.add(pp, vp);
        div.add(pm, vm);
        break;
      }
      case detail::FiberKind::NonSplit: {
        int total = nm.order_at(x0);
        if (total != 0)
          div.blocks.push_back({Poly<Rational>{-x0, Rational(1)}, total});
        break;
      }
    }
  }
  // Non-rational factors of the norm contribute aggregate blocks.
  for (int side = 0; side < 2; ++side) {
    const Poly<Rational>& rem = side == 0 ? norm_num_rem : norm_den_rem;
    if (rem.degree() <= 0) continue;
    for (const auto& [factor, mult] : squarefree_parts(rem)) {
      int total = (side == 0 ? 1 : -1) * mult * factor.degree();
      div.blocks.push_back({factor, total});
    }
  }
  // Infinity.
  int vinf = valuation(inst, g, inst.w_infinity());
  div.add(inst.w_infinity(), vinf);
  return div;
}

/// Minimal effective divisor E with div(g) + E >= 0. Requires the pole loci
/// of g to be rational; otherwise reports the offending factor.
inline Divisor<Rational> pole_divisor(const CurveInstance<Rational>& inst,
                                      const CurveElement<Rational>& g) {
  if (g.is_zero()) return Divisor<Rational>{};
  Divisor<Rational> div;
  std::vector<Rational> xs;
  for (const Poly<Rational>* den : {&g.a.den(), &g.b.den()}) {
    if (den->degree() <= 0) continue;
    RootSplit rs = rational_roots(*den);
    for (const auto& [r, m] : rs.roots) {
      (void)m;
      if (std::find(xs.begin(), xs.end(), r) == xs.end()) xs.push_back(r);
    }
    if (rs.remainder.degree() > 0)
      throw DomainError("poles: unsupported locus, no rational point over factor of degree " +
                        std::to_string(rs.remainder.degree()));
  }
  for (const auto& x0 : xs) {
    auto info = detail::classify_fiber(inst, x0);
    switch (info.kind) {
      case detail::FiberKind::TwoTorsion: {
        CurvePoint<Rational> p = CurvePoint<Rational>::affine(x0, Rational(0));
        int v = valuation(inst, g, p);
        if (v < 0) div.add(p, -v);
        break;
      }
      case detail::FiberKind::Split: {
        for (const auto& yy : {info.y0, -info.y0}) {
          CurvePoint<Rational> p = CurvePoint<Rational>::affine(x0, yy);
          int v = valuation(inst, g, p);
          if (v < 0) div.add(p, -v);
        }
        break;
      }
      case detail::FiberKind::NonSplit:
        throw DomainError("poles: unsupported locus, conjugate pair over x = " + x0.str());
    }
  }
  int vinf = valuation(inst, g, inst.w_infinity());
  if (vinf < 0) div.add(inst.w_infinity(), -vinf);
  return div;
}

/// True iff div(g) + d >= 0 (d supported on rational points).
inline bool in_linear_system(const CurveInstance<Rational>& inst, const CurveElement<Rational>& g,
                             const Divisor<Rational>& d) {
  if (g.is_zero()) throw DomainError("linear system: zero function");
  if (d.has_blocks()) throw DomainError("linear system: divisor with non-rational blocks");
  // Poles over non-rational loci can never be compensated by d.
  for (const Poly<Rational>* den : {&g.a.den(), &g.b.den()}) {
    if (den->degree() <= 0) continue;
    RootSplit rs = rational_roots(*den);
    if (rs.remainder.degree() > 0) {
      // Regularity at conjugate points requires both components regular.
      return false;
    }
    for (const auto& [x0, m] : rs.roots) {
      (void)m;
      auto info = detail::classify_fiber(inst, x0);
      if (info.kind == detail::FiberKind::NonSplit) {
        // At a conjugate pair nonnegative valuation at both points forces
        // both components to be regular, contradicting the denominator root.
        return false;
      }
      if (info.kind == detail::FiberKind::TwoTorsion) {
        CurvePoint<Rational> p = CurvePoint<Rational>::affine(x0, Rational(0));
        if (valuation(inst, g, p) < -d.multiplicity(p)) return false;
      } else {
        for (const auto& yy : {info.y0, -info.y0}) {
          CurvePoint<Rational> p = CurvePoint<Rational>::affine(x0, yy);
          if (valuation(inst, g, p) < -d.multiplicity(p)) return false;
        }
      }
    }
  }
  if (valuation(inst, g, inst.w_infinity()) < -d.multiplicity(inst.w_infinity())) return false;
  for (const auto& [p, m] : d.points) {
    if (m >= 0) continue;  // required zeros
    if (valuation(inst, g, p) < -m) return false;
  }
  return true;
}

}  // namespace ellconn
