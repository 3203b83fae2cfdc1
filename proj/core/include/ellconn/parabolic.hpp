#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ellconn/connection.hpp"
#include "ellconn/report.hpp"

namespace ellconn {

/// Exponent pairs (nu+, nu-) per pole plus the bundle degree they accompany.
template <class K>
struct ExponentSet {
  std::vector<std::pair<K, K>> pairs;  // ordered by pole index
  int bundle_degree = 0;

  K total() const {
    K s = field_zero<K>();
    for (const auto& [p, m] : pairs) s = s + p + m;
    return s;
  }
  bool fuchs() const {
    return FieldTraits<K>::is_zero(FieldTraits<K>::from_long(bundle_degree) + total());
  }
};

enum class ParabolicFlag { InL, InM, Generic };

/// Symbolic description of a rank-2 quasi-parabolic bundle for the flatness
/// decision. Decomposable bundles carry the two summand classes (or a direct
/// base point when the defining class has no rational square root).
template <class K>
struct ParabolicBundleDesc {
  enum class Kind { Decomposable, IndecomposableE1, E0AllOnMax };

  Kind kind = Kind::IndecomposableE1;
  // Decomposable data: E = L + M with det = L tensor M.
  DivisorClass<K> l_class, m_class;
  std::optional<CurvePoint<K>> base_point;  // rep of det - 2L when L is abstract
  std::array<ParabolicFlag, 2> flags{ParabolicFlag::Generic, ParabolicFlag::Generic};
};

/// deg(summand) + sum over poles of nu+ (parabolic inside) or nu- (outside).
template <class K>
K parabolic_degree(const ParabolicBundleDesc<K>& desc, bool summand_l,
                   const ExponentSet<K>& nu) {
  if (desc.kind != ParabolicBundleDesc<K>::Kind::Decomposable)
    throw DomainError("parabolic degree: summands exist only for decomposable input");
  if (nu.pairs.size() != desc.flags.size())
    throw DomainError("parabolic degree: exponent count differs from flag count");
  int deg = summand_l ? desc.l_class.degree : desc.m_class.degree;
  K s = FieldTraits<K>::from_long(deg);
  for (size_t k = 0; k < desc.flags.size(); ++k) {
    ParabolicFlag f = desc.flags[k];
    if (f == ParabolicFlag::Generic)
      throw DomainError("parabolic degree: Generic parabolic belongs to no summand");
    bool in_l = f == ParabolicFlag::InL;
    bool in_this = summand_l ? in_l : !in_l;
    s = s + (in_this ? nu.pairs[k].first : nu.pairs[k].second);
  }
  return s;
}

struct GenericityReport {
  bool oddness_ok = false;          // nu1 +- nu2 not an odd integer
  bool sums_nonintegral = false;    // all sign combinations of eigenvalues
  bool eigenvalues_distinct = false;  // nu_k+ != nu_k- at each pole
  bool all() const { return oddness_ok && sums_nonintegral && eigenvalues_distinct; }
};

/// Oddness and integrality are decidable over Q.
inline GenericityReport genericity(const ExponentSet<Rational>& nu) {
  GenericityReport rep;
  rep.eigenvalues_distinct = true;
  for (const auto& [p, m] : nu.pairs)
    if (p == m) rep.eigenvalues_distinct = false;
  rep.sums_nonintegral = true;
  size_t n = nu.pairs.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    Rational s(0);
    for (size_t k = 0; k < n; ++k)
      s += (mask >> k) & 1 ? nu.pairs[k].second : nu.pairs[k].first;
    if (s.is_integer()) rep.sums_nonintegral = false;
  }
  if (n == 2) {
    Rational d1 = nu.pairs[0].first - nu.pairs[0].second;
    Rational d2 = nu.pairs[1].first - nu.pairs[1].second;
    rep.oddness_ok = !(d1 + d2).is_odd_integer() && !(d1 - d2).is_odd_integer();
  } else {
    rep.oddness_ok = true;  // the n = 2 normalization does not apply
  }
  return rep;
}

enum class IndecomposabilityVerdict { Decomposable, Indecomposable, GenericallyIndecomposable };

/// Case analysis for E = L + L^{-1}(w) with deg L = 0, two parabolic points.
/// The decision depends on L only through the base point of the pencil of
/// embeddings, the effective representative of det - 2L. Over each of the
/// eight indecomposable-but-not-simple bundles (base point at a marked point,
/// one generic direction, the other on the destabilizing summand) the space
/// of compatible connections is a two-dimensional affine space; only this
/// dimension statement is recorded, no fiber coordinates are constructed.
inline IndecomposabilityVerdict indecomposable_n2_at_base(
    const CurveInstance<Rational>& inst, const CurvePoint<Rational>& base,
    const std::array<ParabolicFlag, 2>& flags) {
  const std::array<CurvePoint<Rational>, 2> marked{inst.t1(), inst.t2()};
  int generic_count = 0;
  for (auto f : flags)
    if (f == ParabolicFlag::Generic) ++generic_count;
  if (generic_count == 0) return IndecomposabilityVerdict::Decomposable;
  if (generic_count == 2) {
    if (base == marked[0] || base == marked[1]) return IndecomposabilityVerdict::Indecomposable;
    return IndecomposabilityVerdict::GenericallyIndecomposable;
  }
  // Exactly one generic direction p_i.
  size_t i = flags[0] == ParabolicFlag::Generic ? 0 : 1;
  size_t j = 1 - i;
  if (base == marked[i]) {
    // No embedding of L passes through a generic direction over the base
    // point, and the other parabolic cannot rescue a splitting.
    return IndecomposabilityVerdict::Indecomposable;
  }
  if (flags[j] == ParabolicFlag::InM) return IndecomposabilityVerdict::Decomposable;
  // flags[j] == InL: the only embedding through p_j is L itself (or, over the
  // base point, every embedding); a generic p_i avoids it unless t_j is the
  // base point, where all embeddings meet p_j.
  if (base == marked[j]) return IndecomposabilityVerdict::Decomposable;
  return IndecomposabilityVerdict::Indecomposable;
}

inline IndecomposabilityVerdict indecomposable_n2(const CurveInstance<Rational>& inst,
                                                  const DivisorClass<Rational>& l_class,
                                                  const DivisorClass<Rational>& det_class,
                                                  const std::array<ParabolicFlag, 2>& flags) {
  if (l_class.degree != 0) throw DomainError("indecomposable: deg L must be 0");
  if (det_class.degree != 1) throw DomainError("indecomposable: deg det must be 1");
  DivisorClass<Rational> base_cls = class_sub(inst, det_class, class_scale(inst, l_class, 2));
  // Degree-1 class: its unique effective representative is the sum point.
  return indecomposable_n2_at_base(inst, base_cls.sum, flags);
}

enum class FlatVerdict { Flat, NotFlat, GenericallyFlat };

/// Flatness decision: Fuchs is necessary; decomposable input requires every
/// summand of parabolic degree zero; indecomposable input (E1, or E0 with
/// all parabolics on the maximal subbundle) is flat whenever Fuchs holds.
template <class K>
FlatVerdict nu_flat(const ParabolicBundleDesc<K>& desc, const ExponentSet<K>& nu) {
  if (!nu.fuchs()) return FlatVerdict::NotFlat;
  using Kind = typename ParabolicBundleDesc<K>::Kind;
  if (desc.kind == Kind::IndecomposableE1 || desc.kind == Kind::E0AllOnMax)
    return FlatVerdict::Flat;
  bool any_generic = false;
  for (auto f : desc.flags)
    if (f == ParabolicFlag::Generic) any_generic = true;
  if (!any_generic) {
    K dl = parabolic_degree(desc, true, nu);
    K dm = parabolic_degree(desc, false, nu);
    bool both_zero = FieldTraits<K>::is_zero(dl) && FieldTraits<K>::is_zero(dm);
    return both_zero ? FlatVerdict::Flat : FlatVerdict::NotFlat;
  }
  // With generic directions the bundle-level splitting does not respect the
  // parabolics; the decision reduces to quasi-parabolic indecomposability.
  return FlatVerdict::GenericallyFlat;
}

/// Overload resolving generic-direction cases through the n=2 base-point
/// analysis (rational exponent data).
inline FlatVerdict nu_flat_n2(const CurveInstance<Rational>& inst,
                              const ParabolicBundleDesc<Rational>& desc,
                              const ExponentSet<Rational>& nu,
                              const DivisorClass<Rational>& det_class) {
  if (!nu.fuchs()) return FlatVerdict::NotFlat;
  using Kind = ParabolicBundleDesc<Rational>::Kind;
  if (desc.kind != Kind::Decomposable) return FlatVerdict::Flat;
  bool any_generic = false;
  for (auto f : desc.flags)
    if (f == ParabolicFlag::Generic) any_generic = true;
  if (!any_generic) return nu_flat(desc, nu);
  IndecomposabilityVerdict v =
      desc.base_point
          ? indecomposable_n2_at_base(inst, *desc.base_point, desc.flags)
          : indecomposable_n2(inst, desc.l_class, det_class, desc.flags);
  GenericityReport gen = genericity(nu);
  if (!gen.sums_nonintegral) {
    // Non-generic exponents: a summand degree could vanish accidentally, so
    // the direction-level verdict does not settle flatness.
    return FlatVerdict::GenericallyFlat;
  }
  switch (v) {
    case IndecomposabilityVerdict::Indecomposable:
      return FlatVerdict::Flat;
    case IndecomposabilityVerdict::Decomposable:
      return FlatVerdict::NotFlat;
    case IndecomposabilityVerdict::GenericallyIndecomposable:
      return FlatVerdict::GenericallyFlat;
  }
  return FlatVerdict::GenericallyFlat;
}

/// mu-stability index of a line subbundle: deg E - 2 deg L + sum of weights
/// of parabolics off L minus sum of weights on L. Weights live in [0, 1].
inline Rational stab_index(int deg_e, int deg_l, const std::array<bool, 2>& parabolic_on_l,
                           const std::pair<Rational, Rational>& mu) {
  for (const Rational* w : {&mu.first, &mu.second})
    if (*w < Rational(0) || *w > Rational(1))
      throw DomainError("stability: weight outside [0, 1]");
  Rational s(deg_e - 2 * deg_l);
  s += parabolic_on_l[0] ? -mu.first : mu.first;
  s += parabolic_on_l[1] ? -mu.second : mu.second;
  return s;
}

enum class StabilityVerdict { Stable, OnWall, Unstable };

inline StabilityVerdict is_mu_stable(const Rational& index) {
  if (index.is_zero()) return StabilityVerdict::OnWall;
  return index > Rational(0) ? StabilityVerdict::Stable : StabilityVerdict::Unstable;
}

}  // namespace ellconn
