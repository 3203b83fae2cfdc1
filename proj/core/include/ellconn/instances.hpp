#pragma once

#include "ellconn/curve.hpp"

namespace ellconn {

/// Desk instance with every marked point rational: lambda = -3, t1 = (3, 6),
/// and generic exponents (1/3, 1/5).
inline CurveInstance<Rational> reference_instance() {
  return CurveInstance<Rational>(Rational(-3), Rational(3), Rational(6), Rational(1, 3),
                                 Rational(1, 5));
}

/// Same curve with nu1 + nu2 + 1 = 0; the apparent map drops rank everywhere.
inline CurveInstance<Rational> degenerate_sum_instance() {
  return CurveInstance<Rational>(Rational(-3), Rational(3), Rational(6), Rational(1, 3),
                                 Rational(-4, 3));
}

/// Same curve with nu1 + nu2 - 1 = 0; the corner base point becomes an
/// indetermination point of the apparent map.
inline CurveInstance<Rational> degenerate_diff_instance() {
  return CurveInstance<Rational>(Rational(-3), Rational(3), Rational(6), Rational(2, 3),
                                 Rational(1, 3));
}

}  // namespace ellconn
