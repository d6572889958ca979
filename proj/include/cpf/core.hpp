// Multi-accuracy evaluation of the Faddeyeva function w(z) = exp(-z^2) erfc(-iz).
#pragma once

#include <span>
#include <vector>

#include "cpf/types.hpp"

namespace cpf {

EvalOutcome faddeyeva(ComplexPoint z, AccuracyTarget acc = {});

// One row of a border table: lo <= |z|^2 < hi and a condition on y^2.
struct RegionRule {
  RegionId id;
  Method method = Method::cf;
  int order = 0;  // convergents for cf, retained terms for series
  double z_sq_lo = 0.0;
  double z_sq_hi = 0.0;
  double y_sq_lo = 0.0;
  bool y_sq_lo_inclusive = true;
  double y_sq_hi = 0.0;
  bool y_sq_hi_inclusive = false;

  bool contains(RegionKey key) const;
};

// Border table for one accuracy, in matching order (first match wins).
std::span<const RegionRule> region_rules(AccuracyTarget acc);

// The rule that applies to a key; the last rule is a catch-all.
const RegionRule& select_rule(RegionKey key, AccuracyTarget acc);

RegionId select_region(RegionKey key, AccuracyTarget acc);

// k-th convergent of the Laplace continued fraction, 1 <= k <= 6.
cplx laplace_cf(cplx z, int k);

// (i / (z sqrt(pi))) (1 + a (1 + a (3 + a (15 + ...)))) with m nested terms, a = 1/(2 z^2).
cplx asymptotic_series(cplx z, int m);

cplx w_via_dawson_taylor(ComplexPoint z, AccuracyTarget acc);

// exp(-z^2); the tiny_y form replaces the phase by 1 - 2ixy.
cplx exp_neg_z_sq(ComplexPoint z, bool tiny_y = false);

cplx humlicek_region_iv(ComplexPoint z);
cplx hui_p6(ComplexPoint z);
cplx residual_loop(ComplexPoint z, AccuracyTarget acc);
cplx real_axis_w(double x);

// exp(s z^2) kept as a log-magnitude (double-double) and a phase so that
// callers can decide overflow before forming the product.
struct ExpFactor {
  double log_hi = 0.0;
  double log_lo = 0.0;
  double cos_phase = 1.0;
  double sin_phase = 0.0;

  double log_magnitude() const { return log_hi + log_lo; }
  // exp(log) * c * 2^extra_exp without intermediate overflow or underflow.
  double scale(double c, int extra_exp = 0) const;
  // exp(log) * (cos + i sin); overflows to inf when the magnitude does.
  cplx value() const;
  // exp(log) * (cos + i sin) * w. When |product| exceeds the largest double
  // the exponential is taken as (sign(cos) Inf, sign(sin) Inf) and each
  // component is assembled term by term, so mixed signs give NaN.
  cplx times(cplx w) const;
};

// sign = -1 gives exp(-z^2), sign = +1 gives exp(z^2).
ExpFactor exp_factor(double x, double y, int sign);

}  // namespace cpf
