#include "cpf/derived.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpf/core.hpp"
#include "cpf/dawson.hpp"

namespace cpf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kHalfSqrtPi = 0.88622692545275801365;
constexpr int kMaxSeriesTerms = 40;

EvalOutcome undefined(EvalOutcome base = {}) {
  base.value = {kNaN, kNaN};
  base.status = Status::undefined_nan;
  return base;
}

EvalOutcome finish(cplx v, const EvalOutcome& from) {
  EvalOutcome out = from;
  out.value = v;
  out.status = classify(v);
  return out;
}

// f(z) from f(|x| + i|y|) for an odd function that is real on the real axis.
cplx odd_from_first_quadrant(cplx v, ComplexPoint z) {
  if (std::signbit(z.x) != std::signbit(z.y)) v = std::conj(v);
  return std::signbit(z.x) ? -v : v;
}

// Truncation limit for a power series: small components are judged against
// 1e-6 of the whole value, so the tail must sit below that scale.
double series_limit(AccuracyTarget acc, cplx sum) { return acc.eps() / 10.0 * 1e-6 * std::abs(sum); }

// erf(z) = (2/sqrt(pi)) sum (-1)^n z^(2n+1) / (n! (2n+1))
cplx erf_series(cplx z, AccuracyTarget acc) {
  const cplx z2 = z * z;
  cplx term = z;
  cplx sum = z;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx add = term / static_cast<double>(2 * n + 1);
    sum += add;
    if (std::abs(add) <= series_limit(acc, sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// Daw(z) = sum (-1)^n 2^n z^(2n+1) / (2n+1)!!
cplx dawson_series(cplx z, AccuracyTarget acc) {
  const cplx z2 = z * z;
  cplx term = z;
  cplx sum = z;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    term *= -2.0 * z2 / static_cast<double>(2 * n + 1);
    sum += term;
    if (std::abs(term) <= series_limit(acc, sum)) break;
  }
  return sum;
}

// Daw(x + iy) = sum d_n (iy)^n about the real point x >= 0.
cplx dawson_taylor(double x, double y, AccuracyTarget acc) {
  const DawsonValue dv = daw_real_with_slope(x);
  double d_prev = dv.value;
  double d_cur = dv.slope;
  double re = dv.value;
  double im = dv.slope * y;
  double yn = y;
  const double phase = 2.0 * x * y;
  int quiet = 0;
  for (int n = 1; n < 60; ++n) {
    const int m = n + 1;
    const double d_next = -(2.0 / m) * (x * d_cur + d_prev);
    yn *= y;
    const double term = d_next * yn;
    switch (m % 4) {
      case 0: re += term; break;
      case 1: im += term; break;
      case 2: re -= term; break;
      default: im -= term; break;
    }
    const double lim = acc.eps() / 10.0 * 1e-6 * std::hypot(re, im);
    quiet = (std::abs(term) <= lim && m > phase) ? quiet + 1 : 0;
    if (quiet >= 2) break;
    d_prev = d_cur;
    d_cur = d_next;
  }
  return {re, im};
}

// erf for x, y >= 0
EvalOutcome erf_first_quadrant(double x, double y, AccuracyTarget acc) {
  EvalOutcome out;
  out.region = {Major::VI, 0};
  if (x * x + y * y <= 1.0) {
    out.method = Method::series;
    return finish(erf_series({x, y}, acc), out);
  }
  if (x == 0.0) {
    // erf(iy) = i exp(y^2) (2/sqrt(pi)) Daw(y)
    out.method = Method::real_axis;
    const double im = exp_factor(0.0, y, -1).scale(kTwoOverSqrtPi * daw_real(y));
    return finish({0.0, im}, out);
  }
  EvalOutcome c = erfc_c({x, y}, acc);
  if (c.status == Status::undefined_nan) return undefined(c);
  return finish({1.0 - c.value.real(), -c.value.imag()}, c);
}

}  // namespace

EvalOutcome erfc_c(ComplexPoint z, AccuracyTarget acc) {
  if (z.has_nan()) return undefined();
  if (std::signbit(z.x)) {
    // erfc(z) = 2 - erfc(-z); keeps w(iz) in the upper half plane.
    EvalOutcome r = erfc_c({-z.x, -z.y}, acc);
    if (r.status == Status::undefined_nan) return r;
    return finish({2.0 - r.value.real(), -r.value.imag()}, r);
  }
  if (z.x == 0.0) {
    // erfc(iy) = 1 - i exp(y^2) (2/sqrt(pi)) Daw(y)
    EvalOutcome out;
    out.region = {Major::VI, 0};
    out.method = Method::real_axis;
    const double im = -exp_factor(0.0, z.y, -1).scale(kTwoOverSqrtPi * daw_real(z.y));
    return finish({1.0, im}, out);
  }
  const EvalOutcome w = faddeyeva({-z.y, z.x}, acc);
  if (w.status == Status::undefined_nan) return undefined(w);
  const cplx v = exp_factor(z.x, z.y, -1).times(w.value);
  EvalOutcome out = finish(v, w);
  if (out.status == Status::ok && v == cplx(0.0, 0.0)) out.status = Status::underflow_zero;
  return out;
}

EvalOutcome erf_c(ComplexPoint z, AccuracyTarget acc) {
  if (z.has_nan()) return undefined();
  EvalOutcome r = erf_first_quadrant(std::abs(z.x), std::abs(z.y), acc);
  r.value = odd_from_first_quadrant(r.value, z);
  return r;
}

EvalOutcome erfi_c(ComplexPoint z, AccuracyTarget acc) {
  // erfi(z) = -i erf(iz)
  EvalOutcome r = erf_c({-z.y, z.x}, acc);
  if (r.status == Status::undefined_nan) return r;
  const cplx e = r.value;
  return finish({e.imag(), e.real() == 0.0 ? 0.0 : -e.real()}, r);
}

EvalOutcome erfcx_c(ComplexPoint z, AccuracyTarget acc) {
  EvalOutcome r = faddeyeva({-z.y, z.x}, acc);
  if (r.status == Status::overflow_inf) return undefined(r);
  return r;
}

EvalOutcome dawson_c(ComplexPoint z, AccuracyTarget acc) {
  if (z.has_nan()) return undefined();
  const double x = std::abs(z.x);
  const double y = std::abs(z.y);
  EvalOutcome out;
  out.region = {Major::VI, 0};
  cplx v;
  if (x * x + y * y <= 1.0) {
    out.method = Method::series;
    v = dawson_series({x, y}, acc);
  } else if (y <= 0.5 && x * x - y * y < 40.0) {
    // exp(-z^2) is not negligible here, so avoid the difference of two
    // nearly equal terms.
    out.method = Method::dawson_taylor;
    v = dawson_taylor(x, y, acc);
  } else {
    // (i sqrt(pi)/2) (exp(-z^2) - w(z))
    const EvalOutcome w = faddeyeva({x, y}, acc);
    if (w.status == Status::undefined_nan) return undefined(w);
    out.region = w.region;
    out.method = w.method;
    const cplx e = exp_factor(x, y, -1).times({0.0, kHalfSqrtPi});
    v = e - cplx(-kHalfSqrtPi * w.value.imag(), kHalfSqrtPi * w.value.real());
  }
  return finish(odd_from_first_quadrant(v, z), out);
}

EvalOutcome plasma_zeta(ComplexPoint z, AccuracyTarget acc) {
  EvalOutcome w = faddeyeva(z, acc);
  if (w.status == Status::undefined_nan) return w;
  return finish({-kSqrtPi * w.value.imag(), kSqrtPi * w.value.real()}, w);
}

EvalOutcome evaluate(const DerivedRequest& req) {
  switch (req.kind) {
    case DerivedKind::erf: return erf_c(req.z, req.acc);
    case DerivedKind::erfc: return erfc_c(req.z, req.acc);
    case DerivedKind::erfi: return erfi_c(req.z, req.acc);
    case DerivedKind::erfcx: return erfcx_c(req.z, req.acc);
    case DerivedKind::dawson_z: return dawson_c(req.z, req.acc);
    case DerivedKind::plasma_zeta: return plasma_zeta(req.z, req.acc);
  }
  return undefined();
}

}  // namespace cpf
