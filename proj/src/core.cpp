#include "cpf/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cpf/dawson.hpp"
#include "cpf/dd.hpp"

namespace cpf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kInvLn2 = 1.44269504088896338700;
// ln 2 split so that k * kLn2Hi is exact for |k| < 2^20
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;

// ---- border tables ----

constexpr RegionRule ring(Major major, int sub, Method method, int order, double lo, double hi) {
  RegionRule r{};
  r.id = RegionId{major, sub};
  r.method = method;
  r.order = order;
  r.z_sq_lo = lo;
  r.z_sq_hi = hi;
  r.y_sq_lo = 0.0;
  r.y_sq_lo_inclusive = true;
  r.y_sq_hi = kInf;
  r.y_sq_hi_inclusive = true;
  return r;
}

constexpr RegionRule with_y(RegionRule r, double lo, bool lo_incl, double hi, bool hi_incl) {
  r.y_sq_lo = lo;
  r.y_sq_lo_inclusive = lo_incl;
  r.y_sq_hi = hi;
  r.y_sq_hi_inclusive = hi_incl;
  return r;
}

constexpr RegionRule y_below(RegionRule r, double v) { return with_y(r, 0.0, true, v, false); }
constexpr RegionRule y_at_most(RegionRule r, double v) { return with_y(r, 0.0, true, v, true); }
constexpr RegionRule y_at_least(RegionRule r, double v) { return with_y(r, v, true, kInf, true); }
constexpr RegionRule y_above(RegionRule r, double v) { return with_y(r, v, false, kInf, true); }

constexpr RegionRule cf(Major m, int sub, int k, double lo, double hi) { return ring(m, sub, Method::cf, k, lo, hi); }
constexpr RegionRule series(int sub, int terms, double lo, double hi) {
  return ring(Major::IV, sub, Method::series, terms, lo, hi);
}
constexpr RegionRule taylor(int sub, double hi) { return ring(Major::V, sub, Method::dawson_taylor, 0, 0.0, hi); }
constexpr RegionRule residual(Major m, int sub, double hi) { return ring(m, sub, Method::residual_loop, 0, 0.0, hi); }
constexpr RegionRule fallback() { return residual(Major::VI, 0, kInf); }

constexpr std::array kRules4 = {
    cf(Major::I, 0, 1, 16000.0, kInf),
    cf(Major::II, 0, 2, 160.0, 16000.0),
    cf(Major::III, 0, 3, 107.0, 160.0),
    y_at_least(cf(Major::IV, 1, 4, 28.5, 107.0), 6e-14),
    y_below(ring(Major::V, 1, Method::humlicek_iv, 0, 28.5, 107.0), 6e-14),
    y_below(ring(Major::V, 1, Method::humlicek_iv, 0, 3.5, 28.5), 0.026),
    ring(Major::VI, 0, Method::hui_p6, 0, 0.0, kInf),
};

// Hui p6 misses 5 digits near y^2 = 0.27, so region VI runs the residual loop.
constexpr std::array kRules5 = {
    cf(Major::I, 0, 1, 150000.0, kInf),
    cf(Major::II, 0, 2, 510.0, 150000.0),
    cf(Major::III, 0, 3, 110.0, 510.0),
    cf(Major::IV, 1, 4, 109.0, 110.0),
    y_at_least(cf(Major::IV, 1, 4, 39.0, 109.0), 1e-9),
    y_below(ring(Major::V, 1, Method::humlicek_iv, 0, 0.0, 109.0), 1e-9),
    with_y(taylor(2, 109.0), 1e-9, false, 0.1, true),
    with_y(residual(Major::V, 3, 39.0), 0.1, false, 0.27, true),
    y_above(residual(Major::VI, 0, 39.0), 0.27),
    fallback(),
};

constexpr std::array kRules6 = {
    cf(Major::I, 0, 1, 1451000.0, kInf),
    cf(Major::II, 0, 2, 1600.0, 1451000.0),
    cf(Major::III, 0, 3, 180.0, 1600.0),
    cf(Major::IV, 1, 4, 111.0, 180.0),
    y_at_most(taylor(1, 111.0), 1e-2),
    with_y(residual(Major::V, 2, 111.0), 1e-2, false, 1.0, false),
    y_at_least(residual(Major::VI, 0, 111.0), 1.0),
    fallback(),
};

constexpr std::array kRules7 = {
    cf(Major::I, 0, 1, 1.5e7, kInf),
    cf(Major::II, 0, 2, 5010.0, 1.5e7),
    cf(Major::III, 0, 3, 380.0, 5010.0),
    cf(Major::IV, 1, 4, 115.0, 380.0),
    cf(Major::IV, 2, 5, 114.0, 115.0),
    y_at_most(taylor(1, 114.0), 1e-2),
    fallback(),
};

constexpr std::array kRules8 = {
    cf(Major::I, 0, 1, 1.3e8, kInf),
    cf(Major::II, 0, 2, 16000.0, 1.3e8),
    cf(Major::III, 0, 3, 810.0, 16000.0),
    cf(Major::IV, 1, 4, 195.0, 810.0),
    cf(Major::IV, 2, 5, 116.0, 195.0),
    y_at_most(taylor(1, 116.0), 1e-3),
    fallback(),
};

constexpr std::array kRules9 = {
    cf(Major::I, 0, 1, 1.4e9, kInf),
    cf(Major::II, 0, 2, 50000.0, 1.4e9),
    cf(Major::III, 0, 3, 1750.0, 50000.0),
    cf(Major::IV, 1, 4, 345.0, 1750.0),
    cf(Major::IV, 2, 5, 137.0, 345.0),
    cf(Major::IV, 3, 6, 118.0, 137.0),
    y_at_most(taylor(1, 118.0), 1e-3),
    fallback(),
};

constexpr std::array kRules10 = {
    cf(Major::I, 0, 1, 1.5e10, kInf),
    cf(Major::II, 0, 2, 200000.0, 1.5e10),
    cf(Major::III, 0, 3, 3750.0, 200000.0),
    cf(Major::IV, 1, 4, 610.0, 3750.0),
    cf(Major::IV, 2, 5, 215.0, 610.0),
    cf(Major::IV, 3, 6, 122.0, 215.0),
    series(4, 6, 120.0, 122.0),
    y_at_most(taylor(1, 120.0), 1e-3),
    fallback(),
};

constexpr std::array kRules11 = {
    cf(Major::I, 0, 1, 1.5e11, kInf),
    cf(Major::II, 0, 2, 500000.0, 1.5e11),
    cf(Major::III, 0, 3, 8100.0, 500000.0),
    cf(Major::IV, 1, 4, 1085.0, 8100.0),
    cf(Major::IV, 2, 5, 340.0, 1085.0),
    cf(Major::IV, 3, 6, 162.0, 340.0),
    series(4, 7, 123.0, 162.0),
    y_at_most(taylor(1, 123.0), 1e-3),
    fallback(),
};

constexpr std::array kRules12 = {
    cf(Major::I, 0, 1, 1.2e12, kInf),
    cf(Major::II, 0, 2, 1.9e6, 1.2e12),
    cf(Major::III, 0, 3, 17500.0, 1.9e6),
    cf(Major::IV, 1, 4, 1950.0, 17500.0),
    cf(Major::IV, 2, 5, 550.0, 1950.0),
    cf(Major::IV, 3, 6, 235.0, 550.0),
    series(4, 8, 125.0, 235.0),
    y_at_most(taylor(1, 125.0), 1e-3),
    fallback(),
};

constexpr std::array kRules13 = {
    cf(Major::I, 0, 1, 1.5e13, kInf),
    cf(Major::II, 0, 2, 1e8, 1.5e13),
    cf(Major::III, 0, 3, 38000.0, 1e8),
    cf(Major::IV, 1, 4, 3500.0, 38000.0),
    cf(Major::IV, 2, 5, 1200.0, 3500.0),
    cf(Major::IV, 3, 6, 400.0, 1200.0),
    series(4, 9, 127.0, 400.0),
    y_at_most(taylor(1, 127.0), 1e-3),
    fallback(),
};

// ---- evaluation helpers ----

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

// exp(y^2) erfc(y) for 0 <= y < 3 with y^2 split exactly.
double erfcx_small(double y) {
  TwoTerm y2 = two_prod(y, y);
  return std::exp(y2.hi) * (1.0 + y2.lo) * std::erfc(y);
}

// Backward recurrence of the Laplace continued fraction with n partial quotients.
cplx laplace_cf_backward(cplx z, int n) {
  cplx t = 0.0;
  for (int k = n; k >= 1; --k) t = (0.5 * k) / (z - t);
  cplx q = 1.0 / (z - t);
  return {-q.imag() * kInvSqrtPi, q.real() * kInvSqrtPi};
}

int residual_cf_terms(double y, int sdgt) {
  if (y >= 4.0) return sdgt <= 8 ? 10 : sdgt <= 11 ? 15 : 20;
  return sdgt <= 6 ? 10 : sdgt <= 8 ? 15 : sdgt <= 10 ? 20 : 30;
}

// Exponentially convergent sum for 0 <= y < 3, with the exp(+-2anx) factors
// carried as expm1 recurrences.
cplx residual_sum(double x, double y, double eps) {
  const double tol = eps * 1e-3;
  const double a = std::numbers::pi / std::sqrt(-std::log(tol));
  const double c = 2.0 * a / std::numbers::pi;
  const double a2 = a * a;
  const double y2 = y * y;
  const double expx2 = exp_factor(x, 0.0, -1).scale(1.0);
  const double q = std::expm1(2.0 * a * x);
  const double r = std::expm1(-2.0 * a * x);

  double e = 0.0;  // exp(2anx) - 1
  double f = 0.0;  // exp(-2anx) - 1
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, d = 0.0;
  for (int n = 1; n < 10000; ++n) {
    e = e * (1.0 + q) + q;
    f = f * (1.0 + r) + r;
    double an = a * n;
    double an2 = a2 * n * n;
    double coef = std::exp(-an2) * expx2 / (an2 + y2);
    s1 += coef;
    s2 += coef * (1.0 + f);
    s3 += coef * (1.0 + e);
    d += coef * an * (e - f);
    if (coef * (1.0 + e) * an < tol * s3 * a && coef < tol * s1) break;
  }

  const double xy = x * y;
  const double coef1 = expx2 * erfcx_small(y) - c * y * s1;
  const double coef2 = c * x * expx2;
  double re = coef1 * std::cos(2.0 * xy) + coef2 * std::sin(xy) * sinc(xy) + 0.5 * c * y * (s2 + s3);
  double im = coef2 * sinc(2.0 * xy) - coef1 * std::sin(2.0 * xy) + 0.5 * c * d;
  return {re, im};
}

struct QuadrantValue {
  cplx value;
  RegionId region;
  Method method;
};

QuadrantValue first_quadrant(double x, double y, AccuracyTarget acc) {
  const RegionRule& rule = select_rule(RegionKey::from(x, y), acc);
  if (y == 0.0) return {real_axis_w(x), rule.id, Method::real_axis};
  ComplexPoint z{x, y};
  cplx v;
  switch (rule.method) {
    case Method::cf: v = laplace_cf(z.value(), rule.order); break;
    case Method::series: v = asymptotic_series(z.value(), rule.order); break;
    case Method::dawson_taylor: v = w_via_dawson_taylor(z, acc); break;
    case Method::humlicek_iv: v = humlicek_region_iv(z); break;
    case Method::hui_p6: v = hui_p6(z); break;
    case Method::residual_loop: v = residual_loop(z, acc); break;
    case Method::real_axis: v = real_axis_w(x); break;
  }
  return {v, rule.id, rule.method};
}

}  // namespace

// ---- border tables ----

bool RegionRule::contains(RegionKey key) const {
  if (!(key.z_sq >= z_sq_lo && key.z_sq < z_sq_hi)) return false;
  bool above_lo = y_sq_lo_inclusive ? key.y_sq >= y_sq_lo : key.y_sq > y_sq_lo;
  bool below_hi = y_sq_hi_inclusive ? key.y_sq <= y_sq_hi : key.y_sq < y_sq_hi;
  return above_lo && below_hi;
}

std::span<const RegionRule> region_rules(AccuracyTarget acc) {
  switch (acc.sdgt()) {
    case 4: return kRules4;
    case 5: return kRules5;
    case 6: return kRules6;
    case 7: return kRules7;
    case 8: return kRules8;
    case 9: return kRules9;
    case 10: return kRules10;
    case 11: return kRules11;
    case 12: return kRules12;
    default: return kRules13;
  }
}

const RegionRule& select_rule(RegionKey key, AccuracyTarget acc) {
  auto rules = region_rules(acc);
  for (const RegionRule& r : rules) {
    if (r.contains(key)) return r;
  }
  return rules.back();
}

RegionId select_region(RegionKey key, AccuracyTarget acc) { return select_rule(key, acc).id; }

// ---- approximations ----

cplx laplace_cf(cplx z, int k) {
  auto times_i_over_sqrt_pi = [](cplx v) { return cplx(-v.imag() * kInvSqrtPi, v.real() * kInvSqrtPi); };
  // Past |z|^2 = 1e200 every convergent equals the first to double precision,
  // while z^6 in the higher ones would overflow.
  if (k == 1 || std::norm(z) > 1e200) return times_i_over_sqrt_pi(1.0 / z);
  const cplx z2 = z * z;
  switch (k) {
    case 2: return times_i_over_sqrt_pi(z / (z2 - 0.5));
    case 3: return times_i_over_sqrt_pi((z2 - 1.0) / (z * (z2 - 1.5)));
    case 4: return times_i_over_sqrt_pi(z * (z2 - 2.5) / (z2 * (z2 - 3.0) + 0.75));
    case 5: return times_i_over_sqrt_pi((z2 * (z2 - 4.5) + 2.0) / (z * (z2 * (z2 - 5.0) + 3.75)));
    case 6:
      return times_i_over_sqrt_pi(z * (z2 * (z2 - 7.0) + 8.25) / (z2 * (z2 * (z2 - 7.5) + 11.25) - 1.875));
    default: throw std::invalid_argument("laplace_cf: k must lie in [1, 6]");
  }
}

cplx asymptotic_series(cplx z, int m) {
  static constexpr std::array<double, 10> kDoubleFactorial = {
      1.0, 1.0, 3.0, 15.0, 105.0, 945.0, 10395.0, 135135.0, 2027025.0, 34459425.0};
  if (m < 0 || m > 9) throw std::invalid_argument("asymptotic_series: m must lie in [0, 9]");
  cplx lead = 1.0 / z;
  lead = {-lead.imag() * kInvSqrtPi, lead.real() * kInvSqrtPi};
  if (m == 0) return lead;
  const cplx alpha = 1.0 / (2.0 * z * z);
  cplx s = kDoubleFactorial[static_cast<std::size_t>(m)];
  for (int j = m - 1; j >= 1; --j) s = kDoubleFactorial[static_cast<std::size_t>(j)] + alpha * s;
  return lead * (1.0 + alpha * s);
}

cplx w_via_dawson_taylor(ComplexPoint z, AccuracyTarget acc) {
  const double x = z.x;
  const double y = z.y;
  const double tol = acc.eps() / 10.0;
  const DawsonValue dv = daw_real_with_slope(x);

  const double phase = 2.0 * x * y;
  const cplx e = exp_neg_z_sq(z, 0.5 * phase * phase <= tol);

  // Rough w to size the per-component truncation limits.
  const double re_est = e.real() - kTwoOverSqrtPi * dv.slope * y;
  const double im_est = e.imag() + kTwoOverSqrtPi * dv.value;
  const double floor = 1e-6 * std::hypot(re_est, im_est);
  const double lim_odd = tol * std::max(std::abs(re_est), floor) / kTwoOverSqrtPi;
  const double lim_even = tol * std::max(std::abs(im_est), floor) / kTwoOverSqrtPi;

  // Daw(x + iy) = sum d_n (iy)^n; even n feed Re Daw, odd n feed Im Daw.
  double d_prev = dv.value;
  double d_cur = dv.slope;
  double yn = y;
  double sum_re = 0.0;
  double sum_im = 0.0;
  int quiet = 0;
  for (int n = 1; n < 24; ++n) {
    const int m = n + 1;
    const double d_next = -(2.0 / m) * (x * d_cur + d_prev);
    yn *= y;
    const double term = d_next * yn;
    switch (m % 4) {
      case 0: sum_re += term; break;
      case 1: sum_im += term; break;
      case 2: sum_re -= term; break;
      default: sum_im -= term; break;
    }
    const double lim = m % 2 == 0 ? lim_even : lim_odd;
    quiet = (std::abs(term) <= lim && m > phase) ? quiet + 1 : 0;
    if (quiet >= 2) break;
    d_prev = d_cur;
    d_cur = d_next;
  }
  const double daw_re = dv.value + sum_re;
  const double daw_im = dv.slope * y + sum_im;
  return {e.real() - kTwoOverSqrtPi * daw_im, e.imag() + kTwoOverSqrtPi * daw_re};
}

cplx exp_neg_z_sq(ComplexPoint z, bool tiny_y) {
  const ExpFactor f = exp_factor(z.x, z.y, -1);
  if (tiny_y) return {f.scale(1.0), f.scale(-2.0 * z.x * z.y)};
  return f.value();
}

cplx humlicek_region_iv(ComplexPoint z) {
  const cplx t(z.y, -z.x);
  const cplx u = t * t;
  const cplx num =
      t * (36183.31 - u * (3321.9905 - u * (1540.787 - u * (219.0313 - u * (35.76683 - u * (1.320522 - u * 0.56419))))));
  const cplx den =
      32066.6 -
      u * (24322.84 - u * (9022.228 - u * (2186.181 - u * (364.2191 - u * (61.57037 - u * (1.841439 - u))))));
  return exp_neg_z_sq(z) - num / den;
}

cplx hui_p6(ComplexPoint z) {
  static constexpr std::array<double, 7> kNum = {122.607931777104326, 214.382388694706425, 181.928533092181549,
                                                 93.155580458138441,  30.180142196210589,  5.912626209773153,
                                                 0.564189583562615};
  static constexpr std::array<double, 8> kDen = {122.60793177387535, 352.730625110963558, 457.334478783897737,
                                                 348.703917719495792, 170.354001821091472, 53.992906912940207,
                                                 10.479857114260399, 1.0};
  const cplx t(z.y, -z.x);
  cplx p = kNum.back();
  for (auto it = kNum.rbegin() + 1; it != kNum.rend(); ++it) p = p * t + *it;
  cplx q = kDen.back();
  for (auto it = kDen.rbegin() + 1; it != kDen.rend(); ++it) q = q * t + *it;
  return p / q;
}

cplx residual_loop(ComplexPoint z, AccuracyTarget acc) {
  if (z.y >= 3.0) return laplace_cf_backward(z.value(), residual_cf_terms(z.y, acc.sdgt()));
  return residual_sum(z.x, z.y, acc.eps());
}

cplx real_axis_w(double x) {
  return {exp_factor(x, 0.0, -1).scale(1.0), kTwoOverSqrtPi * daw_real(x)};
}

// ---- exp(+-z^2) ----

ExpFactor exp_factor(double x, double y, int sign) {
  ExpFactor f;
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ax > 1e150 || ay > 1e150) {
    const double d = (ax - ay) * (ax + ay);
    f.log_hi = sign > 0 ? d : -d;
  } else {
    dd d = square(x) - square(y);
    if (sign < 0) d = -d;
    f.log_hi = d.hi;
    f.log_lo = d.lo;
  }
  TwoTerm p = two_prod(2.0 * x, y);
  if (sign < 0) p = {-p.hi, -p.lo};
  const double c = std::cos(p.hi);
  const double s = std::sin(p.hi);
  f.cos_phase = c - p.lo * s;
  f.sin_phase = s + p.lo * c;
  return f;
}

double ExpFactor::scale(double c, int extra_exp) const {
  if (c == 0.0 || std::isnan(c)) return c;
  if (std::isnan(log_hi)) return kNaN;
  if (log_hi > 2000.0) return c * kInf;
  if (log_hi < -2000.0) return c * 0.0;
  const int k = static_cast<int>(std::floor(log_hi * kInvLn2));
  const double r = (log_hi - k * kLn2Hi) - k * kLn2Lo + log_lo;
  return std::ldexp(std::exp(r) * c, k + extra_exp);
}

cplx ExpFactor::value() const { return {scale(cos_phase), scale(sin_phase)}; }

cplx ExpFactor::times(cplx w) const {
  if (std::isnan(w.real()) || std::isnan(w.imag())) return {kNaN, kNaN};
  const double big = std::max(std::abs(w.real()), std::abs(w.imag()));
  if (big == 0.0) return {0.0, 0.0};
  const double log_w = std::log(std::abs(w));
  if (std::isinf(big) || log_magnitude() + log_w > PlatformLimits::ln_r_max) {
    auto signed_inf = [](double c) { return c == 0.0 ? 0.0 : std::copysign(kInf, c); };
    auto term = [](double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; };
    const double er = log_magnitude() + log_w > PlatformLimits::ln_r_max ? signed_inf(cos_phase) : scale(cos_phase);
    const double ei = log_magnitude() + log_w > PlatformLimits::ln_r_max ? signed_inf(sin_phase) : scale(sin_phase);
    return {term(er, w.real()) - term(ei, w.imag()), term(er, w.imag()) + term(ei, w.real())};
  }
  const int e = std::ilogb(big);
  const double wr = std::scalbn(w.real(), -e);
  const double wi = std::scalbn(w.imag(), -e);
  return {scale(cos_phase * wr - sin_phase * wi, e), scale(cos_phase * wi + sin_phase * wr, e)};
}

// ---- driver ----

EvalOutcome faddeyeva(ComplexPoint z, AccuracyTarget acc) {
  EvalOutcome out;
  if (z.has_nan()) {
    out.value = {kNaN, kNaN};
    out.status = Status::undefined_nan;
    return out;
  }
  if (!z.finite()) {
    // w vanishes at infinity in the closed upper half plane; below it the
    // exp(-z^2) term has no limit.
    if (z.y >= 0.0) {
      out.value = {0.0, 0.0};
      out.region = {Major::I, 0};
      out.method = Method::cf;
    } else {
      out.value = {kNaN, kNaN};
      out.status = Status::undefined_nan;
    }
    return out;
  }

  const double ax = std::abs(z.x);
  QuadrantValue q = first_quadrant(ax, std::abs(z.y), acc);
  cplx v = q.value;
  if (z.y < 0.0) {
    // w(ax + iy) = 2 exp(-z^2) - conj(w(ax + i|y|)); a zero trig factor keeps
    // the finite component.
    const ExpFactor f = exp_factor(ax, z.y, -1);
    v = {f.scale(2.0 * f.cos_phase) - v.real(), f.scale(2.0 * f.sin_phase) + v.imag()};
  }
  if (z.x < 0.0) v = std::conj(v);

  out.value = v;
  out.status = classify(v);
  out.region = q.region;
  out.method = q.method;
  return out;
}

}  // namespace cpf
