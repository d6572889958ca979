#include "cpf/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cpf/core.hpp"
#include "cpf/dd.hpp"

namespace cpf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kHalfSqrtPi = 0.88622692545275801365;
constexpr double kSqrtHalfPi = 1.25331413731550025121;
// Taylor route about the nearer axis: the small coordinate and the exp(pi x y)
// growth of the correction terms must both stay bounded.
constexpr double kNearAxis = 0.5;
constexpr double kNearAxisPhase = 3.0;
constexpr int kMaxTerms = 40;

struct SC {
  cplx s;
  cplx c;
};

// cos and sin of (pi/2) q, with q reduced modulo 4 before any rounding.
std::pair<double, double> quarter_turns(dd q) {
  const double r = std::fmod(q.hi, 4.0);
  const double n = std::nearbyint(r);
  double f = (r - n) + q.lo;
  // A phase within one unit of the double-double split of an integer is taken as that integer.
  if (std::abs(f) <= 0x1p-104 * std::max(1.0, std::abs(q.hi))) f = 0.0;
  const double th = f * (std::numbers::pi / 2);
  const double c = std::cos(th);
  const double s = std::sin(th);
  switch (((static_cast<long long>(n) % 4) + 4) % 4) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

// Power series for both functions: with v = (pi/2) z^2,
// C = z sum_{n even} (+-) v^n / (n! (2n+1)), S = z sum_{n odd} (+-) v^n / (n! (2n+1)).
SC small_series(cplx z, AccuracyTarget acc) {
  const cplx v = (std::numbers::pi / 2) * z * z;
  const double tol = acc.eps() / 10.0 * 1e-6;
  cplx q = 1.0;
  cplx c_sum = 1.0;
  cplx s_sum = 0.0;
  int quiet = 0;
  for (int n = 1; n < kMaxTerms; ++n) {
    q *= v / static_cast<double>(n);
    const cplx term = q / static_cast<double>(2 * n + 1);
    cplx& target = n % 2 == 0 ? c_sum : s_sum;
    if (n % 4 < 2) {
      target += term;
    } else {
      target -= term;
    }
    quiet = std::abs(term) <= tol * std::abs(target) ? quiet + 1 : 0;
    if (quiet >= 2) break;
  }
  return {z * s_sum, z * c_sum};
}

// Real-axis values through w((1+i) sqrt(pi) x / 2) and a Taylor correction in
// the small imaginary part y. The usual form needs w at (1-i) sqrt(pi) x / 2;
// reflecting it leaves exp(i pi x^2/2), taken from phase_cos_sin.
SC near_real(double x, double y, AccuracyTarget acc) {
  const auto [c, s] = phase_cos_sin(x);
  const double a = kHalfSqrtPi * x;
  const cplx v = faddeyeva({a, a}, acc).value;
  const double s0 = 0.5 - 0.5 * (v.real() * (c + s) + v.imag() * (c - s));
  const double c0 = 0.5 - 0.5 * (v.real() * (c - s) - v.imag() * (c + s));
  if (y == 0.0) return {{s0, 0.0}, {c0, 0.0}};

  // f(t) = exp(i pi t^2 / 2): C' + i S' = f on the real line, f^(n) = P_n f with
  // P_{n+1} = P_n' + i pi t P_n.
  const cplx phase(c, s);
  const double tol = acc.eps() / 10.0 * 1e-6;
  std::vector<cplx> poly{1.0};
  double s_re = s0, s_im = 0.0, c_re = c0, c_im = 0.0;
  double scale = 1.0;  // y^k / k!
  int quiet = 0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    cplx p = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) p = p * x + *it;
    const cplx g = p * phase;
    scale *= y / k;
    const double st = g.imag() * scale;
    const double ct = g.real() * scale;
    switch (k % 4) {
      case 0: s_re += st; c_re += ct; break;
      case 1: s_im += st; c_im += ct; break;
      case 2: s_re -= st; c_re -= ct; break;
      default: s_im -= st; c_im -= ct; break;
    }
    const bool small = std::abs(st) <= tol * std::hypot(s_re, s_im) && std::abs(ct) <= tol * std::hypot(c_re, c_im);
    quiet = small ? quiet + 1 : 0;
    if (quiet >= 2) break;

    std::vector<cplx> next(poly.size() + 1, 0.0);
    for (std::size_t j = 1; j < poly.size(); ++j) next[j - 1] += static_cast<double>(j) * poly[j];
    for (std::size_t j = 0; j < poly.size(); ++j) next[j + 1] += cplx(0.0, std::numbers::pi) * poly[j];
    poly = std::move(next);
  }
  return {{s_re, s_im}, {c_re, c_im}};
}

// S and C through w(u_minus), w(u_plus) for x, y >= 0. exp(u^2) uses the exact form
// u_-^2 = -u_+^2 = pi x y - i (pi/2)(x^2 - y^2).
SC through_w(double x, double y, AccuracyTarget acc, bool& undefined) {
  const FresnelArgPair u = FresnelArgPair::from({x, y});
  const TwoTerm xy = two_prod(x, y);
  const dd pxy = dd_const::pi * dd(xy.hi, xy.lo);
  const auto [c, s] = quarter_turns(square(x) - square(y));
  const ExpFactor e_minus{pxy.hi, pxy.lo, c, -s};
  const ExpFactor e_plus{-pxy.hi, -pxy.lo, c, s};

  // exp(u^2) w(u), reflected when u lies below the real axis.
  auto scaled_w = [&](cplx arg, const ExpFactor& e) -> cplx {
    if (arg.imag() >= 0.0) {
      const EvalOutcome w = faddeyeva(arg, acc);
      if (w.status == Status::undefined_nan) undefined = true;
      return e.times(w.value);
    }
    const EvalOutcome w = faddeyeva(-arg, acc);
    if (w.status == Status::undefined_nan) undefined = true;
    return 2.0 - e.times(w.value);
  };
  const cplx a = 1.0 - scaled_w(u.u_minus, e_minus);
  const cplx b = 1.0 - scaled_w(u.u_plus, e_plus);
  const cplx ib(-b.imag(), b.real());
  return {cplx(-0.25, -0.25) * (a + ib), cplx(-0.25, 0.25) * (a - ib)};
}

SC first_quadrant(double x, double y, AccuracyTarget acc, bool& undefined, Method& method) {
  if (x * x + y * y <= 1.0) {
    method = Method::series;
    return small_series({x, y}, acc);
  }
  if (std::min(x, y) <= kNearAxis && std::numbers::pi * x * y <= kNearAxisPhase) {
    method = Method::real_axis;
    if (y <= x) return near_real(x, y, acc);
    // S(x + iy) = -i S(y - ix), C(x + iy) = i C(y - ix)
    const SC r = near_real(y, x, acc);
    const cplx s = std::conj(r.s);
    const cplx c = std::conj(r.c);
    return {{s.imag(), -s.real()}, {-c.imag(), c.real()}};
  }
  method = Method::cf;
  return through_w(x, y, acc, undefined);
}

EvalOutcome fresnel_sc(bool want_s, cplx z, AccuracyTarget acc) {
  EvalOutcome out;
  out.region = {Major::VI, 0};
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    out.value = {kNaN, kNaN};
    out.status = Status::undefined_nan;
    return out;
  }
  bool undefined = false;
  const SC r = first_quadrant(std::abs(z.real()), std::abs(z.imag()), acc, undefined, out.method);
  if (undefined) {
    out.value = {kNaN, kNaN};
    out.status = Status::undefined_nan;
    return out;
  }
  cplx v = want_s ? r.s : r.c;
  // odd and real on the real axis
  if (std::signbit(z.real()) != std::signbit(z.imag())) v = std::conj(v);
  if (std::signbit(z.real())) v = -v;
  out.value = v;
  out.status = classify(v);
  return out;
}

}  // namespace

FresnelArgPair FresnelArgPair::from(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  return {{kHalfSqrtPi * (x + y), kHalfSqrtPi * (y - x)}, {kHalfSqrtPi * (x - y), kHalfSqrtPi * (x + y)}};
}

std::pair<double, double> phase_cos_sin(double x) { return quarter_turns(square(x)); }

EvalOutcome fresnel(FresnelKind kind, ComplexPoint z, AccuracyTarget acc) {
  const cplx v = z.value();
  switch (kind) {
    case FresnelKind::S: return fresnel_sc(true, v, acc);
    case FresnelKind::C: return fresnel_sc(false, v, acc);
    case FresnelKind::S1: return fresnel_sc(true, v / kSqrtHalfPi, acc);
    case FresnelKind::C1: return fresnel_sc(false, v / kSqrtHalfPi, acc);
    case FresnelKind::S2:
    case FresnelKind::C2: {
      // principal root of 2u/pi; a zero imaginary part is read as +0
      cplx u = v;
      if (u.imag() == 0.0) u.imag(0.0);
      const cplx t = std::sqrt(u * (2.0 / std::numbers::pi));
      return fresnel_sc(kind == FresnelKind::S2, t, acc);
    }
  }
  return {};
}

}  // namespace cpf
