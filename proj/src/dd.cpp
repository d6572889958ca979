#include "cpf/dd.hpp"

#include <limits>

namespace cpf {

namespace {
constexpr double kHalfPiTail = -1.4973849048591698e-33;
constexpr double kLn2Tail = 5.707708438416212e-34;
}  // namespace

dd sqrt(dd a) {
  if (a.hi <= 0.0) return dd(std::sqrt(a.hi));
  double x = std::sqrt(a.hi);
  dd r = a - square(x);
  return dd::normalized(x, r.hi / (2.0 * x));
}

dd exp(dd a) {
  if (a.hi > 709.79) return dd(std::numeric_limits<double>::infinity());
  if (a.hi < -745.2) return dd(0.0);
  if (a.hi == 0.0 && a.lo == 0.0) return dd(1.0);

  double k = std::nearbyint(a.hi / dd_const::ln2.hi);
  dd r = a - dd_const::ln2 * k - k * kLn2Tail;
  // exp(r) = (1 + e)^512 with e = expm1(r/512)
  constexpr int kSquarings = 9;
  dd s = r / 512.0;
  dd term = s;
  dd e = s;
  for (int n = 2; n < 30; ++n) {
    term = term * s / static_cast<double>(n);
    e += term;
    if (std::abs(term.hi) < 1e-36) break;
  }
  for (int i = 0; i < kSquarings; ++i) e = e * (e + 2.0);
  dd v = e + 1.0;
  int ik = static_cast<int>(k);
  return {std::ldexp(v.hi, ik), std::ldexp(v.lo, ik)};
}

dd log(dd a) {
  double x0 = std::log(a.hi);
  dd x = x0;
  for (int i = 0; i < 2; ++i) x = x + a * exp(-x) - 1.0;
  return x;
}

void sincos(dd a, dd& s, dd& c) {
  double kq = std::nearbyint(a.hi / dd_const::half_pi.hi);
  dd r = a - dd_const::half_pi * kq - kq * kHalfPiTail;
  dd r2 = r * r;

  dd sn = r;
  dd term = r;
  for (int n = 1; n < 30; ++n) {
    term = -(term * r2) / static_cast<double>((2 * n) * (2 * n + 1));
    sn += term;
    if (std::abs(term.hi) < 1e-36) break;
  }
  dd cs = 1.0;
  term = 1.0;
  for (int n = 1; n < 30; ++n) {
    term = -(term * r2) / static_cast<double>((2 * n - 1) * (2 * n));
    cs += term;
    if (std::abs(term.hi) < 1e-36) break;
  }

  long q = static_cast<long>(std::fmod(kq, 4.0));
  if (q < 0) q += 4;
  switch (q) {
    case 0: s = sn; c = cs; break;
    case 1: s = cs; c = -sn; break;
    case 2: s = -sn; c = -cs; break;
    default: s = -cs; c = sn; break;
  }
}

namespace dd_const {
dd inv_sqrt_pi() {
  static const dd v = dd(1.0) / sqrt(pi);
  return v;
}
dd two_over_sqrt_pi() {
  static const dd v = dd(2.0) / sqrt(pi);
  return v;
}
}  // namespace dd_const

ComplexDD operator/(const ComplexDD& a, const ComplexDD& b) {
  if (std::abs(b.re.hi) >= std::abs(b.im.hi)) {
    dd r = b.im / b.re;
    dd den = b.re + b.im * r;
    return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
  }
  dd r = b.re / b.im;
  dd den = b.re * r + b.im;
  return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
}

ComplexDD exp(const ComplexDD& a) {
  dd m = exp(a.re);
  dd s, c;
  sincos(a.im, s, c);
  return {m * c, m * s};
}

}  // namespace cpf
