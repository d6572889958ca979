// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#pragma once

#include <cmath>
#include <complex>

namespace cpf {

struct TwoTerm {
  double hi;
  double lo;
};

// Knuth two-sum: a + b == s + e exactly.
inline TwoTerm two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

// Requires |a| >= |b| or a == 0.
inline TwoTerm quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline TwoTerm two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  static DoubleDouble normalized(double h, double l) {
    auto t = quick_two_sum(h, l);
    return {t.hi, t.lo};
  }

  explicit operator double() const { return hi + lo; }
  double to_double() const { return hi + lo; }

  DoubleDouble operator-() const { return {-hi, -lo}; }
};

using dd = DoubleDouble;

inline dd operator+(dd a, dd b) {
  auto s = two_sum(a.hi, b.hi);
  auto t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  s = quick_two_sum(s.hi, s.lo);
  return {s.hi, s.lo};
}

inline dd operator+(dd a, double b) {
  auto s = two_sum(a.hi, b);
  s.lo += a.lo;
  s = quick_two_sum(s.hi, s.lo);
  return {s.hi, s.lo};
}
inline dd operator+(double a, dd b) { return b + a; }
inline dd operator-(dd a, dd b) { return a + (-b); }
inline dd operator-(dd a, double b) { return a + (-b); }
inline dd operator-(double a, dd b) { return (-b) + a; }

inline dd operator*(dd a, dd b) {
  auto p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  p = quick_two_sum(p.hi, p.lo);
  return {p.hi, p.lo};
}

inline dd operator*(dd a, double b) {
  auto p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  p = quick_two_sum(p.hi, p.lo);
  return {p.hi, p.lo};
}
inline dd operator*(double a, dd b) { return b * a; }

inline dd operator/(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  auto s = quick_two_sum(q1, q2);
  return dd(s.hi, s.lo) + q3;
}

inline dd operator/(dd a, double b) {
  double q1 = a.hi / b;
  auto p = two_prod(q1, b);
  auto s = two_sum(a.hi, -p.hi);
  s.lo -= p.lo;
  s.lo += a.lo;
  double q2 = (s.hi + s.lo) / b;
  auto r = quick_two_sum(q1, q2);
  return {r.hi, r.lo};
}

inline dd operator/(double a, dd b) { return dd(a) / b; }

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }
inline dd& operator*=(dd& a, dd b) { return a = a * b; }
inline dd& operator/=(dd& a, dd b) { return a = a / b; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator<=(dd a, dd b) { return !(b < a); }
inline bool operator>=(dd a, dd b) { return !(a < b); }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }

inline dd abs(dd a) { return a.hi < 0.0 ? -a : a; }

// Exact square of a double as a double-double.
inline dd square(double a) {
  auto p = two_prod(a, a);
  return {p.hi, p.lo};
}

inline dd sqr(dd a) { return a * a; }

dd sqrt(dd a);
dd exp(dd a);
dd log(dd a);
// Simultaneous sine and cosine.
void sincos(dd a, dd& s, dd& c);

namespace dd_const {
inline constexpr dd pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr dd half_pi{1.570796326794896558e+00, 6.123233995736766036e-17};
inline constexpr dd ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
// 1/sqrt(pi) and 2/sqrt(pi)
dd inv_sqrt_pi();
dd two_over_sqrt_pi();
}  // namespace dd_const

// Complex double-double, only the operations the oracle needs.
struct ComplexDD {
  dd re;
  dd im;

  ComplexDD() = default;
  ComplexDD(dd r, dd i = dd()) : re(r), im(i) {}
  ComplexDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline ComplexDD operator+(const ComplexDD& a, const ComplexDD& b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexDD operator-(const ComplexDD& a, const ComplexDD& b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexDD operator-(const ComplexDD& a) { return {-a.re, -a.im}; }
inline ComplexDD operator*(const ComplexDD& a, const ComplexDD& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexDD operator*(const ComplexDD& a, dd s) { return {a.re * s, a.im * s}; }
inline ComplexDD operator*(dd s, const ComplexDD& a) { return {a.re * s, a.im * s}; }
inline ComplexDD operator/(const ComplexDD& a, dd s) { return {a.re / s, a.im / s}; }
inline ComplexDD operator/(const ComplexDD& a, double s) { return {a.re / s, a.im / s}; }

// Scaled division (Smith's algorithm in double-double).
ComplexDD operator/(const ComplexDD& a, const ComplexDD& b);

inline ComplexDD times_i(const ComplexDD& a) { return {-a.im, a.re}; }
inline dd norm(const ComplexDD& a) { return a.re * a.re + a.im * a.im; }

// exp(a) for complex double-double a.
ComplexDD exp(const ComplexDD& a);

}  // namespace cpf
