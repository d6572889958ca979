#include "cpf/dawson.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "cpf/dd.hpp"

namespace cpf {

namespace {

// Centers j/16 for j = 0..128 with Daw and Daw' in double-double. The values
// come from stepping the Dawson ODE from the origin with the Taylor
// recursion, so no reference data is embedded.
constexpr int kCentersPerUnit = 16;
constexpr double kTableEnd = 8.0;
constexpr int kCenters = static_cast<int>(kTableEnd) * kCentersPerUnit + 1;

struct Center {
  dd value;
  dd slope;
};

std::array<Center, kCenters> build_centers() {
  std::array<Center, kCenters> table{};
  dd d_prev;  // Daw at the current center
  dd s_prev = 1.0;
  table[0] = {d_prev, s_prev};
  constexpr double h = 1.0 / kCentersPerUnit;
  constexpr int kTerms = 48;
  for (int j = 1; j < kCenters; ++j) {
    double c = static_cast<double>(j - 1) / kCentersPerUnit;
    std::array<dd, kTerms + 1> d{};
    d[0] = d_prev;
    d[1] = s_prev;
    for (int n = 1; n < kTerms; ++n) {
      d[n + 1] = -(d[n] * c + d[n - 1]) * (2.0 / (n + 1));
    }
    dd value, slope;
    for (int n = kTerms; n >= 1; --n) {
      value = (value + d[n]) * h;
      slope = slope * h + d[n] * static_cast<double>(n);
    }
    value += d[0];
    d_prev = value;
    s_prev = slope;
    table[j] = {value, slope};
  }
  return table;
}

const std::array<Center, kCenters>& centers() {
  static const std::array<Center, kCenters> table = build_centers();
  return table;
}

DawsonValue maclaurin(double x) {
  // Daw(x) = sum (-1)^n 2^n x^(2n+1) / (2n+1)!!
  double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 60; ++n) {
    term *= -2.0 * x2 / (2 * n + 1);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return {sum, std::fma(-2.0 * x, sum, 1.0)};
}

DawsonValue from_centers(double x) {
  int j = static_cast<int>(std::lround(x * kCentersPerUnit));
  const Center& ctr = centers()[static_cast<std::size_t>(j)];
  double c = static_cast<double>(j) / kCentersPerUnit;
  double h = x - c;

  constexpr int kTerms = 24;
  std::array<double, kTerms + 1> d{};
  d[0] = ctr.value.to_double();
  d[1] = ctr.slope.to_double();
  int last = 1;
  double hn = std::abs(h);
  for (int n = 1; n < kTerms; ++n) {
    d[n + 1] = -(2.0 / (n + 1)) * (c * d[n] + d[n - 1]);
    hn *= std::abs(h);
    last = n + 1;
    if (std::abs(d[n + 1]) * hn <= 1e-19 * std::abs(d[0])) break;
  }
  double tail_v = 0.0;
  double tail_s = 0.0;
  for (int n = last; n >= 2; --n) {
    tail_v = (tail_v + d[static_cast<std::size_t>(n)]) * h;
    tail_s = tail_s * h + n * d[static_cast<std::size_t>(n)];
  }
  // value = d0 + h (d1 + tail_v), slope = d1 + h tail_s, each rounded once at the end.
  double value = ctr.value.hi + (ctr.value.lo + h * (ctr.slope.to_double() + tail_v));
  double slope = ctr.slope.hi + (ctr.slope.lo + h * tail_s);
  return {value, slope};
}

DawsonValue asymptotic(double x) {
  if (x > 1e8) return {0.5 / x, -0.5 / x / x};
  // 2x Daw(x) ~ sum (2m-1)!! / (2x^2)^m
  double r = 0.5 / (x * x);
  double term = 1.0;
  double tail = 0.0;  // terms with m >= 1
  for (int m = 1; m < 200; ++m) {
    double next = term * (2 * m - 1) * r;
    if (next > term) break;
    term = next;
    tail += term;
    if (term <= 1e-18 * tail) break;
  }
  return {(1.0 + tail) * (0.5 / x), -tail};
}

}  // namespace

DawsonValue daw_real_with_slope(double x) {
  if (std::isnan(x)) return {x, x};
  double ax = std::abs(x);
  DawsonValue v;
  if (ax <= 1.0) {
    v = maclaurin(ax);
  } else if (ax <= kTableEnd) {
    v = from_centers(ax);
  } else if (std::isinf(ax)) {
    v = {0.0, 0.0};
  } else {
    v = asymptotic(ax);
  }
  if (x < 0.0) v.value = -v.value;
  return v;
}

double daw_real(double x) { return daw_real_with_slope(x).value; }

double DawsonTaylorCoefficients::evaluate(double h) const {
  double s = 0.0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) s = s * h + *it;
  return s;
}

DawsonTaylorCoefficients taylor_coeffs(double x0, int n_max) {
  if (n_max < 0 || n_max > 24) throw std::invalid_argument("taylor_coeffs: n_max must lie in [0, 24]");
  DawsonTaylorCoefficients out;
  out.x0 = x0;
  out.d.resize(static_cast<std::size_t>(n_max) + 1);
  out.d[0] = daw_real(x0);
  if (n_max >= 1) out.d[1] = 1.0 - 2.0 * x0 * out.d[0];
  for (int n = 1; n < n_max; ++n) {
    auto k = static_cast<std::size_t>(n);
    out.d[k + 1] = -(2.0 / (n + 1)) * (x0 * out.d[k] + out.d[k - 1]);
  }
  return out;
}

}  // namespace cpf
