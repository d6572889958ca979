// Dawson's integral Daw(x) = exp(-x^2) * integral_0^x exp(t^2) dt for real x.
#pragma once

#include <vector>

namespace cpf {

double daw_real(double x);

// Daw(x) together with Daw'(x) = 1 - 2x Daw(x), the latter computed without
// the cancellation that the formula suffers for large x.
struct DawsonValue {
  double value = 0.0;
  double slope = 1.0;
};
DawsonValue daw_real_with_slope(double x);

struct DawsonTaylorCoefficients {
  std::vector<double> d;
  double x0 = 0.0;

  // sum d_n h^n
  double evaluate(double h) const;
};

// d_0 = Daw(x0), d_1 = 1 - 2 x0 d_0, d_{n+1} = -(2/(n+1)) (x0 d_n + d_{n-1}); n_max <= 24.
DawsonTaylorCoefficients taylor_coeffs(double x0, int n_max);

}  // namespace cpf
