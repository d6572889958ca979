// Fresnel integrals S(z), C(z) and the rescaled S1/C1, S2/C2 conventions.
#pragma once

#include <utility>

#include "cpf/types.hpp"

namespace cpf {

enum class FresnelKind { S, C, S1, C1, S2, C2 };

// u_minus = (1 - i) sqrt(pi) z / 2, u_plus = (1 + i) sqrt(pi) z / 2
struct FresnelArgPair {
  cplx u_minus;
  cplx u_plus;

  static FresnelArgPair from(cplx z);
};

EvalOutcome fresnel(FresnelKind kind, ComplexPoint z, AccuracyTarget acc = {});

// (cos(pi x^2 / 2), sin(pi x^2 / 2)) with x^2 reduced modulo 4 in double-double.
std::pair<double, double> phase_cos_sin(double x);

}  // namespace cpf
