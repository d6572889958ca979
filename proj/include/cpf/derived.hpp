// Error-function family, Dawson's integral and the plasma dispersion function
// for complex arguments, all expressed through w(z).
#pragma once

#include "cpf/types.hpp"

namespace cpf {

enum class DerivedKind { erf, erfc, erfi, erfcx, dawson_z, plasma_zeta };

struct DerivedRequest {
  DerivedKind kind = DerivedKind::erfc;
  ComplexPoint z;
  AccuracyTarget acc;
};

EvalOutcome erfc_c(ComplexPoint z, AccuracyTarget acc = {});
EvalOutcome erf_c(ComplexPoint z, AccuracyTarget acc = {});
EvalOutcome erfi_c(ComplexPoint z, AccuracyTarget acc = {});
EvalOutcome erfcx_c(ComplexPoint z, AccuracyTarget acc = {});
EvalOutcome dawson_c(ComplexPoint z, AccuracyTarget acc = {});
EvalOutcome plasma_zeta(ComplexPoint z, AccuracyTarget acc = {});

EvalOutcome evaluate(const DerivedRequest& req);

}  // namespace cpf
