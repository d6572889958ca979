// Double-double reference evaluator for w(z) and the applicability scan of
// the truncated continued fraction / asymptotic series.
#pragma once

#include <string>

#include "cpf/dd.hpp"
#include "cpf/types.hpp"

namespace cpf::oracle {

enum class Path { automatic, cf, series };

// Either path can be forced for self-consistency checks. automatic picks
// the series for y < 2 with |z|^2 < 81 and the continued fraction elsewhere.
ComplexDD w_ref_dd(ComplexPoint z, Path path = Path::automatic);

// Rounded to double; components may overflow to +-inf in the lower half plane.
cplx w_ref(ComplexPoint z);

// Continued fraction with a fixed number of convergents (backward recurrence).
ComplexDD laplace_cf_dd(const ComplexDD& z, int convergents);

// Maclaurin series of exp(z^2) Daw(z); valid wherever exp(x^2 + y^2) stays finite.
ComplexDD dawson_scaled_series(const ComplexDD& z);

// The region where both paths are accurate: 1.5 <= y <= 2.5, |z|^2 < 81.
struct CrossoverBand {
  static constexpr double y_lo = 1.5;
  static constexpr double y_hi = 2.5;
  static constexpr double z_sq_hi = 81.0;
};

enum class Approx { cf_k, series_m };

struct BoundaryReport {
  Approx method = Approx::cf_k;
  int order = 1;
  double eps = 0.0;
  double threshold_z_sq = 0.0;
  double max_err_at_threshold = 0.0;

  std::string to_tsv() const;
};

struct ScanOptions {
  double ratio = 1.02;
  int arc_points = 128;
  double start_z_sq = 1e16;
  double floor_z_sq = 2.0;
};

BoundaryReport map_applicability(Approx method, int order, double eps, const ScanOptions& opts = {});

// Largest arc error of one method on the first-quadrant arc of radius^2 z_sq.
double arc_max_error(Approx method, int order, double z_sq, int arc_points);

}  // namespace cpf::oracle
