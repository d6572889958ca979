// Shared value types: arguments, accuracy targets, region labels, outcomes.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string_view>

namespace cpf {

using cplx = std::complex<double>;

struct ComplexPoint {
  double x = 0.0;
  double y = 0.0;

  constexpr ComplexPoint() = default;
  constexpr ComplexPoint(double re, double im) : x(re), y(im) {}
  ComplexPoint(cplx z) : x(z.real()), y(z.imag()) {}

  cplx value() const { return {x, y}; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
  bool has_nan() const { return std::isnan(x) || std::isnan(y); }
};

// Requested significant digits, clamped into [4, 13].
class AccuracyTarget {
 public:
  static constexpr int kMinDigits = 4;
  static constexpr int kMaxDigits = 13;

  AccuracyTarget(int sdgt = kMaxDigits);

  int sdgt() const { return sdgt_; }
  double eps() const { return eps_; }
  // True when the requested digit count was outside [4, 13].
  bool clamped() const { return clamped_; }
  int requested() const { return requested_; }

 private:
  int requested_;
  int sdgt_;
  double eps_;
  bool clamped_;
};

struct PlatformLimits {
  static constexpr double r_min = std::numeric_limits<double>::min();
  static constexpr double r_max = std::numeric_limits<double>::max();
  // sqrt(-ln r_min)
  static constexpr double x_huge = 26.615717509251260;
  // ln r_max
  static constexpr double ln_r_max = 709.78271289338397;
  // ln of the smallest subnormal
  static constexpr double ln_denorm_min = -744.44007192138126;
};

struct RegionKey {
  double z_sq = 0.0;
  double y_sq = 0.0;

  static RegionKey from(double x, double y);
};

enum class Major { I, II, III, IV, V, VI };

struct RegionId {
  Major major = Major::VI;
  int sub = 0;

  friend bool operator==(const RegionId&, const RegionId&) = default;
};

enum class Method { cf, series, dawson_taylor, humlicek_iv, hui_p6, residual_loop, real_axis };

enum class Status { ok, overflow_inf, undefined_nan, underflow_zero };

struct MethodState {
  cplx alpha;
  int k = 1;
  int m = 0;
};

struct EvalOutcome {
  cplx value;
  Status status = Status::ok;
  RegionId region;
  Method method = Method::real_axis;
};

std::string_view to_string(Major m);
std::string_view to_string(Method m);
std::string_view to_string(Status s);

// Status implied by the components of a value: NaN is undefined, otherwise
// any infinity is an overflow.
Status classify(cplx v);

// Componentwise error: each part relative to itself unless it is below
// 1e-6 |ref|, in which case relative to |ref|. Returns the larger part.
double component_error(cplx value, cplx ref);

}  // namespace cpf
