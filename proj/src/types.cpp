#include "cpf/types.hpp"

#include <algorithm>
#include <array>

namespace cpf {

namespace {
constexpr std::array<double, 10> kEps = {1e-4, 1e-5, 1e-6, 1e-7,  1e-8,
                                         1e-9, 1e-10, 1e-11, 1e-12, 1e-13};
}

AccuracyTarget::AccuracyTarget(int sdgt)
    : requested_(sdgt),
      sdgt_(std::clamp(sdgt, kMinDigits, kMaxDigits)),
      eps_(kEps[static_cast<std::size_t>(sdgt_ - kMinDigits)]),
      clamped_(sdgt != sdgt_) {}

RegionKey RegionKey::from(double x, double y) {
  double ax = std::abs(x);
  double ay = std::abs(y);
  constexpr double kScaleAbove = 6.703903964971298e+153;  // sqrt(r_max) / 2
  if (ax > kScaleAbove || ay > kScaleAbove) {
    // Every printed border is far below this, so saturating is harmless.
    double ysq = ay > kScaleAbove ? PlatformLimits::r_max : ay * ay;
    return {PlatformLimits::r_max, ysq};
  }
  double ysq = ay * ay;
  return {ax * ax + ysq, ysq};
}

std::string_view to_string(Major m) {
  switch (m) {
    case Major::I: return "I";
    case Major::II: return "II";
    case Major::III: return "III";
    case Major::IV: return "IV";
    case Major::V: return "V";
    case Major::VI: return "VI";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::cf: return "cf";
    case Method::series: return "series";
    case Method::dawson_taylor: return "dawson_taylor";
    case Method::humlicek_iv: return "humlicek_iv";
    case Method::hui_p6: return "hui_p6";
    case Method::residual_loop: return "residual_loop";
    case Method::real_axis: return "real_axis";
  }
  return "?";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::overflow_inf: return "overflow_inf";
    case Status::undefined_nan: return "undefined_nan";
    case Status::underflow_zero: return "underflow_zero";
  }
  return "?";
}

Status classify(cplx v) {
  if (std::isinf(v.real()) || std::isinf(v.imag())) return Status::overflow_inf;
  if (std::isnan(v.real()) || std::isnan(v.imag())) return Status::undefined_nan;
  return Status::ok;
}

double component_error(cplx value, cplx ref) {
  double scale = std::abs(ref);
  if (!std::isfinite(scale) || scale == 0.0) {
    return value == ref ? 0.0 : std::numeric_limits<double>::infinity();
  }
  auto part = [scale](double c, double c_ref) {
    double d = std::abs(c - c_ref);
    double a = std::abs(c_ref);
    return a >= 1e-6 * scale ? d / a : d / scale;
  };
  double e = std::max(part(value.real(), ref.real()), part(value.imag(), ref.imag()));
  return std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
}

}  // namespace cpf
