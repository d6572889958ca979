#include "cpf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cpf/core.hpp"

namespace cpf::oracle {

namespace {

constexpr double kConvergedTol = 1e-25;
constexpr int kFirstConvergents = 64;
constexpr int kMaxConvergents = 1 << 17;

double dd_component_gap(const ComplexDD& a, const ComplexDD& b) {
  double scale = std::hypot(b.re.to_double(), b.im.to_double());
  if (scale == 0.0) return std::abs((a.re - b.re).to_double()) + std::abs((a.im - b.im).to_double());
  auto part = [scale](dd c, dd c_ref) {
    double d = std::abs((c - c_ref).to_double());
    double m = std::abs(c_ref.to_double());
    return m >= 1e-6 * scale ? d / m : d / scale;
  };
  return std::max(part(a.re, b.re), part(a.im, b.im));
}

ComplexDD w_cf_adaptive(double x, double y) {
  ComplexDD z{dd(x), dd(y)};
  int n = kFirstConvergents;
  ComplexDD prev = laplace_cf_dd(z, n);
  for (; n < kMaxConvergents; n *= 2) {
    ComplexDD next = laplace_cf_dd(z, 2 * n);
    bool done = dd_component_gap(prev, next) <= kConvergedTol;
    prev = next;
    if (done) break;
  }
  if (y == 0.0) prev.re = exp(-square(x));
  return prev;
}

ComplexDD w_series(double x, double y) {
  ComplexDD z{dd(x), dd(y)};
  ComplexDD z2(square(x) - square(y), dd(2.0 * x) * y);
  ComplexDD e = exp(-z2);
  ComplexDD s = dawson_scaled_series(z);
  return e + e * times_i(s) * dd_const::two_over_sqrt_pi();
}

ComplexDD first_quadrant(double x, double y, Path path) {
  if (path == Path::automatic) {
    path = (y < 2.0 && x * x + y * y < CrossoverBand::z_sq_hi) ? Path::series : Path::cf;
  }
  return path == Path::series ? w_series(x, y) : w_cf_adaptive(x, y);
}

}  // namespace

ComplexDD laplace_cf_dd(const ComplexDD& z, int convergents) {
  ComplexDD t;
  for (int n = convergents; n >= 1; --n) {
    t = ComplexDD(dd(0.5 * n)) / (z - t);
  }
  ComplexDD i_over_sqrt_pi(dd(0.0), dd_const::inv_sqrt_pi());
  return i_over_sqrt_pi / (z - t);
}

ComplexDD dawson_scaled_series(const ComplexDD& z) {
  ComplexDD z2 = z * z;
  ComplexDD term = z;
  ComplexDD sum = z;
  double mag = std::hypot(z.re.hi, z.im.hi);
  double peak = mag * mag;
  for (int n = 1; n < 4000; ++n) {
    term = term * z2 / static_cast<double>(n);
    ComplexDD add = term / static_cast<double>(2 * n + 1);
    sum = sum + add;
    double a = std::hypot(add.re.hi, add.im.hi);
    double s = std::hypot(sum.re.hi, sum.im.hi);
    if (n > peak && a <= 1e-36 * s) break;
  }
  return sum;
}

ComplexDD w_ref_dd(ComplexPoint z, Path path) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (z.has_nan()) return {dd(nan), dd(nan)};
  if (z.y < 0.0) {
    ComplexDD reflected = w_ref_dd({-z.x, -z.y}, path);
    ComplexDD z2(square(z.x) - square(z.y), dd(2.0 * z.x) * z.y);
    ComplexDD e = exp(-z2);
    return e * dd(2.0) - reflected;
  }
  if (z.x < 0.0) {
    ComplexDD v = first_quadrant(-z.x, z.y, path);
    return {v.re, -v.im};
  }
  return first_quadrant(z.x, z.y, path);
}

cplx w_ref(ComplexPoint z) { return w_ref_dd(z).to_complex(); }

std::string BoundaryReport::to_tsv() const {
  std::ostringstream os;
  os.precision(6);
  os << (method == Approx::cf_k ? "cf" : "series") << '\t' << order << '\t' << eps << '\t'
     << threshold_z_sq << '\t' << max_err_at_threshold;
  return os.str();
}

double arc_max_error(Approx method, int order, double z_sq, int arc_points) {
  double r = std::sqrt(z_sq);
  double theta_min = std::asin(std::min(1.0, 1.0 / r));
  double theta_max = std::numbers::pi / 2;
  double worst = 0.0;
  for (int j = 0; j < arc_points; ++j) {
    double t = arc_points > 1 ? static_cast<double>(j) / (arc_points - 1) : 0.0;
    double theta = theta_min + (theta_max - theta_min) * t;
    cplx z = std::polar(r, theta);
    if (j == arc_points - 1) z = {0.0, r};
    cplx v = method == Approx::cf_k ? laplace_cf(z, order) : asymptotic_series(z, order);
    worst = std::max(worst, component_error(v, w_ref(z)));
  }
  return worst;
}

BoundaryReport map_applicability(Approx method, int order, double eps, const ScanOptions& opts) {
  BoundaryReport rep{method, order, eps, std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::quiet_NaN()};
  auto grid = [&](int k) { return opts.start_z_sq * std::pow(opts.ratio, -k); };
  int coarse = std::max(1, static_cast<int>(std::lround(std::log(2.0) / std::log(opts.ratio))));

  // Coarse bracket on every coarse-th grid point, then the fine walk.
  int k = 0;
  int last_pass = -1;
  while (grid(k) >= opts.floor_z_sq) {
    double e = arc_max_error(method, order, grid(k), opts.arc_points);
    if (e > eps) break;
    last_pass = k;
    rep.threshold_z_sq = grid(k);
    rep.max_err_at_threshold = e;
    k += coarse;
  }
  if (last_pass < 0) return rep;
  for (int j = last_pass + 1; grid(j) >= opts.floor_z_sq; ++j) {
    double e = arc_max_error(method, order, grid(j), opts.arc_points);
    if (e > eps) break;
    rep.threshold_z_sq = grid(j);
    rep.max_err_at_threshold = e;
  }
  return rep;
}

}  // namespace cpf::oracle
