#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cpf/harness.hpp"
#include "cpf/oracle.hpp"

using namespace cpf;

namespace {

double rel(dd a, dd b) {
  const double d = std::abs((a - b).to_double());
  return b.hi == 0.0 ? d : d / std::abs(b.hi);
}

double gap(const ComplexDD& a, const ComplexDD& b) {
  const double scale = std::hypot(b.re.hi, b.im.hi);
  return std::max(std::abs((a.re - b.re).to_double()), std::abs((a.im - b.im).to_double())) / scale;
}

}  // namespace

TEST_CASE("w_ref at the origin and on the real axis") {
  const ComplexDD w0 = oracle::w_ref_dd({0.0, 0.0});
  CHECK(w0.re.hi == 1.0);
  CHECK(w0.re.lo == 0.0);
  CHECK(w0.im.hi == 0.0);
  for (double x : {1.0, 5.0, 20.0}) {
    const ComplexDD w = oracle::w_ref_dd({x, 0.0});
    CHECK(rel(w.re, exp(-square(x))) <= 1e-20);
  }
}

TEST_CASE("w_ref symmetries") {
  const ComplexDD a = oracle::w_ref_dd({1.5, 0.7});
  const ComplexDD b = oracle::w_ref_dd({-1.5, 0.7});
  CHECK(a.re == b.re);
  CHECK(a.im == -b.im);
  // w(z) + w(-z) = 2 exp(-z^2)
  const ComplexDD lower = oracle::w_ref_dd({-1.5, -0.7});
  const ComplexDD z2(square(1.5) - square(0.7), dd(2.0 * 1.5) * 0.7);
  const ComplexDD two_e = exp(-z2) * dd(2.0);
  CHECK(gap(a + lower, two_e) <= 1e-25);
}

TEST_CASE("series and continued fraction paths agree on the crossover band") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ys(oracle::CrossoverBand::y_lo, oracle::CrossoverBand::y_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double y = ys(gen);
    const double x = unit(gen) * std::sqrt(oracle::CrossoverBand::z_sq_hi - y * y);
    const ComplexDD s = oracle::w_ref_dd({x, y}, oracle::Path::series);
    const ComplexDD c = oracle::w_ref_dd({x, y}, oracle::Path::cf);
    worst = std::max(worst, gap(s, c));
  }
  CHECK(worst <= 1e-20);
}

TEST_CASE("w_ref reproduces the erfc reference table through erfc(z) = exp(-z^2) w(iz)") {
  auto rows = harness::load_fixtures(CPF_FIXTURE_DIR "/erfc.tsv");
  harness::apply_errata(rows, harness::load_errata(CPF_FIXTURE_DIR "/errata.tsv"));
  int checked = 0;
  for (const auto& r : rows) {
    if (r.source != "present" || !r.finite() || r.x <= 0.0) continue;
    if (std::abs(r.x * r.x - r.y * r.y) > 700.0) continue;  // keep exp(-z^2) inside double range
    const ComplexDD z2(square(r.x) - square(r.y), dd(2.0 * r.x) * r.y);
    const ComplexDD v = exp(-z2) * oracle::w_ref_dd({-r.y, r.x});
    INFO("x = " << r.x << ", y = " << r.y);
    CHECK(component_error(v.to_complex(), r.expected()) <= 1e-13);
    ++checked;
  }
  CHECK(checked >= 25);
}

TEST_CASE("w_ref_dd propagates NaN") {
  const ComplexDD v = oracle::w_ref_dd({std::nan(""), 1.0});
  CHECK(std::isnan(v.re.hi));
}

TEST_CASE("boundary reports") {
  oracle::ScanOptions coarse;
  coarse.ratio = 1.1;
  coarse.arc_points = 24;
  coarse.start_z_sq = 1e8;

  SUBCASE("thresholds do not increase with the order") {
    double prev = INFINITY;
    for (int k = 3; k <= 6; ++k) {
      const auto rep = oracle::map_applicability(oracle::Approx::cf_k, k, 1e-8, coarse);
      CHECK(rep.threshold_z_sq <= prev);
      CHECK(rep.max_err_at_threshold <= 1e-8);
      prev = rep.threshold_z_sq;
    }
  }
  SUBCASE("report serializes to one tab-separated row") {
    const auto rep = oracle::map_applicability(oracle::Approx::series_m, 1, 1e-4, coarse);
    const std::string row = rep.to_tsv();
    CHECK(row.starts_with("series\t1\t"));
    CHECK(std::count(row.begin(), row.end(), '\t') == 4);
    CHECK(row.find('\n') == std::string::npos);
  }
  SUBCASE("arc error falls with |z|") {
    const double near = oracle::arc_max_error(oracle::Approx::cf_k, 6, 100.0, 24);
    const double far = oracle::arc_max_error(oracle::Approx::cf_k, 6, 1000.0, 24);
    CHECK(far < near);
  }
}
