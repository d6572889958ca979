// Command-line front end: eval, fixtures, bench, regions, map.
#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>

#include "cpf/harness.hpp"
#include "cpf/oracle.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kFixtureFailure = 1;

// Shortest round-trip form; integral values keep a ".0".
std::string number_text(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

cpf::AccuracyTarget digits_target(int digits) {
  cpf::AccuracyTarget acc(digits);
  if (acc.clamped()) {
    std::cerr << "warning: --digits " << digits << " clamped to " << acc.sdgt() << "\n";
  }
  return acc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-accuracy Faddeyeva function toolkit"};
  app.require_subcommand(1);

  int digits = 13;

  auto* eval = app.add_subcommand("eval", "Evaluate a function at x + iy; prints re, im, status");
  std::string fn_name, x_text, y_text;
  eval->add_option("fn", fn_name, "w, erf, erfc, erfi, erfcx, dawson, zeta, fresnel_s, fresnel_c, ...")->required();
  eval->add_option("x", x_text, "real part")->required();
  eval->add_option("y", y_text, "imaginary part")->required();
  eval->add_option("--digits", digits, "significant digits, 4..13");

  auto* fixtures = app.add_subcommand("fixtures", "Verify a fixture TSV file");
  std::string fixture_file, source, errata_file;
  bool verbose = false;
  fixtures->add_option("file", fixture_file, "fixture TSV")->required();
  fixtures->add_option("--source", source, "only rows from this source column (present, matlab, ...)");
  fixtures->add_option("--errata", errata_file, "errata TSV applied before checking");
  fixtures->add_flag("--verbose,-v", verbose, "print every row, not only failures");
  fixtures->add_option("--digits", digits, "evaluation accuracy, 4..13");

  auto* bench = app.add_subcommand("bench", "Time a function over a benchmark case");
  std::string bench_fn;
  int case_id = 3;
  int repeats = 10;
  std::uint64_t seed = 1;
  bench->add_option("fn", bench_fn, "function name")->required();
  bench->add_option("--case", case_id, "benchmark case 1..4")->check(CLI::Range(1, 4));
  bench->add_option("--digits", digits, "significant digits, 4..13");
  bench->add_option("--repeats", repeats, "timed passes over the data")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "seed for case 4");

  auto* regions = app.add_subcommand("regions", "Dump the region border map");
  regions->add_option("--digits", digits, "significant digits, 4..13");

  auto* map = app.add_subcommand("map", "Scan the applicability border of a large-|z| method");
  std::string method = "cf";
  int order = 6;
  double eps = 1e-13;
  map->add_option("--method", method, "cf or series")->check(CLI::IsMember({"cf", "series"}));
  map->add_option("--order", order, "convergents (cf, 1..6) or retained terms (series, 0..9)");
  map->add_option("--eps", eps, "target relative error, 1e-4..1e-13");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*eval) {
      const auto fn = cpf::harness::find_function(fn_name);
      if (!fn) {
        std::cerr << "error: unknown function '" << fn_name << "'\n";
        return kUsageError;
      }
      double x = 0.0, y = 0.0;
      try {
        x = cpf::harness::parse_value(x_text);
        y = cpf::harness::parse_value(y_text);
      } catch (const cpf::harness::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
      }
      const cpf::EvalOutcome out = (*fn)({x, y}, digits_target(digits));
      std::cout << number_text(out.value.real()) << '\t' << number_text(out.value.imag()) << '\t'
                << cpf::to_string(out.status) << '\n';
      return 0;
    }

    if (*fixtures) {
      std::vector<cpf::harness::Erratum> errata;
      if (!errata_file.empty()) errata = cpf::harness::load_errata(errata_file);
      const auto report = cpf::harness::verify_fixtures(fixture_file, source, digits_target(digits), errata);
      cpf::harness::write_report(std::cout, report, !verbose);
      return report.pass() ? 0 : kFixtureFailure;
    }

    if (*bench) {
      if (!cpf::harness::find_function(bench_fn)) {
        std::cerr << "error: unknown function '" << bench_fn << "'\n";
        return kUsageError;
      }
      const cpf::AccuracyTarget acc = digits_target(digits);
      const auto data = cpf::harness::gen_case(case_id, seed);
      const auto rep = cpf::harness::run_bench(bench_fn, acc.sdgt(), data, repeats);
      std::cout << cpf::harness::TimingReport::tsv_header() << '\n' << rep.to_tsv() << '\n';
      if (!rep.stable) std::cerr << "warning: checksum changed between repeats\n";
      return 0;
    }

    if (*regions) {
      std::cout << cpf::harness::region_dump(digits_target(digits));
      return 0;
    }

    if (*map) {
      const bool cf = method == "cf";
      if (cf ? (order < 1 || order > 6) : (order < 0 || order > 9)) {
        std::cerr << "error: --order out of range for " << method << "\n";
        return kUsageError;
      }
      if (!(eps >= 1e-13 * 0.999 && eps <= 1e-4 * 1.001)) {
        std::cerr << "error: --eps must lie in [1e-13, 1e-4]\n";
        return kUsageError;
      }
      const auto rep = cpf::oracle::map_applicability(cf ? cpf::oracle::Approx::cf_k : cpf::oracle::Approx::series_m,
                                                      order, eps);
      std::cout << "method\torder\teps\tthreshold_z_sq\tmax_err\n" << rep.to_tsv() << '\n';
      return 0;
    }
  } catch (const cpf::harness::ParseError& e) {
    std::cerr << "error: line " << e.line << ", column " << e.column << ": " << e.what() << "\n";
    return kFixtureFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFixtureFailure;
  }
  return kUsageError;
}
