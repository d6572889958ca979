// Fixture verification, benchmark datasets and timing, region-map dumps.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cpf/types.hpp"

namespace cpf::harness {

// ---- fixture values ----

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int column);
  int line;
  int column;
};

// Reads "0.1234D+05", "0.1234E-5", "0.4441265477758837-231" (exponent with the
// letter missing), "Infinity", "-Infinity", "NaN". Throws ParseError with
// column 1 on failure; callers rewrite the position.
double parse_value(std::string_view token);

// Canonical form 0.dddd...E+XX with `mantissa_digits` digits after the point.
std::string format_value(double v, int mantissa_digits = 16);

// Canonical form of a raw token, for round-trip checks; digit count is kept.
std::string canonical_token(std::string_view token);

// Number of mantissa digits after the point in a raw token.
int mantissa_digits(std::string_view token);

struct FixtureRow {
  std::string function;
  double x = 0.0;
  double y = 0.0;
  double re_expected = 0.0;
  double im_expected = 0.0;
  std::string source;
  int min_digits = 13;
  int line = 0;
  std::vector<std::string> corrections;  // notes of applied errata

  cplx expected() const { return {re_expected, im_expected}; }
  bool finite() const { return std::isfinite(re_expected) && std::isfinite(im_expected); }
};

struct Erratum {
  std::string function;
  double x = 0.0;
  double y = 0.0;
  std::string source;  // "*" for every source
  std::string field;   // re, im, x or y
  double value = 0.0;
  std::string kind;
  std::string note;
  int line = 0;
};

std::vector<FixtureRow> parse_fixtures(std::istream& in);
std::vector<FixtureRow> load_fixtures(const std::filesystem::path& file);
std::vector<Erratum> parse_errata(std::istream& in);
std::vector<Erratum> load_errata(const std::filesystem::path& file);

// Applies every erratum whose function, x, y and source match a row (matched
// on the row's original coordinates). Returns the number of fields changed.
int apply_errata(std::vector<FixtureRow>& rows, const std::vector<Erratum>& errata);

// ---- evaluation by name ----

// Names: w, erf, erfc, erfi, erfcx, dawson, zeta, fresnel_s, fresnel_c,
// fresnel_s1, fresnel_c1, fresnel_s2, fresnel_c2 (S, C, ... also accepted).
using Evaluator = EvalOutcome (*)(ComplexPoint, AccuracyTarget);
std::optional<Evaluator> find_function(std::string_view name);
std::vector<std::string_view> function_names();

// ---- verification ----

struct RowResult {
  FixtureRow row;
  cplx value;
  Status status = Status::ok;
  double error = 0.0;    // componentwise error, 0 for matched Inf/NaN rows
  double tolerance = 0.0;
  bool pass = false;
};

struct FixtureReport {
  std::vector<RowResult> rows;
  int failures = 0;
  // Smallest -log10(error) over finite rows; 17 when every row is exact.
  double worst_digits = 17.0;

  bool pass() const { return failures == 0; }
};

// Fresnel rows with |z| above this use at least kWideTolerance.
inline constexpr double kWideArgument = 20.0;
inline constexpr double kWideTolerance = 5e-10;

double row_tolerance(const FixtureRow& row);
RowResult verify_row(const FixtureRow& row, AccuracyTarget acc = {});

// Rows whose source differs from `source` are skipped; an empty source keeps all.
FixtureReport verify_fixtures(const std::vector<FixtureRow>& rows, std::string_view source = {},
                              AccuracyTarget acc = {});
FixtureReport verify_fixtures(const std::filesystem::path& file, std::string_view source = {},
                              AccuracyTarget acc = {}, const std::vector<Erratum>& errata = {});

void write_report(std::ostream& out, const FixtureReport& report, bool failures_only = false);

// ---- benchmark datasets ----

inline constexpr int kGridY = 71;
inline constexpr int kGridX = 40001;
inline constexpr std::int64_t kCasePoints = std::int64_t{kGridY} * kGridX;

struct BenchCase {
  int id = 1;
  std::uint64_t seed = 0;
  std::vector<double> y_grid;
  double x_lo = 0.0;  // grid cases; case 4 spans the disc
  double x_hi = 0.0;
  std::vector<ComplexPoint> points;

  std::int64_t total_points() const { return static_cast<std::int64_t>(points.size()); }
};

// Cases 1-3 ignore the seed. Throws std::invalid_argument for id outside 1..4.
BenchCase gen_case(int id, std::uint64_t seed = 1);

struct TimingReport {
  std::string function;
  int sdgt = 13;
  int case_id = 1;
  int repeats = 10;
  double ns_per_eval = 0.0;
  cplx checksum;
  // Every repeat produced the same checksum bit for bit.
  bool stable = true;

  std::string to_tsv() const;
  static std::string tsv_header();
};

// Single-threaded; the checksum sums the finite components of every output.
TimingReport run_bench(std::string_view function, int sdgt, const BenchCase& bench, int repeats = 10);

// ---- region map dump ----

// One TSV line per border rule in matching order:
// major sub method order z_sq_lo z_sq_hi y_sq_lo lo_incl y_sq_hi hi_incl
std::string region_dump(AccuracyTarget acc);

struct DumpRow {
  RegionId id;
  std::string method;
  double z_sq_lo, z_sq_hi, y_sq_lo, y_sq_hi;
  bool lo_incl, hi_incl;
};

std::vector<DumpRow> parse_region_dump(std::string_view text);

// First matching dump row, or nullopt when none matches.
std::optional<RegionId> classify_with_dump(const std::vector<DumpRow>& rows, RegionKey key);

}  // namespace cpf::harness
