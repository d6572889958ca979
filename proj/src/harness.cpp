#include "cpf/harness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "cpf/core.hpp"
#include "cpf/derived.hpp"
#include "cpf/fresnel.hpp"

namespace cpf::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Field {
  std::string_view text;
  int column = 1;  // 1-based byte column of the first character
};

std::vector<Field> split_tabs(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    const std::string_view raw = line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start);
    out.push_back({trim(raw), static_cast<int>(start) + 1});
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool skip_line(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

double field_value(const Field& f, int line) {
  try {
    return parse_value(f.text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line, f.column + e.column - 1);
  }
}

int field_int(const Field& f, int line) {
  int v = 0;
  const char* end = f.text.data() + f.text.size();
  auto [p, ec] = std::from_chars(f.text.data(), end, v);
  if (ec != std::errc{} || p != end || f.text.empty()) {
    throw ParseError("expected an integer, got '" + std::string(f.text) + "'", line,
                     f.column + static_cast<int>(p - f.text.data()));
  }
  return v;
}

// Token split into sign, mantissa text and decimal exponent.
struct TokenParts {
  bool negative = false;
  std::string mantissa;  // digits and point, no sign
  int exponent = 0;
};

TokenParts split_token(std::string_view token) {
  TokenParts t;
  std::size_t i = 0;
  if (!token.empty() && (token[0] == '+' || token[0] == '-')) {
    t.negative = token[0] == '-';
    i = 1;
  }
  std::size_t e = token.find_first_of("DdEe", i);
  std::size_t exp_start = e == std::string_view::npos ? std::string_view::npos : e + 1;
  if (e == std::string_view::npos) {
    // exponent written without its letter: 0.1234-231
    e = token.find_first_of("+-", i);
    exp_start = e;
  }
  t.mantissa = std::string(token.substr(i, e == std::string_view::npos ? std::string_view::npos : e - i));
  if (exp_start != std::string_view::npos) {
    std::string_view ex = token.substr(exp_start);
    if (!ex.empty() && ex[0] == '+') ex.remove_prefix(1);
    std::from_chars(ex.data(), ex.data() + ex.size(), t.exponent);
  }
  return t;
}

std::string exponent_text(int e) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "E%c%02d", e < 0 ? '-' : '+', e < 0 ? -e : e);
  return buf;
}

EvalOutcome fresnel_s(ComplexPoint z, AccuracyTarget a) { return fresnel(FresnelKind::S, z, a); }
EvalOutcome fresnel_c(ComplexPoint z, AccuracyTarget a) { return fresnel(FresnelKind::C, z, a); }
EvalOutcome fresnel_s1(ComplexPoint z, AccuracyTarget a) { return fresnel(FresnelKind::S1, z, a); }
EvalOutcome fresnel_c1(ComplexPoint z, AccuracyTarget a) { return fresnel(FresnelKind::C1, z, a); }
EvalOutcome fresnel_s2(ComplexPoint z, AccuracyTarget a) { return fresnel(FresnelKind::S2, z, a); }
EvalOutcome fresnel_c2(ComplexPoint z, AccuracyTarget a) { return fresnel(FresnelKind::C2, z, a); }

struct NamedFunction {
  std::string_view name;
  Evaluator fn;
};

constexpr std::array<NamedFunction, 19> kFunctions = {{
    {"w", faddeyeva},
    {"erf", erf_c},
    {"erfc", erfc_c},
    {"erfi", erfi_c},
    {"erfcx", erfcx_c},
    {"dawson", dawson_c},
    {"zeta", plasma_zeta},
    {"fresnel_s", fresnel_s},
    {"fresnel_c", fresnel_c},
    {"fresnel_s1", fresnel_s1},
    {"fresnel_c1", fresnel_c1},
    {"fresnel_s2", fresnel_s2},
    {"fresnel_c2", fresnel_c2},
    // short aliases
    {"S", fresnel_s},
    {"C", fresnel_c},
    {"S1", fresnel_s1},
    {"C1", fresnel_c1},
    {"S2", fresnel_s2},
    {"C2", fresnel_c2},
}};

bool same_component(double got, double want) {
  if (std::isnan(want)) return std::isnan(got);
  if (std::isinf(want)) return got == want;
  return std::isfinite(got);
}

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

Major parse_major(std::string_view s) {
  for (Major m : {Major::I, Major::II, Major::III, Major::IV, Major::V, Major::VI}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown region '" + std::string(s) + "'");
}

double dump_number(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw std::invalid_argument("bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

ParseError::ParseError(const std::string& what, int line_no, int col)
    : std::runtime_error(what), line(line_no), column(col) {}

double parse_value(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw ParseError("empty value", 0, 1);
  if (token == "Infinity" || token == "+Infinity" || token == "Inf") return kInf;
  if (token == "-Infinity" || token == "-Inf") return -kInf;
  if (token == "NaN" || token == "-NaN") return kNaN;

  std::string text(token);
  // Map D exponents and the letterless form onto E.
  for (char& c : text) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  if (text.find_first_of("Ee") == std::string::npos) {
    const std::size_t sign = text.find_first_of("+-", 1);
    if (sign != std::string::npos) text.insert(sign, 1, 'E');
  }
  std::size_t offset = 0;
  if (text[0] == '+') offset = 1;
  double v = 0.0;
  const char* begin = text.data() + offset;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(begin, end, v);
  if (ec == std::errc::result_out_of_range) {
    // from_chars gives no value on over- or underflow; strtod keeps subnormals.
    return std::strtod(text.c_str(), nullptr);
  }
  if (ec != std::errc{} || p != end) {
    // Report the column in the original token; an inserted E shifts by one.
    int col = static_cast<int>(p - text.data()) + 1;
    if (text.size() > token.size() && col > 1) col -= 1;
    throw ParseError("cannot parse '" + std::string(token) + "' as a number", 0, col);
  }
  return v;
}

std::string format_value(double v, int mantissa_digits) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  mantissa_digits = std::max(mantissa_digits, 1);
  const std::string sign = std::signbit(v) ? "-" : "";
  if (v == 0.0) return sign + "0." + std::string(static_cast<std::size_t>(mantissa_digits), '0') + "E+00";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", mantissa_digits - 1, std::abs(v));
  // d.ddde+XX -> 0.dddd E(XX+1)
  const std::string s(buf);
  const std::size_t e = s.find('e');
  std::string digits = s.substr(0, 1) + (e > 2 ? s.substr(2, e - 2) : "");
  const int exponent = std::stoi(s.substr(e + 1)) + 1;
  return sign + "0." + digits + exponent_text(exponent);
}

int mantissa_digits(std::string_view token) {
  const TokenParts t = split_token(trim(token));
  const std::size_t dot = t.mantissa.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(t.mantissa.size() - dot - 1);
}

std::string canonical_token(std::string_view token) {
  token = trim(token);
  const double v = parse_value(token);
  if (!std::isfinite(v)) return format_value(v);
  const TokenParts t = split_token(token);
  const bool zero = t.mantissa.find_first_not_of("0.") == std::string::npos;
  return std::string(t.negative ? "-" : "") + t.mantissa + exponent_text(zero ? 0 : t.exponent);
}

std::vector<FixtureRow> parse_fixtures(std::istream& in) {
  std::vector<FixtureRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const std::vector<Field> f = split_tabs(line);
    if (f[0].text == "function") continue;
    if (f.size() < 7) {
      const int col = static_cast<int>(line.size()) + 1;
      throw ParseError("expected 7 tab-separated fields, found " + std::to_string(f.size()), line_no, col);
    }
    FixtureRow r;
    r.function = std::string(f[0].text);
    r.x = field_value(f[1], line_no);
    r.y = field_value(f[2], line_no);
    r.re_expected = field_value(f[3], line_no);
    r.im_expected = field_value(f[4], line_no);
    r.source = std::string(f[5].text);
    r.min_digits = field_int(f[6], line_no);
    r.line = line_no;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<FixtureRow> load_fixtures(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  return parse_fixtures(in);
}

std::vector<Erratum> parse_errata(std::istream& in) {
  std::vector<Erratum> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const std::vector<Field> f = split_tabs(line);
    if (f[0].text == "function") continue;
    if (f.size() < 7) {
      throw ParseError("expected at least 7 tab-separated fields", line_no, static_cast<int>(line.size()) + 1);
    }
    Erratum e;
    e.function = std::string(f[0].text);
    e.x = field_value(f[1], line_no);
    e.y = field_value(f[2], line_no);
    e.source = std::string(f[3].text);
    e.field = std::string(f[4].text);
    if (e.field != "re" && e.field != "im" && e.field != "x" && e.field != "y") {
      throw ParseError("field must be re, im, x or y", line_no, f[4].column);
    }
    e.value = field_value(f[5], line_no);
    e.kind = std::string(f[6].text);
    if (f.size() > 7) e.note = std::string(f[7].text);
    e.line = line_no;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Erratum> load_errata(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  return parse_errata(in);
}

int apply_errata(std::vector<FixtureRow>& rows, const std::vector<Erratum>& errata) {
  int changed = 0;
  for (FixtureRow& r : rows) {
    const double x0 = r.x;
    const double y0 = r.y;
    for (const Erratum& e : errata) {
      if (e.function != r.function || e.x != x0 || e.y != y0) continue;
      if (e.source != "*" && e.source != r.source) continue;
      double& target = e.field == "re" ? r.re_expected : e.field == "im" ? r.im_expected : e.field == "x" ? r.x : r.y;
      if (bits(target) == bits(e.value)) continue;
      target = e.value;
      r.corrections.push_back(e.kind + ": " + e.note);
      ++changed;
    }
  }
  return changed;
}

std::optional<Evaluator> find_function(std::string_view name) {
  for (const NamedFunction& f : kFunctions) {
    if (f.name == name) return f.fn;
  }
  return std::nullopt;
}

std::vector<std::string_view> function_names() {
  std::vector<std::string_view> out;
  for (const NamedFunction& f : kFunctions) out.push_back(f.name);
  return out;
}

double row_tolerance(const FixtureRow& row) {
  double tol = std::pow(10.0, -row.min_digits);
  if (row.function.starts_with("fresnel") && std::hypot(row.x, row.y) > kWideArgument) {
    tol = std::max(tol, kWideTolerance);
  }
  return tol;
}

RowResult verify_row(const FixtureRow& row, AccuracyTarget acc) {
  RowResult r;
  r.row = row;
  r.tolerance = row_tolerance(row);
  const std::optional<Evaluator> fn = find_function(row.function);
  if (!fn) {
    r.value = {kNaN, kNaN};
    r.status = Status::undefined_nan;
    r.error = kInf;
    return r;
  }
  const EvalOutcome out = (*fn)({row.x, row.y}, acc);
  r.value = out.value;
  r.status = out.status;
  if (row.finite()) {
    r.error = component_error(out.value, row.expected());
    r.pass = std::isfinite(out.value.real()) && std::isfinite(out.value.imag()) && r.error <= r.tolerance;
    return r;
  }
  // Inf/NaN rows: each component and the status must match the pattern.
  const cplx want = row.expected();
  bool match = same_component(out.value.real(), want.real()) && same_component(out.value.imag(), want.imag()) &&
               out.status == classify(want);
  // Finite components inside an Inf/NaN row are still checked against the tolerance.
  double err = 0.0;
  auto finite_part = [&](double got, double w) {
    if (std::isfinite(w) && std::isfinite(got)) {
      const double scale = std::abs(w);
      err = std::max(err, scale == 0.0 ? std::abs(got) : std::abs(got - w) / scale);
    }
  };
  finite_part(out.value.real(), want.real());
  finite_part(out.value.imag(), want.imag());
  r.error = match ? err : kInf;
  r.pass = match && err <= r.tolerance;
  return r;
}

FixtureReport verify_fixtures(const std::vector<FixtureRow>& rows, std::string_view source, AccuracyTarget acc) {
  FixtureReport report;
  for (const FixtureRow& row : rows) {
    if (!source.empty() && row.source != source) continue;
    RowResult r = verify_row(row, acc);
    if (!r.pass) ++report.failures;
    if (row.finite()) {
      const double digits = r.error > 0.0 ? -std::log10(r.error) : 17.0;
      report.worst_digits = std::min(report.worst_digits, digits);
    }
    report.rows.push_back(std::move(r));
  }
  return report;
}

FixtureReport verify_fixtures(const std::filesystem::path& file, std::string_view source, AccuracyTarget acc,
                              const std::vector<Erratum>& errata) {
  std::vector<FixtureRow> rows = load_fixtures(file);
  apply_errata(rows, errata);
  return verify_fixtures(rows, source, acc);
}

void write_report(std::ostream& out, const FixtureReport& report, bool failures_only) {
  char buf[512];
  for (const RowResult& r : report.rows) {
    if (failures_only && r.pass) continue;
    std::snprintf(buf, sizeof buf, "%s\t%s\t%.4g\t%.4g\t%.17g\t%.17g\t%s\t%.3g\t%.3g\t%s", r.pass ? "PASS" : "FAIL",
                  r.row.function.c_str(), r.row.x, r.row.y, r.value.real(), r.value.imag(),
                  std::string(to_string(r.status)).c_str(), r.error, r.tolerance, r.row.source.c_str());
    out << buf;
    if (!r.row.corrections.empty()) out << "\tcorrected";
    out << '\n';
  }
  std::snprintf(buf, sizeof buf, "# rows %zu  failures %d  worst digits %.2f\n", report.rows.size(), report.failures,
                report.worst_digits);
  out << buf;
}

BenchCase gen_case(int id, std::uint64_t seed) {
  struct CaseGrid {
    double y_lo_exp, y_hi, x_lo, x_hi;
  };
  // y spans 10^y_lo_exp .. y_hi on a log grid
  static constexpr std::array<CaseGrid, 4> kGrids = {{
      {-5.0, 1e5, -500.0, 500.0},
      {-20.0, 1e4, -200.0, 200.0},
      {-5.0, 1e5, -10.0, 10.0},
      {-20.0, 6.0, -6.0, 6.0},
  }};
  if (id < 1 || id > 4) throw std::invalid_argument("case id must be 1..4");
  const CaseGrid& s = kGrids[static_cast<std::size_t>(id - 1)];

  BenchCase c;
  c.id = id;
  c.seed = seed;
  c.x_lo = s.x_lo;
  c.x_hi = s.x_hi;
  const double lo = s.y_lo_exp;
  const double hi = std::log10(s.y_hi);
  c.y_grid.resize(kGridY);
  for (int i = 0; i < kGridY; ++i) c.y_grid[static_cast<std::size_t>(i)] = std::pow(10.0, lo + (hi - lo) * i / (kGridY - 1));
  c.y_grid.front() = std::pow(10.0, lo);
  c.y_grid.back() = s.y_hi;

  c.points.reserve(static_cast<std::size_t>(kCasePoints));
  if (id != 4) {
    for (double y : c.y_grid) {
      for (int j = 0; j < kGridX; ++j) {
        const double x = s.x_lo + (s.x_hi - s.x_lo) * j / (kGridX - 1);
        c.points.push_back({x, y});
      }
    }
    return c;
  }

  // x uniform on [-b, b] with b = sqrt(36 - y^2); draws that round outside
  // the disc are rejected and redrawn.
  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1p-53; };
  for (double y : c.y_grid) {
    const double b = std::sqrt(std::max(0.0, 36.0 - y * y));
    for (int j = 0; j < kGridX; ++j) {
      double x;
      do {
        x = b * (2.0 * unit() - 1.0);
      } while (x * x + y * y > 36.0);
      c.points.push_back({x, y});
    }
  }
  return c;
}

std::string TimingReport::tsv_header() { return "function\tsdgt\tcase\trepeats\tns_per_eval\tchecksum_re\tchecksum_im"; }

std::string TimingReport::to_tsv() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s\t%d\t%d\t%d\t%.3f\t%.17g\t%.17g", function.c_str(), sdgt, case_id, repeats,
                ns_per_eval, checksum.real(), checksum.imag());
  return buf;
}

TimingReport run_bench(std::string_view function, int sdgt, const BenchCase& bench, int repeats) {
  const std::optional<Evaluator> fn = find_function(function);
  if (!fn) throw std::invalid_argument("unknown function '" + std::string(function) + "'");
  if (repeats < 1) throw std::invalid_argument("repeats must be positive");
  const Evaluator eval = *fn;
  const AccuracyTarget acc(sdgt);

  TimingReport rep;
  rep.function = std::string(function);
  rep.sdgt = acc.sdgt();
  rep.case_id = bench.id;
  rep.repeats = repeats;

  std::chrono::steady_clock::duration total{};
  for (int r = 0; r < repeats; ++r) {
    double sum_re = 0.0;
    double sum_im = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (const ComplexPoint& z : bench.points) {
      const cplx v = eval(z, acc).value;
      if (std::isfinite(v.real())) sum_re += v.real();
      if (std::isfinite(v.imag())) sum_im += v.imag();
    }
    total += std::chrono::steady_clock::now() - t0;
    const cplx sum(sum_re, sum_im);
    if (r == 0) {
      rep.checksum = sum;
    } else if (bits(sum.real()) != bits(rep.checksum.real()) || bits(sum.imag()) != bits(rep.checksum.imag())) {
      rep.stable = false;
    }
  }
  const double ns = static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(total).count());
  const double evals = static_cast<double>(repeats) * static_cast<double>(std::max<std::size_t>(bench.points.size(), 1));
  rep.ns_per_eval = ns / evals;
  return rep;
}

std::string region_dump(AccuracyTarget acc) {
  std::ostringstream out;
  out << "# sdgt " << acc.sdgt() << "\n# major\tsub\tmethod\torder\tz_sq_lo\tz_sq_hi\ty_sq_lo\tlo_incl\ty_sq_hi\thi_incl\n";
  char buf[320];
  for (const RegionRule& r : region_rules(acc)) {
    std::snprintf(buf, sizeof buf, "%s\t%d\t%s\t%d\t%.17g\t%.17g\t%.17g\t%d\t%.17g\t%d\n",
                  std::string(to_string(r.id.major)).c_str(), r.id.sub, std::string(to_string(r.method)).c_str(),
                  r.order, r.z_sq_lo, r.z_sq_hi, r.y_sq_lo, r.y_sq_lo_inclusive ? 1 : 0, r.y_sq_hi,
                  r.y_sq_hi_inclusive ? 1 : 0);
    out << buf;
  }
  return out.str();
}

std::vector<DumpRow> parse_region_dump(std::string_view text) {
  std::vector<DumpRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    const std::vector<Field> f = split_tabs(line);
    if (f.size() != 10) throw std::invalid_argument("region dump line needs 10 fields: " + line);
    DumpRow r;
    r.id = {parse_major(f[0].text), static_cast<int>(dump_number(f[1].text))};
    r.method = std::string(f[2].text);
    r.z_sq_lo = dump_number(f[4].text);
    r.z_sq_hi = dump_number(f[5].text);
    r.y_sq_lo = dump_number(f[6].text);
    r.lo_incl = f[7].text == "1";
    r.y_sq_hi = dump_number(f[8].text);
    r.hi_incl = f[9].text == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::optional<RegionId> classify_with_dump(const std::vector<DumpRow>& rows, RegionKey key) {
  for (const DumpRow& r : rows) {
    if (!(key.z_sq >= r.z_sq_lo && key.z_sq < r.z_sq_hi)) continue;
    const bool lo = r.lo_incl ? key.y_sq >= r.y_sq_lo : key.y_sq > r.y_sq_lo;
    const bool hi = r.hi_incl ? key.y_sq <= r.y_sq_hi : key.y_sq < r.y_sq_hi;
    if (lo && hi) return r.id;
  }
  return std::nullopt;
}

}  // namespace cpf::harness
