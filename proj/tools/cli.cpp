#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cauchy/distributions.hpp"
#include "cauchy/errors.hpp"
#include "cauchy/estimation.hpp"
#include "cauchy/gof.hpp"
#include "cauchy/oracle.hpp"
#include "cauchy/report_json.hpp"
#include "cauchy/sample_io.hpp"
#include "cauchy/transforms.hpp"

namespace cauchy::cli {

namespace {

namespace fs = std::filesystem;

// Raised when a fit or test ran but did not reach a trustworthy answer; the
// report is still printed to stdout for diagnosis.
struct NumericalOutcome {
  std::string message;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

// "a1,a2,..." or "start:stop:count".
std::vector<double> parse_real_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw DomainError("range grid must look like start:stop:count");
    const double start = parse_real(parts[0]);
    const double stop = parse_real(parts[1]);
    const double count = parse_real(parts[2]);
    if (count < 1 || count != std::floor(count)) throw DomainError("grid count must be a positive integer");
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t k = 0; k < n; ++k) {
      grid.push_back(n == 1 ? start : start + (stop - start) * k / static_cast<double>(n - 1));
    }
    return grid;
  }
  std::vector<double> grid;
  for (const auto& part : split(text, ',')) grid.push_back(parse_real(part));
  if (grid.empty()) throw DomainError("grid is empty");
  return grid;
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_complex(part));
  if (out.empty()) throw DomainError("complex list is empty");
  return out;
}

std::vector<MellinExponent> exponent_grid(const std::string& text,
                                          std::vector<MellinExponent> fallback) {
  if (text.empty()) return fallback;
  std::vector<MellinExponent> grid;
  for (double a : parse_real_grid(text)) grid.emplace_back(a);
  return grid;
}

HalfPlaneParam parse_gamma(const std::string& text, const char* flag) {
  const Complex z = parse_complex(text);
  if (!(z.imag() > 0.0)) {
    throw DomainError(std::string(flag) + " needs Im > 0, got '" + text + "'");
  }
  return HalfPlaneParam(z);
}

void check_readable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
}

void check_writable(const std::string& path) {
  if (path.empty()) return;
  const fs::path parent = fs::absolute(fs::path(path)).parent_path();
  if (!fs::is_directory(parent)) {
    throw DomainError("output directory '" + parent.string() + "' does not exist");
  }
}

void emit(const std::string& contents, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << contents;
  } else {
    write_file_atomic(out_path, contents);
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct SampleOptions {
  std::string dist;
  std::string gamma;
  std::string w;
  double t = 0.0;
  std::string gamma1;
  std::string gamma2;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct FitOptions {
  std::string estimator;
  std::string in;
  std::string grid;
  std::uint64_t seed = 0;
  bool json = false;
  std::size_t starts = 8;
  double tol = 1e-12;
  std::size_t max_iter = 500;
  std::string out;
};

struct TestOptions {
  std::string method;
  std::string in;
  std::size_t B = 999;
  std::uint64_t seed = 0;
  std::string grid;
  std::string out;
};

struct VerifyOptions {
  std::string gamma_grid;
  std::string a_grid;
  bool tol_report = false;
};

struct FieldOptions {
  std::string in;
  std::string gamma_grid;
  std::string re_range;
  std::string im_range;
  std::string out;
};

int do_sample(const SampleOptions& o, std::ostream& out) {
  check_writable(o.out);
  std::optional<DistSpec> spec;
  if (o.dist == "cauchy") {
    if (o.gamma.empty()) throw DomainError("sample --dist cauchy needs --gamma");
    spec = CauchyDist{parse_gamma(o.gamma, "--gamma")};
  } else if (o.dist == "circular") {
    if (o.w.empty()) throw DomainError("sample --dist circular needs --w");
    spec = CircularCauchyDist{DiskParam(parse_complex(o.w))};
  } else {
    if (o.gamma1.empty() || o.gamma2.empty()) {
      throw DomainError("sample --dist mixture needs --t, --gamma1 and --gamma2");
    }
    spec = MixtureCauchyDist{
        MixtureParams(o.t, parse_gamma(o.gamma1, "--gamma1"), parse_gamma(o.gamma2, "--gamma2"))};
  }
  const SampleSet s = sample(*spec, o.n, o.seed);
  emit(format_sample_csv({s.values().begin(), s.values().end()}), o.out, out);
  return kExitOk;
}

std::string text_report(const PointReport& r, const char* label) {
  std::ostringstream os;
  os << label << ": " << format_complex(r.estimate) << "\n"
     << "iterations: " << r.iterations << "\n"
     << "converged: " << (r.converged ? "true" : "false") << "\n"
     << "residual: " << format_real(r.residual) << "\n";
  if (r.dispersion) os << "dispersion: " << format_real(*r.dispersion) << "\n";
  if (r.loglik) os << "loglik: " << format_real(*r.loglik) << "\n";
  for (const auto& f : r.flags) os << "flag: " << f << "\n";
  return os.str();
}

std::string text_report(const MixtureReport& r) {
  std::ostringstream os;
  os << "t: " << format_real(r.estimate.t()) << "\n"
     << "gamma1: " << format_complex(r.estimate.gamma1().value()) << "\n"
     << "gamma2: " << format_complex(r.estimate.gamma2().value()) << "\n"
     << "iterations: " << r.iterations << "\n"
     << "converged: " << (r.converged ? "true" : "false") << "\n"
     << "residual: " << format_real(r.residual) << "\n";
  for (const auto& f : r.flags) os << "flag: " << f << "\n";
  return os.str();
}

int do_fit(const FitOptions& o, std::ostream& out) {
  check_readable(o.in);
  check_writable(o.out);
  const SampleSet s(read_sample_csv(o.in));
  FixedPointConfig fp;
  fp.tol = o.tol;
  fp.max_iter = o.max_iter;

  std::string text;
  nlohmann::json json;
  bool converged = true;
  if (o.estimator == "mixture") {
    MixtureFitConfig cfg;
    cfg.starts = o.starts;
    cfg.seed = o.seed;
    const auto grid = exponent_grid(o.grid, default_exponent_grid());
    const MixtureReport r = mixture_fit(s, grid, cfg);
    json = to_json(r);
    text = text_report(r);
    converged = r.converged;
  } else {
    std::optional<PointReport> r;
    const char* label = "gamma";
    if (o.estimator == "mle") {
      r = mle_fixed_point(s, fp);
    } else if (o.estimator == "mellin") {
      const auto grid = exponent_grid(o.grid, default_exponent_grid());
      r = mellin_consensus(s, grid);
    } else if (o.estimator == "logmoment") {
      r = logmoment_estimate(s);
    } else {
      r = circular_fit(s, fp);
      label = "w";
    }
    json = to_json(*r);
    text = text_report(*r, label);
    converged = r->converged;
  }
  const std::string contents = o.json ? dump(json) : text;
  if (!converged) {
    out << contents;
    throw NumericalOutcome{"estimator did not converge"};
  }
  emit(contents, o.out, out);
  return kExitOk;
}

int do_test(const TestOptions& o, std::ostream& out) {
  check_readable(o.in);
  check_writable(o.out);
  const SampleSet s(read_sample_csv(o.in));
  TestReport report;
  if (o.method == "mobius") {
    const std::vector<Complex> grid = o.grid.empty() ? default_mobius_grid() : parse_complex_list(o.grid);
    report = cauchy_test_mobius(s, grid, o.B, o.seed);
  } else {
    const auto grid = exponent_grid(o.grid, default_mellin_test_grid());
    report = cauchy_test_mellin(s, grid, o.B, o.seed);
  }
  emit(dump(to_json(report)), o.out, out);
  return kExitOk;
}

int do_verify(const VerifyOptions& o, std::ostream& out) {
  std::vector<HalfPlaneParam> gammas;
  if (o.gamma_grid.empty()) {
    gammas = default_identity_gamma_grid();
  } else {
    for (Complex z : parse_complex_list(o.gamma_grid)) gammas.push_back(parse_gamma(format_complex(z), "--gamma-grid"));
  }
  const auto a_grid = exponent_grid(o.a_grid, default_exponent_grid());
  const auto checks = verify_identities(gammas, a_grid);
  if (o.tol_report) {
    out << dump(to_json(checks));
  } else {
    out << "family              worst_error    tolerance  pass  worst_point\n";
    for (const auto& c : checks) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-18s  %11.3e  %11.3e  %-4s  ", c.family.c_str(),
                    c.worst_error, c.tolerance, c.pass ? "yes" : "NO");
      out << line << c.worst_point << "\n";
      for (const auto& [k, v] : c.table) out << "    " << k << " = " << format_real(v) << "\n";
    }
  }
  if (!all_pass(checks)) throw NumericalOutcome{"identity verification failed"};
  return kExitOk;
}

std::vector<double> parse_range(const std::string& text, const char* flag) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw DomainError(std::string(flag) + " must look like start,stop,count");
  return parse_real_grid(parts[0] + ":" + parts[1] + ":" + parts[2]);
}

int do_field(const FieldOptions& o, std::ostream& out) {
  check_readable(o.in);
  check_writable(o.out);
  std::vector<Complex> grid;
  if (!o.gamma_grid.empty()) grid = parse_complex_list(o.gamma_grid);
  if (!o.re_range.empty() || !o.im_range.empty()) {
    if (o.re_range.empty() || o.im_range.empty()) {
      throw DomainError("field needs both --re-range and --im-range");
    }
    for (double re : parse_range(o.re_range, "--re-range")) {
      for (double im : parse_range(o.im_range, "--im-range")) grid.emplace_back(re, im);
    }
  }
  if (grid.empty()) throw DomainError("field needs a nonempty gamma grid");
  const SampleSet s(read_sample_csv(o.in));
  emit(emit_field_grid(s, grid), o.out, out);
  return kExitOk;
}

}  // namespace

std::string emit_field_grid(const SampleSet& s, const std::vector<Complex>& grid) {
  if (grid.empty()) throw DomainError("gamma grid is empty");
  if (s.is_point_mass()) throw DegenerateSampleError("the Mobius field of a point mass is degenerate");
  std::string csv = "re_gamma,im_gamma,re_F,im_F\n";
  for (Complex z : grid) {
    const Complex f = mobius_stat(s, parse_gamma(format_complex(z), "gamma grid"));
    csv += format_real(z.real()) + "," + format_real(z.imag()) + "," + format_real(f.real()) + "," +
           format_real(f.imag()) + "\n";
  }
  return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cauchy characterizations: sampling, fitting, goodness-of-fit and identity checks",
               "cauchy"};
  app.require_subcommand(1);

  SampleOptions so;
  auto* sample_cmd = app.add_subcommand("sample", "draw a reproducible sample");
  sample_cmd->add_option("--dist", so.dist, "law to draw from")
      ->required()
      ->check(CLI::IsMember({"cauchy", "circular", "mixture"}));
  sample_cmd->add_option("--gamma", so.gamma, "Cauchy parameter a+bi");
  sample_cmd->add_option("--w", so.w, "circular-Cauchy parameter, |w| < 1");
  sample_cmd->add_option("--t", so.t, "mixture weight of gamma2");
  sample_cmd->add_option("--gamma1", so.gamma1, "first mixture component");
  sample_cmd->add_option("--gamma2", so.gamma2, "second mixture component");
  sample_cmd->add_option("-n", so.n, "sample size")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", so.seed, "random seed");
  sample_cmd->add_option("--out", so.out, "output CSV (default stdout)");

  FitOptions fo;
  auto* fit_cmd = app.add_subcommand("fit", "estimate parameters from a sample file");
  fit_cmd->add_option("--estimator", fo.estimator, "estimator")
      ->required()
      ->check(CLI::IsMember({"mle", "mellin", "logmoment", "mixture", "circular"}));
  fit_cmd->add_option("--in", fo.in, "input CSV")->required();
  fit_cmd->add_option("--grid", fo.grid, "Mellin exponents: a1,a2,... or start:stop:count");
  fit_cmd->add_option("--seed", fo.seed, "seed for mixture multi-starts");
  fit_cmd->add_option("--starts", fo.starts, "mixture multi-starts");
  fit_cmd->add_option("--tol", fo.tol, "fixed-point tolerance");
  fit_cmd->add_option("--max-iter", fo.max_iter, "fixed-point iteration cap");
  fit_cmd->add_flag("--json", fo.json, "emit a JSON report");
  fit_cmd->add_option("--out", fo.out, "output file (default stdout)");

  TestOptions to;
  auto* test_cmd = app.add_subcommand("test", "goodness-of-fit test against the Cauchy family");
  test_cmd->add_option("--method", to.method, "test statistic")
      ->required()
      ->check(CLI::IsMember({"mobius", "mellin"}));
  test_cmd->add_option("--in", to.in, "input CSV")->required();
  test_cmd->add_option("--B", to.B, "bootstrap replications");
  test_cmd->add_option("--seed", to.seed, "bootstrap seed");
  test_cmd->add_option("--grid", to.grid,
                       "mobius: standardized points z1,z2,...; mellin: exponents");
  test_cmd->add_option("--out", to.out, "output JSON (default stdout)");

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "check the analytic identities by quadrature");
  verify_cmd->add_option("--gamma-grid", vo.gamma_grid, "comma-separated points of the half-plane");
  verify_cmd->add_option("--a-grid", vo.a_grid, "Mellin exponents");
  verify_cmd->add_flag("--tol-report", vo.tol_report, "emit the JSON report only");

  FieldOptions fld;
  auto* field_cmd = app.add_subcommand("field", "tabulate the Mobius statistic over a gamma grid");
  field_cmd->add_option("--in", fld.in, "input CSV")->required();
  field_cmd->add_option("--gamma-grid", fld.gamma_grid, "comma-separated gamma values");
  field_cmd->add_option("--re-range", fld.re_range, "start,stop,count for Re(gamma)");
  field_cmd->add_option("--im-range", fld.im_range, "start,stop,count for Im(gamma)");
  field_cmd->add_option("--out", fld.out, "output CSV (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (sample_cmd->parsed()) return do_sample(so, out);
    if (fit_cmd->parsed()) return do_fit(fo, out);
    if (test_cmd->parsed()) return do_test(to, out);
    if (verify_cmd->parsed()) return do_verify(vo, out);
    if (field_cmd->parsed()) return do_field(fld, out);
  } catch (const NumericalOutcome& e) {
    err << "error: " << e.message << "\n";
    return kExitNumerical;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cauchy::cli
