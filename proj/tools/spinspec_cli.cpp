// Command line front end: analyze | spectrum | verify | count.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <numbers>

#include "spinspec/errors.hpp"
#include "spinspec/operator.hpp"
#include "spinspec/pipeline.hpp"
#include "spinspec/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spinspec;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kSpinMismatch = 3,
  kEllipticity = 4,
  kTruncation = 5,
  kSuiteFailure = 6,
};

constexpr std::size_t kMaxDimension = 30000;
constexpr double kMaxCountLambda = 500.0;

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  out << std::setprecision(17) << j.dump(2) << '\n';
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  out << std::setprecision(17);
  return out;
}

json matrix_json(const Mat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

json metric_summary(const Metric& metric) {
  double deviation = 0.0;
  for (const auto& g : metric.contravariant_grid()) {
    deviation = std::max(deviation, (g - Mat3::Identity()).cwiseAbs().maxCoeff());
  }
  return {{"min_eigenvalue", metric.min_eigenvalue()},
          {"max_deviation_from_identity", deviation},
          {"inverse_residual", metric.inverse_residual()},
          {"at_origin", matrix_json(metric.contravariant_grid()[0])}};
}

json spinor_samples(const SpinorField& xi) {
  json out = json::array();
  const int n = xi.grid.n();
  for (int s = 0; s < 4; ++s) {
    const std::size_t idx = xi.grid.index(0, 0, s * n / 4);
    const Point x = xi.grid.point(idx);
    const Spinor& v = xi.values[idx];
    out.push_back({{"x", {x[0], x[1], x[2]}},
                   {"xi", {{v(0).real(), v(0).imag()}, {v(1).real(), v(1).imag()}}},
                   {"norm", v.norm()}});
  }
  return out;
}

/// Maps library errors to exit codes; every command funnels through here.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const MetricMismatch& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const ChargeMismatch& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const NonpositiveWeight& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const SpinStructureMismatch& e) {
    std::cerr << "spin structure mismatch: " << e.what() << '\n';
    return kSpinMismatch;
  } catch (const EllipticityFailure& e) {
    std::cerr << "ellipticity failure: " << e.what() << '\n';
    return kEllipticity;
  } catch (const ChargeInconsistent& e) {
    std::cerr << "ellipticity failure: " << e.what() << '\n';
    return kEllipticity;
  } catch (const TruncationTooSmall& e) {
    std::cerr << "truncation too small: " << e.what() << '\n';
    return kTruncation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& spec_path, const fs::path& out_dir) {
  const ProblemSpec spec = load_problem(spec_path);
  fs::create_directories(out_dir);
  json report;
  report["name"] = spec.name;
  report["grid"] = spec.grid;

  const PrincipalSymbol sym = spec.principal();
  const Grid grid(spec.grid);
  const Metric metric = checked_metric(sym, grid, spec.tol);
  report["metric"] = metric_summary(metric);
  const int charge = topological_charge(sym, grid, spec.tol.charge);
  report["topological_charge"] = charge;

  try {
    const Analysis an = analyze(spec);
    report["spin_structure"] = {{"same", true}, {"cycles", json::array()}};
    report["spinor_samples"] = spinor_samples(an.spinor);
    report["action"] = an.action;
    report["a"] = an.a;
    report["b_action"] = an.b_action;
    report["b_torsion"] = an.b_torsion;
    report["torsion_identity_max"] = an.torsion_identity_max;
    if (an.b_action_inverted) report["b_action_inverted"] = *an.b_action_inverted;
    report["diagnostics"] = {{"pauli_residual", an.pauli_residual},
                             {"lift_residual", an.lift_residual},
                             {"normalization_defect", an.normalization_defect},
                             {"orthonormality_residual", an.orthonormality_residual},
                             {"christoffel_compatibility", an.christoffel_compatibility}};
    report["status"] = "ok";
    write_json(out_dir / "report.json", report);
    std::cout << std::setprecision(12) << "charge " << charge << "  S = " << an.action << "  a = " << an.a
              << "  b = " << an.b_action << " (torsion route " << an.b_torsion << ")\n";
    return kOk;
  } catch (const SpinStructureMismatch& e) {
    report["spin_structure"] = {{"same", false}, {"cycles", e.cycles()}};
    report["status"] = "spin_structure_mismatch";
    report["message"] = e.what();
    write_json(out_dir / "report.json", report);
    throw;
  }
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const std::string& spec_path, const fs::path& out_dir, std::optional<int> m_opt,
                 std::optional<double> lambda_max_opt, double step) {
  const ProblemSpec spec = load_problem(spec_path);
  const Truncation t{m_opt.value_or(spec.truncation)};
  if (t.dimension() > kMaxDimension) {
    throw ValidationError("dimension " + std::to_string(t.dimension()) + " exceeds the budget of " +
                          std::to_string(kMaxDimension));
  }
  if (!(step > 0.0)) throw ValidationError("--step must be positive");
  fs::create_directories(out_dir);

  const Operator1st op = operator_from_symbol(spec.principal());
  const int cap = spec.weight.degree() == 0 ? 0 : std::max(0, (t.M - op.degree()) / 2);
  const ReducedOperator reduced = weighted_reduce(op, spec.weight, cap);
  const DiscreteSpectrum s = galerkin_spectrum(reduced.op, t);

  {
    auto csv = open_csv(out_dir / "eigenvalues.csv");
    csv << "index,lambda,trusted\n";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      csv << i << ',' << s.eigenvalues[i] << ',' << (s.trusted(s.eigenvalues[i]) ? 1 : 0) << '\n';
    }
  }
  const double lambda_max = lambda_max_opt.value_or(s.trust_radius);
  const CountingTable table = counting_function(s, midpoint_samples(lambda_max, step));
  {
    auto csv = open_csv(out_dir / "counting.csv");
    csv << "lambda,N,trusted\n";
    for (const auto& r : table.rows) csv << r.lambda << ',' << r.count << ',' << (r.trusted ? 1 : 0) << '\n';
  }

  json summary = {{"M", t.M},
                  {"dimension", s.dimension},
                  {"blocks", s.blocks},
                  {"gamma_min", s.gamma_min},
                  {"trust_radius", s.trust_radius},
                  {"weight_degree_cap", reduced.degree_cap},
                  {"weight_truncation_error", reduced.truncation_error},
                  {"lambda_max", lambda_max},
                  {"step", step}};
  try {
    const Analysis an = analyze(spec);
    const AsymptoticReport rep =
        asymptotic_compare(table, an.a, an.b_action, 0.8 * lambda_max, lambda_max, 0.2 * lambda_max, lambda_max);
    summary["asymptotics"] = {{"a", an.a},
                              {"b", an.b_action},
                              {"window", {rep.window_lo, rep.window_hi}},
                              {"window_mean_residual_over_lambda2", rep.window_mean},
                              {"fit_range", {rep.fit_lo, rep.fit_hi}},
                              {"exponent", rep.exponent},
                              {"note", "indicative only for general symbols"}};
  } catch (const SpinspecError& e) {
    summary["asymptotics"] = {{"unavailable", e.what()}};
  }
  write_json(out_dir / "spectrum.json", summary);
  std::cout << s.eigenvalues.size() << " eigenvalues in " << s.blocks << " blocks, trust radius "
            << s.trust_radius << '\n';
  return kOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& spec_path, const fs::path& out_dir, const std::string& suite,
               std::uint64_t seed, bool inject) {
  const ProblemSpec spec = load_problem(spec_path);
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    names = {suite};
  }
  VerifyOptions options{seed, inject};
  json report = {{"seed", seed}, {"suites", json::array()}};
  bool ok = true;
  const Check* overall_worst = nullptr;
  std::vector<SuiteResult> results;
  results.reserve(names.size());
  for (const auto& n : names) results.push_back(run_suite(n, spec, options));
  for (const auto& r : results) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed()}});
    }
    const Check* w = r.worst();
    report["suites"].push_back({{"name", r.name},
                                {"passed", r.passed()},
                                {"checks", checks},
                                {"worst", w ? json{{"name", w->name}, {"value", w->value}} : json()}});
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name;
    if (w) std::cout << "  worst: " << w->name << " = " << w->value << " (tol " << w->tolerance << ")";
    std::cout << '\n';
    ok = ok && r.passed();
    if (w && (!overall_worst || w->value / w->tolerance > overall_worst->value / overall_worst->tolerance)) {
      overall_worst = w;
    }
  }
  report["passed"] = ok;
  if (overall_worst) report["worst"] = {{"name", overall_worst->name}, {"value", overall_worst->value}};
  fs::create_directories(out_dir);
  write_json(out_dir / "verify.json", report);
  return ok ? kOk : kSuiteFailure;
}

// ---------------------------------------------------------------- count

int cmd_count(const fs::path& out_dir, double lambda_max, double a, double b, double step) {
  if (!(lambda_max > 0.0) || lambda_max > kMaxCountLambda) {
    throw ValidationError("--lambda-max must lie in (0, 500]");
  }
  if (!(step > 0.0)) throw ValidationError("--step must be positive");
  fs::create_directories(out_dir);
  const CountingTable table = exact_example_counting(midpoint_samples(lambda_max, step));
  const AsymptoticReport rep = asymptotic_compare(table, a, b, 0.8 * lambda_max, lambda_max, 0.2 * lambda_max, lambda_max);
  {
    auto csv = open_csv(out_dir / "counting.csv");
    csv << "lambda,N,residual,residual_over_lambda2\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      csv << table.rows[i].lambda << ',' << table.rows[i].count << ',' << rep.residual[i] << ',' << rep.scaled[i]
          << '\n';
    }
  }
  write_json(out_dir / "count.json", {{"a", a},
                                      {"b", b},
                                      {"lambda_max", lambda_max},
                                      {"step", step},
                                      {"window", {rep.window_lo, rep.window_hi}},
                                      {"window_mean_residual_over_lambda2", rep.window_mean},
                                      {"fit_range", {rep.fit_lo, rep.fit_hi}},
                                      {"exponent", rep.exponent}});
  std::cout << std::setprecision(6) << table.rows.size() << " samples; mean residual/lambda^2 on ["
            << rep.window_lo << ", " << rep.window_hi << "] = " << rep.window_mean << "; exponent "
            << rep.exponent << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral asymptotics of first order 2x2 systems on the 3-torus"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir = ".";

  auto* analyze_cmd = app.add_subcommand("analyze", "geometric invariants and asymptotic coefficients");
  analyze_cmd->add_option("spec", spec_path, "problem JSON")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--out", out_dir, "output directory");

  std::optional<int> m_opt;
  std::optional<double> lambda_opt;
  double step = 1.0;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Galerkin spectrum and counting function");
  spectrum_cmd->add_option("spec", spec_path, "problem JSON")->required()->check(CLI::ExistingFile);
  spectrum_cmd->add_option("--out", out_dir, "output directory");
  spectrum_cmd->add_option("--M", m_opt, "plane-wave cutoff (default: from the problem)");
  spectrum_cmd->add_option("--lambda-max", lambda_opt, "largest counting sample (default: trust radius)");
  spectrum_cmd->add_option("--step", step, "spacing of counting samples");

  std::string suite = "all";
  std::uint64_t seed = 42;
  bool inject = false;
  auto* verify_cmd = app.add_subcommand("verify", "gauge invariance and identity suites");
  verify_cmd->add_option("spec", spec_path, "problem JSON")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--out", out_dir, "output directory");
  verify_cmd->add_option("--suite", suite, "suite name")
      ->check(CLI::IsMember({"conformal", "su2", "rigid", "torsion", "subprincipal", "all"}));
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_flag("--inject-subprincipal-fault", inject, "add the identity to Q0 before the subprincipal suite");

  double count_lambda = 100.0;
  double a = 4.0 * std::numbers::pi / 3.0;
  double b = -4.0 * std::numbers::pi;
  double count_step = 1.0;
  auto* count_cmd = app.add_subcommand("count", "lattice-point counting function of the exact example");
  count_cmd->add_option("--out", out_dir, "output directory");
  count_cmd->add_option("--lambda-max", count_lambda, "largest sample");
  count_cmd->add_option("--a", a, "leading coefficient");
  count_cmd->add_option("--b", b, "second coefficient");
  count_cmd->add_option("--step", count_step, "spacing of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  if (*analyze_cmd) return guarded([&] { return cmd_analyze(spec_path, out_dir); });
  if (*spectrum_cmd) return guarded([&] { return cmd_spectrum(spec_path, out_dir, m_opt, lambda_opt, step); });
  if (*verify_cmd) return guarded([&] { return cmd_verify(spec_path, out_dir, suite, seed, inject); });
  if (*count_cmd) return guarded([&] { return cmd_count(out_dir, count_lambda, a, b, count_step); });
  return kFailure;
}
