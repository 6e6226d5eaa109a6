#include "spinspec/pipeline.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "spinspec/catalog.hpp"
#include "spinspec/errors.hpp"
#include "spinspec/operator.hpp"

namespace spinspec {

int grid_for_degree(int n, int degree) { return std::max(n, 2 * degree + 1); }

Metric checked_metric(const PrincipalSymbol& sym, const Grid& grid, const Tolerances& tol) {
  Metric metric = metric_from_symbol(sym, grid);
  if (!(metric.min_eigenvalue() > tol.ellip)) {
    throw EllipticityFailure("metric is not positive definite: smallest eigenvalue " +
                                 std::to_string(metric.min_eigenvalue()),
                             metric.min_eigenvalue());
  }
  return metric;
}

Analysis analyze(const PrincipalSymbol& sym, const PrincipalSymbol& reference, const TrigPoly& weight,
                 int grid_size, const Tolerances& tol) {
  const int degree = std::max({sym.degree(), reference.degree(), weight.degree()});
  if (grid_size < 2 * degree + 1) {
    throw ValidationError("grid " + std::to_string(grid_size) + " is below 2*degree+1 = " +
                          std::to_string(2 * degree + 1));
  }
  const Grid grid(grid_size);
  Metric metric = checked_metric(sym, grid, tol);
  const int charge = topological_charge(sym, grid, tol.charge);
  if (topological_charge(reference, grid, tol.charge) != charge) {
    throw ChargeMismatch("symbol and reference have opposite topological charge");
  }

  Frame frame = frame_from_symbol(sym);
  Frame reference_frame = frame_from_symbol(reference);
  SO3Field rotation = relate_frames(frame, reference_frame, metric, tol);
  SU2Field gauge = so3_to_su2_lift(rotation, tol);

  const RealGrid w = weight.real_on_grid(grid);
  for (double v : w) {
    if (!(v > 0.0)) throw NonpositiveWeight("weight is not positive on the grid");
  }
  SpinorField spinor = spinor_from_su2(gauge, w);
  PauliField pauli = pauli_field(reference, metric);
  const ChristoffelField chris = christoffel(metric);
  const auto wxi = weyl_apply(pauli, chris, spinor);

  RealGrid lagrangian(grid.size());
  RealGrid density(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lagrangian[i] = spinor.values[i].dot(wxi[i]).real();
    density[i] = lagrangian[i] * metric.density()[i];
  }
  const double action = integrate(grid, density);
  const double pi2 = std::numbers::pi * std::numbers::pi;

  double b_torsion = 0.0;
  double identity_max = 0.0;
  std::optional<double> b_action_inverted;
  if (charge == 1) {
    b_torsion = coeff_b_torsion(w, frame, metric, charge);
    const auto torsion = axial_torsion(frame, metric);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double rhs = 4.0 * lagrangian[i] / (3.0 * spinor.values[i].squaredNorm());
      identity_max = std::max(identity_max, std::abs(torsion[i] - rhs));
    }
  } else {
    // x ↦ −x reverses the orientation, turning the data into charge +1.
    const Analysis inv = analyze(sym.inverted(), reference.inverted(), weight.reflected(), grid_size, tol);
    b_torsion = inv.b_torsion;
    identity_max = inv.torsion_identity_max;
    b_action_inverted = inv.b_action;
  }

  const double pauli_residual = pauli_relation_residual(pauli, metric);
  const double lift = lift_residual(gauge, rotation);
  const double norm_defect = spinor.normalization_defect();
  const double ortho = orthonormality_residual(metric, frame);
  const double compat = christoffel_compatibility_residual(chris, metric);
  const double a = coeff_a(spinor, metric);

  return Analysis{grid,
                  charge,
                  std::move(metric),
                  std::move(frame),
                  std::move(reference_frame),
                  std::move(rotation),
                  std::move(gauge),
                  std::move(spinor),
                  std::move(pauli),
                  std::move(lagrangian),
                  action,
                  a,
                  action / (2.0 * pi2),
                  b_torsion,
                  identity_max,
                  b_action_inverted,
                  pauli_residual,
                  lift,
                  norm_defect,
                  ortho,
                  compat};
}

Analysis analyze(const ProblemSpec& spec, int grid_size) {
  const PrincipalSymbol sym = spec.principal();
  const Grid grid(grid_for_degree(grid_size, sym.degree()));
  checked_metric(sym, grid, spec.tol);
  const int charge = topological_charge(sym, grid, spec.tol.charge);
  return analyze(sym, spec.reference_symbol(charge), spec.weight, grid_size, spec.tol);
}

Analysis analyze(const ProblemSpec& spec) { return analyze(spec, spec.grid); }

// ---------------------------------------------------------------- suites

bool SuiteResult::passed() const {
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

const Check* SuiteResult::worst() const {
  const Check* w = nullptr;
  double ratio = -1.0;
  for (const auto& c : checks) {
    const double r = c.tolerance > 0.0 ? c.value / c.tolerance : c.value;
    if (!(r <= ratio)) {
      ratio = r;
      w = &c;
    }
  }
  return w;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"conformal", "su2", "rigid", "torsion", "subprincipal"};
  return names;
}

namespace {

double max_spinor_difference(const std::vector<Spinor>& a, const std::vector<Spinor>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return d;
}

double max_difference(const RealGrid& a, const RealGrid& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

int symbol_charge(const ProblemSpec& spec) {
  const PrincipalSymbol sym = spec.principal();
  return topological_charge(sym, Grid(grid_for_degree(spec.grid, sym.degree())), spec.tol.charge);
}

SuiteResult conformal_suite(const ProblemSpec& spec, std::mt19937_64& rng) {
  SuiteResult r{"conformal", {}};
  const PrincipalSymbol sym = spec.principal();
  const PrincipalSymbol ref = spec.reference_symbol(symbol_charge(spec));
  const TrigPoly phi = catalog::random_scalar(rng, 0.3, 2);
  const Grid expansion(64);
  const auto cs = conformal_transform(sym, spec.weight, phi, expansion);
  const auto cr = conformal_transform(ref, TrigPoly(1.0), phi, expansion);
  const int n = grid_for_degree(spec.grid, std::max({cs.symbol.degree(), cr.symbol.degree(), cs.weight.degree(),
                                                      sym.degree(), ref.degree(), spec.weight.degree()}));
  const Analysis before = analyze(sym, ref, spec.weight, n, spec.tol);
  const Analysis after = analyze(cs.symbol, cr.symbol, cs.weight, n, spec.tol);

  r.checks.push_back({"b drift (action route)", std::abs(after.b_action - before.b_action), 1e-6});
  r.checks.push_back({"b drift (torsion route)", std::abs(after.b_torsion - before.b_torsion), 1e-6});
  r.checks.push_back({"a drift", std::abs(after.a - before.a), 1e-8});

  const RealGrid factor_phi = phi.real_on_grid(before.grid);
  SpinorField scaled = before.spinor;
  std::vector<Spinor> expected_w = weyl_apply(before.pauli, before.metric, before.spinor);
  for (std::size_t i = 0; i < scaled.values.size(); ++i) {
    const double f = std::exp(-factor_phi[i]);
    scaled.values[i] *= f;
    scaled.weight[i] *= f;
    expected_w[i] *= f * f;
  }
  r.checks.push_back({"spinor scaling", spinor_distance_up_to_sign(after.spinor, scaled), 1e-9});
  auto actual_w = weyl_apply(after.pauli, after.metric, after.spinor);
  double plus = max_spinor_difference(actual_w, expected_w);
  for (auto& v : actual_w) v = -v;
  double minus = max_spinor_difference(actual_w, expected_w);
  r.checks.push_back({"Weyl covariance", std::min(plus, minus), 1e-7});
  return r;
}

SuiteResult su2_suite(const ProblemSpec& spec, std::mt19937_64& rng) {
  SuiteResult r{"su2", {}};
  const PrincipalSymbol sym = spec.principal();
  const PrincipalSymbol ref = spec.reference_symbol(symbol_charge(spec));
  const MatrixField q = catalog::random_su2_field(rng);
  const PrincipalSymbol ref2 = su2_reference_transform(ref, q);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double theta = angle(rng);
  Mat2 phase = Mat2::Zero();
  phase(0, 0) = std::polar(1.0, theta);
  phase(1, 1) = std::polar(1.0, -theta);
  const PrincipalSymbol ref3 = su2_reference_transform(ref, MatrixField(phase));

  const int n = grid_for_degree(spec.grid, std::max({sym.degree(), ref2.degree(), spec.weight.degree()}));
  const Analysis before = analyze(sym, ref, spec.weight, n, spec.tol);
  const Analysis after = analyze(sym, ref2, spec.weight, n, spec.tol);
  const Analysis constant = analyze(sym, ref3, spec.weight, n, spec.tol);

  r.checks.push_back({"action drift (field)", std::abs(after.action - before.action), 1e-7});
  r.checks.push_back({"action drift (constant phase)", std::abs(constant.action - before.action), 1e-7});
  r.checks.push_back({"spinor map xi -> Q xi",
                      spinor_distance_up_to_sign(after.spinor, su2_spinor_transform(before.spinor, q)), 1e-9});
  return r;
}

SuiteResult rigid_suite(const ProblemSpec& spec, std::mt19937_64& rng) {
  SuiteResult r{"rigid", {}};
  const Analysis base = analyze(spec);
  const Mat2 q = catalog::random_su2(rng);
  const SpinorField rotated = rigid_rotation(base.spinor, q);
  const RealGrid lag = dirac_lagrangian(base.pauli, base.metric, rotated);
  r.checks.push_back({"pointwise Lagrangian drift", max_difference(lag, base.lagrangian), 1e-9});
  double norm = 0.0;
  for (std::size_t i = 0; i < rotated.values.size(); ++i) {
    norm = std::max(norm, std::abs(rotated.values[i].norm() - base.spinor.values[i].norm()));
  }
  r.checks.push_back({"norm preservation", norm, 1e-12});

  const SpinorField conjugated = charge_conjugate(base.spinor);
  const RealGrid lag_c = dirac_lagrangian(base.pauli, base.metric, conjugated);
  r.checks.push_back({"charge conjugation Lagrangian drift", max_difference(lag_c, base.lagrangian), 1e-9});
  r.checks.push_back({"charge conjugation action drift",
                      std::abs(dirac_action(base.pauli, base.metric, conjugated) - base.action), 1e-9});
  return r;
}

SuiteResult torsion_suite(const ProblemSpec& spec) {
  SuiteResult r{"torsion", {}};
  const Analysis base = analyze(spec);
  r.checks.push_back({"torsion-spinor identity", base.torsion_identity_max, 1e-6});
  r.checks.push_back({"route equality", std::abs(base.b_action - base.b_torsion), 1e-7});
  if (base.b_action_inverted) {
    r.checks.push_back({"inverted coordinates", std::abs(*base.b_action_inverted - base.b_action), 1e-7});
  }
  return r;
}

SuiteResult subprincipal_suite(const ProblemSpec& spec, std::mt19937_64& rng, bool inject) {
  SuiteResult r{"subprincipal", {}};
  const PrincipalSymbol sym = spec.principal();
  Operator1st op = operator_from_symbol(sym);
  if (inject) op.Q0 += MatrixField::identity();
  const MatrixField sub = subprincipal(op);
  r.checks.push_back({"zero subprincipal symbol", sub.max_coefficient(), 1e-12});

  const PrincipalSymbol ref = spec.reference_symbol(symbol_charge(spec));
  const MatrixField gauge = catalog::random_su2_field(rng);
  const Operator1st conj = conjugate_operator(operator_from_symbol(ref), gauge);
  const MatrixField closed = conjugation_subprincipal(ref, gauge);
  const Grid grid(grid_for_degree(spec.grid, conj.degree()));
  r.checks.push_back({"closed form", max_grid_difference(subprincipal(conj).on_grid(grid), closed.on_grid(grid)),
                      1e-10});
  r.checks.push_back({"self-adjointness", self_adjointness_defect(conj, grid), 1e-10});
  return r;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const ProblemSpec& spec, const VerifyOptions& options) {
  // Each suite draws from its own stream so results do not depend on which
  // other suites ran.
  std::uint64_t offset = 0;
  for (char c : name) offset = offset * 131 + static_cast<unsigned char>(c);
  std::mt19937_64 rng(options.seed ^ offset);
  if (name == "conformal") return conformal_suite(spec, rng);
  if (name == "su2") return su2_suite(spec, rng);
  if (name == "rigid") return rigid_suite(spec, rng);
  if (name == "torsion") return torsion_suite(spec);
  if (name == "subprincipal") return subprincipal_suite(spec, rng, options.inject_subprincipal_fault);
  throw ValidationError("unknown suite '" + name + "'");
}

}  // namespace spinspec
