#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinspec/dirac.hpp"
#include "spinspec/problem.hpp"

namespace spinspec {

/// Everything derived from (symbol, reference, weight) on one grid.
struct Analysis {
  Grid grid;
  int charge;
  Metric metric;
  Frame frame;
  Frame reference_frame;
  SO3Field rotation;
  SU2Field gauge;
  SpinorField spinor;
  PauliField pauli;
  RealGrid lagrangian;  ///< Re(ξ* W ξ)
  double action;
  double a;
  double b_action;
  /// Torsion route; for charge −1 it is evaluated on the inverted data.
  double b_torsion;
  /// max |*T^ax − 4Re(ξ*Wξ)/(3‖ξ‖²)| on the charge +1 data used for b_torsion.
  double torsion_identity_max;
  /// Action route on the inverted data (charge −1 only).
  std::optional<double> b_action_inverted;

  double pauli_residual;
  double lift_residual;
  double normalization_defect;
  double orthonormality_residual;
  double christoffel_compatibility;
};

/// Full geometric pipeline. Throws ValidationError (grid too coarse),
/// EllipticityFailure, ChargeInconsistent, MetricMismatch, ChargeMismatch,
/// SpinStructureMismatch, LiftIllConditioned or NonpositiveWeight.
Analysis analyze(const PrincipalSymbol& sym, const PrincipalSymbol& reference, const TrigPoly& weight,
                 int grid_size, const Tolerances& tol = {});
/// Uses the stated reference or the standard one with the symbol's charge.
Analysis analyze(const ProblemSpec& spec);
Analysis analyze(const ProblemSpec& spec, int grid_size);

/// Throws EllipticityFailure unless the metric is positive definite on the grid.
Metric checked_metric(const PrincipalSymbol& sym, const Grid& grid, const Tolerances& tol);

/// Smallest grid size ≥ n that satisfies the 2·degree + 1 rule.
int grid_for_degree(int n, int degree);

// ---------------------------------------------------------------- verification

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool passed() const { return value <= tolerance; }
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  bool passed() const;
  /// Check with the largest value/tolerance ratio.
  const Check* worst() const;
};

/// conformal, su2, rigid, torsion, subprincipal.
const std::vector<std::string>& suite_names();

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Adds the identity to the zero-order coefficient before the
  /// subprincipal suite runs (a planted fault).
  bool inject_subprincipal_fault = false;
};

/// Runs one named suite. Throws ValidationError for an unknown name.
SuiteResult run_suite(const std::string& name, const ProblemSpec& spec, const VerifyOptions& options = {});

}  // namespace spinspec
