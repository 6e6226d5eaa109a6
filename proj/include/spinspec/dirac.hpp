#pragma once

#include <array>
#include <vector>

#include "spinspec/spinor_gauge.hpp"

namespace spinspec {

/// Pauli matrices σ^α taken from a reference symbol, with grid caches of
/// σ^α, σ_α = g_{αβ}σ^β and ∂_α σ^β (exact coefficient derivatives).
struct PauliField {
  Grid grid;
  std::array<std::vector<Mat2>, 3> upper;
  std::array<std::vector<Mat2>, 3> lower;
  /// derivative[α][β] = ∂σ^β/∂x^α.
  std::array<std::array<std::vector<Mat2>, 3>, 3> derivative;
};

PauliField pauli_field(const PrincipalSymbol& reference, const Metric& metric);

/// max over grid of |σ^α σ^β + σ^β σ^α − 2 I g^{αβ}|.
double pauli_relation_residual(const PauliField& pauli, const Metric& metric);

/// Γ^β_{αγ} at each grid point, stored as gamma[i][β](α, γ).
struct ChristoffelField {
  Grid grid;
  std::vector<std::array<Mat3, 3>> gamma;
};

/// Levi-Civita symbols; ∂g_{αβ} is taken spectrally from the grid values.
ChristoffelField christoffel(const Metric& metric);

/// max |Γ^β_{αγ} − Γ^β_{γα}|.
double christoffel_symmetry_residual(const ChristoffelField& chris);
/// max |∂_α g_{βγ} − Γ^δ_{αβ} g_{δγ} − Γ^δ_{αγ} g_{βδ}|.
double christoffel_compatibility_residual(const ChristoffelField& chris, const Metric& metric);

/// W ξ = −iσ^α(∂_α ξ + ¼ σ_β(∂_α σ^β + Γ^β_{αγ} σ^γ) ξ) on the grid.
std::vector<Spinor> weyl_apply(const PauliField& pauli, const Metric& metric, const SpinorField& xi);
std::vector<Spinor> weyl_apply(const PauliField& pauli, const ChristoffelField& chris, const SpinorField& xi);

/// Re(ξ* W ξ) at each grid point.
RealGrid dirac_lagrangian(const PauliField& pauli, const Metric& metric, const SpinorField& xi);

/// S(ξ) = ∫ Re(ξ* W ξ) √det g_{αβ} dx.
double dirac_action(const PauliField& pauli, const Metric& metric, const SpinorField& xi);

/// Hodge dual of axial torsion from the six-term coframe formula.
RealGrid axial_torsion(const Frame& frame, const Metric& metric);

/// *T^ax − 4 Re(ξ* W ξ) / (3‖ξ‖²) at each grid point.
RealGrid torsion_spinor_identity_residual(const Frame& frame, const Metric& metric, const SpinorField& xi,
                                          const PauliField& pauli);

/// (1/6π²) ∫ ‖ξ‖³ √det g_{αβ} dx.
double coeff_a(const SpinorField& xi, const Metric& metric);
/// S(ξ) / 2π².
double coeff_b_action(const SpinorField& xi, const PauliField& pauli, const Metric& metric);
/// (3c/8π²) ∫ w² *T^ax √det g_{αβ} dx.
double coeff_b_torsion(const RealGrid& weight, const Frame& frame, const Metric& metric, int charge);

/// Values at −x: grid index (i, j, l) ↦ (−i, −j, −l).
RealGrid inverted(const Grid& grid, const RealGrid& values);
SpinorField inverted(const SpinorField& xi);

}  // namespace spinspec
