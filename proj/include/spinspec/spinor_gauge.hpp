#pragma once

#include <string>
#include <vector>

#include "spinspec/symbol.hpp"

namespace spinspec {

/// Special orthogonal matrix O_j^k at each grid point, stored as (j, k).
struct SO3Field {
  Grid grid;
  std::vector<Mat3> values;
};

/// Special unitary matrix at each grid point.
struct SU2Field {
  Grid grid;
  std::vector<Mat2> values;
  bool sign_resolved = false;
};

/// Two-component spinor on the grid together with its weight ‖ξ‖.
struct SpinorField {
  Grid grid;
  std::vector<Spinor> values;
  RealGrid weight;

  double min_norm() const;
  /// max over points of |‖ξ‖ − weight|.
  double normalization_defect() const;
};

/// O_j^k = δ^{kl} g_{αβ} e_j^α e̊_l^β. Throws MetricMismatch if the frames
/// induce different metrics and ChargeMismatch if their orientations differ.
SO3Field relate_frames(const Frame& frame, const Frame& reference, const Metric& metric,
                       const Tolerances& tol = {});

/// ½ tr(s_j R s^k R*), the SO(3) image of an SU(2) matrix.
Mat3 so3_from_su2(const Mat2& r);
/// One of the two SU(2) preimages of O (largest-pivot quaternion branch).
/// Throws LiftIllConditioned if O is not special orthogonal within tol.
Mat2 su2_from_so3(const Mat3& o, double tol = Tolerances{}.orth);

/// Continuous SU(2) lift of an SO(3) field. Signs are propagated
/// breadth-first from the origin; every plaquette and the three fundamental
/// cycles are checked. Throws SpinStructureMismatch naming the offending
/// cycles ("x1", "x2", "x3") or LiftIllConditioned for local failures. The
/// result satisfies Re tr R(0) ≥ 0.
SU2Field so3_to_su2_lift(const SO3Field& o, const Tolerances& tol = {});

/// Same as so3_to_su2_lift, with the BFS rooted at another grid index.
/// The sign convention at the origin is not applied.
SU2Field so3_to_su2_lift_from(const SO3Field& o, std::size_t root, const Tolerances& tol = {});

/// max over points of |½ tr(s_j R s^k R*) − O_j^k|.
double lift_residual(const SU2Field& r, const SO3Field& o);

/// ξ¹ = w R₂₂, ξ² = −w R₂₁.
SpinorField spinor_from_su2(const SU2Field& r, const RealGrid& weight);
/// R = ‖ξ‖⁻¹ [[conj ξ¹, conj ξ²], [−ξ², ξ¹]], w = ‖ξ‖. Throws VanishingSpinor.
SU2Field su2_from_spinor(const SpinorField& xi, double min_norm = Tolerances{}.min_norm);
Mat2 su2_from_spinor(const Spinor& xi);

/// True iff the two symbols are related by a continuous SU(2) field.
/// Propagates MetricMismatch and ChargeMismatch.
bool same_spin_structure(const PrincipalSymbol& a, const PrincipalSymbol& b, const Grid& grid,
                         const Tolerances& tol = {});

/// Result of the conformal gauge transformation.
struct ConformalResult {
  PrincipalSymbol symbol;
  TrigPoly weight;
};

/// sym ↦ e^{−φ} sym, w ↦ e^{−φ} w; e^{−φ} is sampled on the given grid and
/// the products are re-expanded in Fourier coefficients.
ConformalResult conformal_transform(const PrincipalSymbol& sym, const TrigPoly& weight, const TrigPoly& phi,
                                    const Grid& expansion_grid);

/// ref ↦ Q ref Q* for a special-unitary-valued field Q.
PrincipalSymbol su2_reference_transform(const PrincipalSymbol& reference, const MatrixField& q);
/// ξ ↦ Q ξ, the induced action on spinors.
SpinorField su2_spinor_transform(const SpinorField& xi, const MatrixField& q);

/// (ξ¹, ξ²) ↦ (−conj ξ², conj ξ¹).
Spinor charge_conjugate(const Spinor& xi);
SpinorField charge_conjugate(const SpinorField& xi);

/// ξ ↦ Q₂₂ ξ − Q₂₁ C(ξ) for a constant special unitary Q.
SpinorField rigid_rotation(const SpinorField& xi, const Mat2& q);

/// Smallest spinor distance up to a global sign: min(max|a − b|, max|a + b|).
double spinor_distance_up_to_sign(const SpinorField& a, const SpinorField& b);

}  // namespace spinspec
