#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spinspec/matrix_field.hpp"

namespace spinspec {

/// Numerical thresholds shared by the geometric pipeline.
struct Tolerances {
  double ellip = 1e-8;    ///< smallest admissible metric eigenvalue
  double inv = 1e-9;      ///< g_{αβ} g^{βγ} = δ
  double frame = 1e-9;    ///< frame orthonormality / metric agreement
  double charge = 1e-6;   ///< |c ∓ 1|
  double orth = 1e-9;     ///< SO(3)/SU(2) membership
  double lift = 1e-9;     ///< ½ tr(s_j R s^k R*) = O_j^k
  double min_norm = 1e-8; ///< nonvanishing spinor
  double pauli = 1e-10;
  double chris = 1e-8;
};

/// Three trace-free Hermitian matrix fields L^(α); the symbol is
/// L_prin(x, p) = L^(α)(x) p_α.
class PrincipalSymbol {
 public:
  /// Throws ValidationError if a component is not Hermitian or not trace-free.
  explicit PrincipalSymbol(std::array<MatrixField, 3> components);
  /// Projects each component onto its Hermitian trace-free part first; used
  /// for products and grid re-expansions that are exact only up to rounding.
  static PrincipalSymbol projected(const std::array<MatrixField, 3>& components);

  const MatrixField& operator[](int alpha) const { return components_[alpha]; }
  const std::array<MatrixField, 3>& components() const { return components_; }
  int degree() const;
  Mat2 at(const Point& x, const Vec3& p) const;

  /// f·L for a real scalar trig polynomial f.
  PrincipalSymbol scaled(const TrigPoly& f) const;
  /// Q L Q* for a unitary-valued matrix field Q.
  PrincipalSymbol conjugated(const MatrixField& q) const;
  /// Symbol in the inverted chart x ↦ −x: L'^(α)(x) = −L^(α)(−x).
  PrincipalSymbol inverted() const;
  PrincipalSymbol pruned(double tol) const;

 private:
  std::array<MatrixField, 3> components_;
};

/// Symmetric 3×3 array of real trig polynomials, indexed [α][β].
using SymTensor = std::array<std::array<TrigPoly, 3>, 3>;

/// Riemannian metric with grid caches of g^{αβ}, g_{αβ} and the density.
class Metric {
 public:
  static Metric from_contravariant(const SymTensor& g, const Grid& grid);
  static Metric from_contravariant_grid(std::vector<Mat3> contravariant, const Grid& grid);
  static Metric from_covariant_grid(std::vector<Mat3> covariant, const Grid& grid);

  const Grid& grid() const { return grid_; }
  const std::optional<SymTensor>& contravariant() const { return exact_; }
  const std::vector<Mat3>& contravariant_grid() const { return upper_; }
  const std::vector<Mat3>& covariant_grid() const { return lower_; }
  /// √det g_{αβ} at each grid point.
  const RealGrid& density() const { return density_; }
  /// Minimum over the grid of the smallest eigenvalue of g^{αβ}.
  double min_eigenvalue() const { return min_eigenvalue_; }
  /// max |g_{αβ} g^{βγ} − δ_α^γ| over the grid.
  double inverse_residual() const;

 private:
  Metric(const Grid& grid) : grid_(grid) {}
  void finalize();

  Grid grid_;
  std::optional<SymTensor> exact_;
  std::vector<Mat3> upper_;
  std::vector<Mat3> lower_;
  RealGrid density_;
  double min_eigenvalue_ = 0.0;
};

/// Orthonormal frame e_j^α stored as vectors[j][α].
class Frame {
 public:
  using Components = std::array<std::array<TrigPoly, 3>, 3>;

  explicit Frame(Components vectors) : vectors_(std::move(vectors)) {}
  static Frame identity();

  const TrigPoly& operator()(int j, int alpha) const { return vectors_[j][alpha]; }
  const Components& vectors() const { return vectors_; }
  /// Matrix (j, α) at each grid point.
  std::vector<Mat3> on_grid(const Grid& grid) const;
  /// δ^{jk} e_j^α e_k^β, exact in coefficients.
  SymTensor induced_metric() const;
  Frame scaled(const TrigPoly& f) const;
  /// e'_j = O_j^k e_k for a constant matrix O.
  Frame rotated(const Mat3& o) const;
  int degree() const;

 private:
  Components vectors_;
};

/// Metric-dual covector triple e^j_α at each grid point, matrix (j, α).
struct Coframe {
  Grid grid;
  std::vector<Mat3> values;
};

/// g^{αβ} = ½ tr(L^(α) L^(β)), exact in coefficients.
SymTensor contravariant_metric(const PrincipalSymbol& sym);
Metric metric_from_symbol(const PrincipalSymbol& sym, const Grid& grid);

/// True iff the smallest eigenvalue of g^{αβ} exceeds tol_ellip at every
/// point of a grid_size³ grid. Requires grid_size ≥ 2·degree + 1.
bool ellipticity_check(const PrincipalSymbol& sym, int grid_size, double tol_ellip = Tolerances{}.ellip);

/// e_1^α = Re(L^(α))₁₂, e_2^α = −Im(L^(α))₁₂, e_3^α = Re(L^(α))₁₁.
Frame frame_from_symbol(const PrincipalSymbol& sym);
/// L^(α) = e_j^α s^j.
PrincipalSymbol symbol_from_frame(const Frame& frame);

/// e^j_α = δ^{jk} g_{αβ} e_k^β on the metric's grid.
Coframe coframe(const Metric& metric, const Frame& frame);

/// Per-point values of both charge formulas.
struct ChargeSamples {
  RealGrid analytic;  ///< −(i/2) √det g_{αβ} tr(L^(1) L^(2) L^(3))
  RealGrid frame;     ///< sgn det e_j^α
};
ChargeSamples charge_samples(const PrincipalSymbol& sym, const Grid& grid);

/// Topological charge ±1. Throws ChargeInconsistent if the two formulas
/// disagree anywhere or the analytic value is not within tol of ±1.
int topological_charge(const PrincipalSymbol& sym, const Grid& grid, double tol_charge = Tolerances{}.charge);

/// max over grid of |det L_prin(x, p) + g^{αβ}(x) p_α p_β| for the given momenta.
double polarization_residual(const PrincipalSymbol& sym, const Metric& metric, const std::vector<Vec3>& momenta);

/// max over grid of |g^{αβ} − δ^{jk} e_j^α e_k^β|.
double orthonormality_residual(const Metric& metric, const Frame& frame);

}  // namespace spinspec
