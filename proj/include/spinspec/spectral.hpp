#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "spinspec/operator.hpp"

namespace spinspec {

/// Plane waves e^{im·x} ê_a with |m_α| ≤ M, a ∈ {0, 1}.
/// Row of (m, a) is 2·((m1+M)(2M+1)² + (m2+M)(2M+1) + (m3+M)) + a.
struct Truncation {
  int M = 0;

  int side() const { return 2 * M + 1; }
  std::size_t modes() const { return static_cast<std::size_t>(side()) * side() * side(); }
  std::size_t dimension() const { return 2 * modes(); }
  bool contains(const Freq& m) const;
  std::size_t mode_index(const Freq& m) const;
  Freq mode(std::size_t mode_index) const;
  std::size_t row(const Freq& m, int a) const { return 2 * mode_index(m) + a; }
};

/// Dense Galerkin matrix with entries [i m_α P̂^α_{m′−m} + Q̂0_{m′−m}]_{a′b}
/// at (row m′a′, column m b). Not symmetrized. Throws TruncationTooSmall
/// if a coefficient frequency exceeds 2M in some component.
Eigen::MatrixXcd assemble(const Operator1st& op, const Truncation& t);

/// Mass matrix of a scalar weight: ŵ_{m′−m} δ_{a′b}.
Eigen::MatrixXcd assemble_weight(const TrigPoly& w, const Truncation& t);

/// Eigenvalues of a Hermitian matrix (dense divide and conquer). The matrix
/// is symmetrized first; up to 20 eigenpairs are checked for
/// ‖Av − λv‖ ≤ 1e−9‖A‖. Throws ConvergenceFailure.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a);
/// Eigenvalues of A v = λ B v for Hermitian A and positive definite B.
std::vector<double> generalized_eigenvalues(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct DiscreteSpectrum {
  std::vector<double> eigenvalues;  ///< sorted ascending
  int M = 0;
  std::size_t dimension = 0;
  std::size_t blocks = 0;   ///< independent diagonal blocks that were solved
  double gamma_min = 0.0;   ///< √(smallest eigenvalue of g^{αβ}) over the grid
  double trust_radius = 0.0;

  bool trusted(double lambda) const { return std::abs(lambda) <= trust_radius; }
  std::vector<double> trusted_eigenvalues() const;
};

/// √ of the smallest metric eigenvalue of the operator's principal part.
double principal_gamma_min(const Operator1st& op, int grid_size = 32);

/// Galerkin spectrum. The basis is split into the connected components of
/// the frequency graph m ~ m + k (k in the coefficient support), and each
/// block is solved separately; the result equals the dense solve.
/// Trust radius is rho·M·gamma_min.
DiscreteSpectrum galerkin_spectrum(const Operator1st& op, const Truncation& t, double rho = 0.5);

/// Spectrum of L v = λ w v by a generalized solve on the same blocks.
DiscreteSpectrum weighted_galerkin_spectrum(const Operator1st& op, const TrigPoly& weight, const Truncation& t,
                                            double rho = 0.5);

struct ReducedOperator {
  Operator1st op;
  int degree_cap = 0;
  /// Σ |c_k| over the discarded coefficients of w^{−1/2}, plus the largest
  /// grid deviation of the kept part; bounds sup |f − f_kept|.
  double truncation_error = 0.0;
};

/// w^{−1/2} ∘ op ∘ w^{−1/2}. w^{−1/2} is sampled on the grid, re-expanded
/// and truncated at degree_cap. Throws NonpositiveWeight.
ReducedOperator weighted_reduce(const Operator1st& op, const TrigPoly& w, int degree_cap, int grid_size = 64);

// ---------------------------------------------------------------- counting

struct CountingRow {
  double lambda;
  std::int64_t count;
  bool trusted;
};

struct CountingTable {
  std::vector<CountingRow> rows;
  std::string provenance;  ///< "galerkin" or "exact_example"
};

/// λ samples (j + ½)·step, j = 0, 1, … while ≤ lambda_max.
std::vector<double> midpoint_samples(double lambda_max, double step = 1.0);

/// N(λ) = #{k : 0 < λ_k < λ}.
CountingTable counting_function(const DiscreteSpectrum& spec, const std::vector<double>& lambdas);

/// #{m ∈ ℤ³ : ‖m‖ < r}.
std::int64_t lattice_count(double r);

/// Shell tallies r₃(n) = #{m : ‖m‖² = n}, n ≤ n_max, for repeated counting.
class LatticeShells {
 public:
  explicit LatticeShells(std::int64_t n_max);
  /// #{m : ‖m‖ < r}; requires r² ≤ n_max + 1.
  std::int64_t count_below(double r) const;

 private:
  std::vector<std::int64_t> cumulative_;
};

/// Eigenvalues of the exactly solvable double-turn example in [−bound, bound]:
/// 1 twice and 1 ± ‖m‖ for m ≠ 0, sorted.
std::vector<double> exact_example_spectrum(double bound);
/// Counting table of the same example from lattice counts.
CountingTable exact_example_counting(const std::vector<double>& lambdas);

struct AsymptoticReport {
  std::vector<double> residual;   ///< N − aλ³ − bλ²
  std::vector<double> scaled;     ///< residual / λ²
  double window_mean = 0.0;       ///< mean of scaled over the window
  double window_lo = 0.0, window_hi = 0.0;
  double exponent = 0.0;          ///< slope of log|residual| vs log λ over the fit range
  double fit_lo = 0.0, fit_hi = 0.0;
};

AsymptoticReport asymptotic_compare(const CountingTable& table, double a, double b, double window_lo,
                                    double window_hi, double fit_lo, double fit_hi);

// ---------------------------------------------------------------- multisets

/// Maximal runs of sorted values with consecutive gaps ≤ gap.
struct Cluster {
  double center;
  std::size_t count;
};
std::vector<Cluster> clusters(std::vector<double> values, double gap = 1e-7);

struct MultisetMatch {
  std::size_t matched = 0;
  std::vector<double> missing;  ///< expected values without a partner
  std::vector<double> extra;    ///< computed values without a partner
  double max_deviation = 0.0;   ///< over matched pairs
};

/// One-to-one matching of two multisets after sorting (two pointers).
MultisetMatch match_multisets(std::vector<double> expected, std::vector<double> computed, double tol);

}  // namespace spinspec
