#pragma once

#include <array>
#include <complex>
#include <map>

#include "spinspec/grid.hpp"

namespace spinspec {

using Freq = std::array<int, 3>;

Freq operator+(const Freq& a, const Freq& b);
Freq operator-(const Freq& a);

/// Trigonometric polynomial on the 3-torus, f(x) = Σ_k c_k e^{ik·x}, stored
/// as an exact sparse coefficient map. All arithmetic except grid round trips
/// is exact up to rounding.
class TrigPoly {
 public:
  using Coefficients = std::map<Freq, cd>;

  TrigPoly() = default;
  explicit TrigPoly(Coefficients coeffs);
  /// Constant function.
  TrigPoly(cd value);  // NOLINT(google-explicit-constructor)
  TrigPoly(double value) : TrigPoly(cd(value)) {}  // NOLINT

  static TrigPoly exponential(const Freq& k, cd amplitude = 1.0);
  static TrigPoly cosine(const Freq& k, double amplitude = 1.0);
  static TrigPoly sine(const Freq& k, double amplitude = 1.0);
  /// Coefficients of the grid samples. Requires values on a grid of size n;
  /// coefficients below drop_tol·max|c| are discarded.
  static TrigPoly from_grid(const Grid& grid, std::span<const cd> values, double drop_tol = 1e-15);
  static TrigPoly from_grid(const Grid& grid, std::span<const double> values, double drop_tol = 1e-15);

  const Coefficients& coefficients() const { return coeffs_; }
  cd coefficient(const Freq& k) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Largest |k_α| over stored frequencies (0 for constants and zero).
  int degree() const;

  cd operator()(const Point& x) const;
  ComplexGrid on_grid(const Grid& grid) const;
  RealGrid real_on_grid(const Grid& grid) const;

  /// Pointwise complex conjugate: c_k ↦ conj(c_{−k}).
  TrigPoly conj() const;
  TrigPoly real_part() const;
  TrigPoly imag_part() const;
  /// Exact ∂/∂x^axis: c_k ↦ i k_axis c_k.
  TrigPoly derivative(int axis) const;
  /// f(−x): c_k ↦ c_{−k}.
  TrigPoly reflected() const;
  /// True when c_{−k} = conj(c_k) within tol.
  bool is_real(double tol = 1e-12) const;
  double max_coefficient() const;
  /// Σ |c_k|, an upper bound for max_x |f(x)|.
  double l1_norm() const;
  /// Removes coefficients with |c_k| ≤ tol.
  TrigPoly pruned(double tol) const;
  /// Keeps only frequencies with max|k_α| ≤ max_degree.
  TrigPoly truncated(int max_degree) const;

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(cd scalar);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
  friend TrigPoly operator*(TrigPoly a, cd s) { return a *= s; }
  friend TrigPoly operator*(cd s, TrigPoly a) { return a *= s; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

 private:
  Coefficients coeffs_;
};

/// max_k |a_k − b_k|.
double max_coefficient_difference(const TrigPoly& a, const TrigPoly& b);

}  // namespace spinspec
