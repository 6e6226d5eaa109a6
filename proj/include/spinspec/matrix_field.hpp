#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "spinspec/trig_poly.hpp"

namespace spinspec {

using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using Spinor = Eigen::Vector2cd;

/// The standard Pauli matrices s¹, s², s³.
const std::array<Mat2, 3>& pauli_matrices();

/// 2×2 matrix whose entries are trigonometric polynomials; entry(r, c) is
/// row r, column c (0-based), so the dotted-1/undotted-2 entry is (0, 1).
class MatrixField {
 public:
  MatrixField() = default;
  MatrixField(TrigPoly a00, TrigPoly a01, TrigPoly a10, TrigPoly a11);
  /// Constant field.
  explicit MatrixField(const Mat2& m);

  static MatrixField identity() { return MatrixField(Mat2::Identity()); }
  static MatrixField zero() { return MatrixField(Mat2::Zero()); }
  /// Assembles a field from grid samples (Fourier re-expansion).
  static MatrixField from_grid(const Grid& grid, const std::vector<Mat2>& values, double drop_tol = 1e-15);

  const TrigPoly& operator()(int r, int c) const { return entries_[2 * r + c]; }
  TrigPoly& operator()(int r, int c) { return entries_[2 * r + c]; }

  int degree() const;
  Mat2 at(const Point& x) const;
  std::vector<Mat2> on_grid(const Grid& grid) const;

  MatrixField adjoint() const;
  MatrixField derivative(int axis) const;
  MatrixField reflected() const;
  TrigPoly trace() const;
  MatrixField pruned(double tol) const;
  MatrixField truncated(int max_degree) const;

  /// entry(1,0) = conj(entry(0,1)) and diagonal real, checked in coefficients.
  bool is_hermitian(double tol = 1e-12) const;
  bool is_trace_free(double tol = 1e-12) const;
  double max_coefficient() const;

  MatrixField& operator+=(const MatrixField& o);
  MatrixField& operator-=(const MatrixField& o);
  friend MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
  friend MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }
  friend MatrixField operator*(const MatrixField& a, const MatrixField& b);
  friend MatrixField operator*(const TrigPoly& f, const MatrixField& a);
  friend MatrixField operator*(cd s, const MatrixField& a);

 private:
  std::array<TrigPoly, 4> entries_;
};

double max_coefficient_difference(const MatrixField& a, const MatrixField& b);

/// max over grid points of ‖A(x) − B(x)‖_max.
double max_grid_difference(const std::vector<Mat2>& a, const std::vector<Mat2>& b);

}  // namespace spinspec
