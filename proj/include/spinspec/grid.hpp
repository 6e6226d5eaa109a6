#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spinspec {

using cd = std::complex<double>;
using Point = std::array<double, 3>;

/// Uniform N×N×N grid on the torus [0, 2π)³. Linear index is
/// (i·N + j)·N + l for the point (2πi/N, 2πj/N, 2πl/N).
class Grid {
 public:
  explicit Grid(int n);

  int n() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  double spacing() const;
  double cell_volume() const;
  Point point(std::size_t index) const;
  std::array<int, 3> coords(std::size_t index) const;
  /// Index of (i, j, l) with periodic wrap-around.
  std::size_t index(int i, int j, int l) const;
  /// Neighbor one step forward along axis (0, 1, 2), periodic.
  std::size_t step(std::size_t index, int axis, int delta = 1) const;

  bool operator==(const Grid&) const = default;

 private:
  int n_;
};

using RealGrid = std::vector<double>;
using ComplexGrid = std::vector<cd>;

/// Discrete Fourier helpers on a Grid. Coefficient arrays use FFT ordering:
/// entry (a, b, c) holds frequency (wrap(a), wrap(b), wrap(c)) with
/// wrap(a) = a for a < N/2 and a − N otherwise.
namespace fourier {

/// Grid values to coefficients c_k of f(x) = Σ c_k e^{ik·x}.
ComplexGrid forward(const Grid& grid, std::span<const cd> values);
/// Coefficients back to grid values.
ComplexGrid backward(const Grid& grid, std::span<const cd> coefficients);

int wrap(int a, int n);

/// ∂f/∂x^axis computed spectrally; the Nyquist mode is discarded.
ComplexGrid derivative(const Grid& grid, std::span<const cd> values, int axis);
RealGrid derivative(const Grid& grid, std::span<const double> values, int axis);
/// All three partial derivatives with one forward transform.
std::array<ComplexGrid, 3> gradient(const Grid& grid, std::span<const cd> values);
std::array<RealGrid, 3> gradient(const Grid& grid, std::span<const double> values);

}  // namespace fourier

/// Neumaier-compensated sum; fixed order, so the result does not depend on
/// how the integrand was produced.
double compensated_sum(std::span<const double> values);

/// Trapezoidal rule on the periodic grid: h³ Σ f.
double integrate(const Grid& grid, std::span<const double> values);

}  // namespace spinspec
