#include "spinspec/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace spinspec {

Grid::Grid(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
}

double Grid::spacing() const { return 2.0 * std::numbers::pi / n_; }

double Grid::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

std::array<int, 3> Grid::coords(std::size_t index) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(index / (n * n)), static_cast<int>((index / n) % n),
          static_cast<int>(index % n)};
}

Point Grid::point(std::size_t index) const {
  const auto c = coords(index);
  const double h = spacing();
  return {h * c[0], h * c[1], h * c[2]};
}

std::size_t Grid::index(int i, int j, int l) const {
  auto mod = [this](int a) { return ((a % n_) + n_) % n_; };
  const auto n = static_cast<std::size_t>(n_);
  return (static_cast<std::size_t>(mod(i)) * n + mod(j)) * n + mod(l);
}

std::size_t Grid::step(std::size_t idx, int axis, int delta) const {
  auto c = coords(idx);
  c[axis] += delta;
  return index(c[0], c[1], c[2]);
}

namespace fourier {
namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(int n, ComplexGrid& data, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_3d(n, n, n, ptr, ptr, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

int wrap(int a, int n) { return a < (n + 1) / 2 ? a : a - n; }

ComplexGrid forward(const Grid& grid, std::span<const cd> values) {
  ComplexGrid data(values.begin(), values.end());
  transform(grid.n(), data, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : data) v *= scale;
  return data;
}

ComplexGrid backward(const Grid& grid, std::span<const cd> coefficients) {
  ComplexGrid data(coefficients.begin(), coefficients.end());
  transform(grid.n(), data, FFTW_BACKWARD);
  return data;
}

namespace {

ComplexGrid differentiate_coefficients(const Grid& grid, const ComplexGrid& coeffs, int axis) {
  const int n = grid.n();
  ComplexGrid out(coeffs.size());
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    const int a = grid.coords(idx)[axis];
    const bool nyquist = (n % 2 == 0) && a == n / 2;
    const double k = nyquist ? 0.0 : wrap(a, n);
    out[idx] = cd(0.0, k) * coeffs[idx];
  }
  return backward(grid, out);
}

}  // namespace

ComplexGrid derivative(const Grid& grid, std::span<const cd> values, int axis) {
  return differentiate_coefficients(grid, forward(grid, values), axis);
}

RealGrid derivative(const Grid& grid, std::span<const double> values, int axis) {
  ComplexGrid c(values.begin(), values.end());
  const auto d = derivative(grid, c, axis);
  RealGrid out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
  return out;
}

std::array<ComplexGrid, 3> gradient(const Grid& grid, std::span<const cd> values) {
  const auto coeffs = forward(grid, values);
  return {differentiate_coefficients(grid, coeffs, 0), differentiate_coefficients(grid, coeffs, 1),
          differentiate_coefficients(grid, coeffs, 2)};
}

std::array<RealGrid, 3> gradient(const Grid& grid, std::span<const double> values) {
  ComplexGrid c(values.begin(), values.end());
  const auto g = gradient(grid, std::span<const cd>(c));
  std::array<RealGrid, 3> out;
  for (int a = 0; a < 3; ++a) {
    out[a].resize(g[a].size());
    for (std::size_t i = 0; i < g[a].size(); ++i) out[a][i] = g[a][i].real();
  }
  return out;
}

}  // namespace fourier

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double integrate(const Grid& grid, std::span<const double> values) {
  return grid.cell_volume() * compensated_sum(values);
}

}  // namespace spinspec
