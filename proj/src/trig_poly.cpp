#include "spinspec/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace spinspec {

Freq operator+(const Freq& a, const Freq& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Freq operator-(const Freq& a) { return {-a[0], -a[1], -a[2]}; }

TrigPoly::TrigPoly(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == cd(0.0); });
}

TrigPoly::TrigPoly(cd value) {
  if (value != cd(0.0)) coeffs_[{0, 0, 0}] = value;
}

TrigPoly TrigPoly::exponential(const Freq& k, cd amplitude) { return TrigPoly(Coefficients{{k, amplitude}}); }

TrigPoly TrigPoly::cosine(const Freq& k, double amplitude) {
  return exponential(k, 0.5 * amplitude) + exponential(-k, 0.5 * amplitude);
}

TrigPoly TrigPoly::sine(const Freq& k, double amplitude) {
  return exponential(k, cd(0.0, -0.5 * amplitude)) + exponential(-k, cd(0.0, 0.5 * amplitude));
}

TrigPoly TrigPoly::from_grid(const Grid& grid, std::span<const cd> values, double drop_tol) {
  const auto coeffs = fourier::forward(grid, values);
  const int n = grid.n();
  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  Coefficients out;
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (std::abs(coeffs[idx]) <= drop_tol * cmax) continue;
    const auto c = grid.coords(idx);
    // Nyquist modes are ambiguous between ±N/2 and are dropped.
    if (n % 2 == 0 && (c[0] == n / 2 || c[1] == n / 2 || c[2] == n / 2)) continue;
    out[{fourier::wrap(c[0], n), fourier::wrap(c[1], n), fourier::wrap(c[2], n)}] = coeffs[idx];
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::from_grid(const Grid& grid, std::span<const double> values, double drop_tol) {
  ComplexGrid c(values.begin(), values.end());
  return from_grid(grid, std::span<const cd>(c), drop_tol);
}

cd TrigPoly::coefficient(const Freq& k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cd(0.0) : it->second;
}

int TrigPoly::degree() const {
  int d = 0;
  for (const auto& [k, c] : coeffs_) {
    d = std::max({d, std::abs(k[0]), std::abs(k[1]), std::abs(k[2])});
  }
  return d;
}

cd TrigPoly::operator()(const Point& x) const {
  cd sum = 0.0;
  for (const auto& [k, c] : coeffs_) {
    const double phase = k[0] * x[0] + k[1] * x[1] + k[2] * x[2];
    sum += c * cd(std::cos(phase), std::sin(phase));
  }
  return sum;
}

ComplexGrid TrigPoly::on_grid(const Grid& grid) const {
  // On the grid e^{ik·x} only sees k mod N, so folding the coefficients
  // gives exact samples at any degree.
  ComplexGrid coeffs(grid.size(), cd(0.0));
  for (const auto& [k, c] : coeffs_) coeffs[grid.index(k[0], k[1], k[2])] += c;
  return fourier::backward(grid, coeffs);
}

RealGrid TrigPoly::real_on_grid(const Grid& grid) const {
  const auto values = on_grid(grid);
  RealGrid out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

TrigPoly TrigPoly::conj() const {
  Coefficients out;
  for (const auto& [k, c] : coeffs_) out[-k] = std::conj(c);
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::real_part() const { return (*this + conj()) * cd(0.5); }

TrigPoly TrigPoly::imag_part() const { return (*this - conj()) * cd(0.0, -0.5); }

TrigPoly TrigPoly::derivative(int axis) const {
  Coefficients out;
  for (const auto& [k, c] : coeffs_) {
    if (k[axis] != 0) out[k] = cd(0.0, k[axis]) * c;
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::reflected() const {
  Coefficients out;
  for (const auto& [k, c] : coeffs_) out[-k] = c;
  return TrigPoly(std::move(out));
}

bool TrigPoly::is_real(double tol) const { return max_coefficient_difference(*this, conj()) <= tol; }

double TrigPoly::max_coefficient() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double TrigPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : coeffs_) s += std::abs(c);
  return s;
}

TrigPoly TrigPoly::pruned(double tol) const {
  Coefficients out;
  for (const auto& [k, c] : coeffs_) {
    if (std::abs(c) > tol) out[k] = c;
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::truncated(int max_degree) const {
  Coefficients out;
  for (const auto& [k, c] : coeffs_) {
    if (std::abs(k[0]) <= max_degree && std::abs(k[1]) <= max_degree && std::abs(k[2]) <= max_degree) {
      out[k] = c;
    }
  }
  return TrigPoly(std::move(out));
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  for (const auto& [k, c] : other.coeffs_) coeffs_[k] += c;
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == cd(0.0); });
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
  for (const auto& [k, c] : other.coeffs_) coeffs_[k] -= c;
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == cd(0.0); });
  return *this;
}

TrigPoly& TrigPoly::operator*=(cd scalar) {
  if (scalar == cd(0.0)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= scalar;
  return *this;
}

namespace {

// Above this many coefficient pairs the product goes through an alias-free
// grid instead of the exact double loop.
constexpr std::size_t kDirectProductLimit = 1 << 18;

int smooth_size(int n) {
  for (;; ++n) {
    int m = n;
    for (int p : {2, 3, 5}) {
      while (m % p == 0) m /= p;
    }
    if (m == 1) return n;
  }
}

}  // namespace

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  if (a.coeffs_.size() * b.coeffs_.size() > kDirectProductLimit) {
    const Grid grid(smooth_size(2 * (a.degree() + b.degree()) + 1));
    ComplexGrid va = a.on_grid(grid);
    const ComplexGrid vb = b.on_grid(grid);
    for (std::size_t i = 0; i < va.size(); ++i) va[i] *= vb[i];
    return TrigPoly::from_grid(grid, std::span<const cd>(va));
  }
  TrigPoly::Coefficients out;
  for (const auto& [ka, ca] : a.coeffs_) {
    for (const auto& [kb, cb] : b.coeffs_) out[ka + kb] += ca * cb;
  }
  return TrigPoly(std::move(out));
}

double max_coefficient_difference(const TrigPoly& a, const TrigPoly& b) {
  return (a - b).max_coefficient();
}

}  // namespace spinspec
