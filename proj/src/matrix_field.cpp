#include "spinspec/matrix_field.hpp"

#include <algorithm>

namespace spinspec {

const std::array<Mat2, 3>& pauli_matrices() {
  static const std::array<Mat2, 3> s = [] {
    const cd i(0.0, 1.0);
    std::array<Mat2, 3> out;
    out[0] << 0.0, 1.0, 1.0, 0.0;
    out[1] << 0.0, -i, i, 0.0;
    out[2] << 1.0, 0.0, 0.0, -1.0;
    return out;
  }();
  return s;
}

MatrixField::MatrixField(TrigPoly a00, TrigPoly a01, TrigPoly a10, TrigPoly a11)
    : entries_{std::move(a00), std::move(a01), std::move(a10), std::move(a11)} {}

MatrixField::MatrixField(const Mat2& m)
    : entries_{TrigPoly(m(0, 0)), TrigPoly(m(0, 1)), TrigPoly(m(1, 0)), TrigPoly(m(1, 1))} {}

MatrixField MatrixField::from_grid(const Grid& grid, const std::vector<Mat2>& values, double drop_tol) {
  MatrixField out;
  ComplexGrid entry(values.size());
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < values.size(); ++i) entry[i] = values[i](r, c);
      out(r, c) = TrigPoly::from_grid(grid, std::span<const cd>(entry), drop_tol);
    }
  }
  return out;
}

int MatrixField::degree() const {
  int d = 0;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

Mat2 MatrixField::at(const Point& x) const {
  Mat2 m;
  m << entries_[0](x), entries_[1](x), entries_[2](x), entries_[3](x);
  return m;
}

std::vector<Mat2> MatrixField::on_grid(const Grid& grid) const {
  std::array<ComplexGrid, 4> e;
  for (int k = 0; k < 4; ++k) e[k] = entries_[k].on_grid(grid);
  std::vector<Mat2> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] << e[0][i], e[1][i], e[2][i], e[3][i];
  return out;
}

MatrixField MatrixField::adjoint() const {
  return MatrixField(entries_[0].conj(), entries_[2].conj(), entries_[1].conj(), entries_[3].conj());
}

MatrixField MatrixField::derivative(int axis) const {
  return MatrixField(entries_[0].derivative(axis), entries_[1].derivative(axis), entries_[2].derivative(axis),
                     entries_[3].derivative(axis));
}

MatrixField MatrixField::reflected() const {
  return MatrixField(entries_[0].reflected(), entries_[1].reflected(), entries_[2].reflected(),
                     entries_[3].reflected());
}

TrigPoly MatrixField::trace() const { return entries_[0] + entries_[3]; }

MatrixField MatrixField::pruned(double tol) const {
  return MatrixField(entries_[0].pruned(tol), entries_[1].pruned(tol), entries_[2].pruned(tol),
                     entries_[3].pruned(tol));
}

MatrixField MatrixField::truncated(int max_degree) const {
  return MatrixField(entries_[0].truncated(max_degree), entries_[1].truncated(max_degree),
                     entries_[2].truncated(max_degree), entries_[3].truncated(max_degree));
}

bool MatrixField::is_hermitian(double tol) const {
  return entries_[0].is_real(tol) && entries_[3].is_real(tol) &&
         max_coefficient_difference(entries_[2], entries_[1].conj()) <= tol;
}

bool MatrixField::is_trace_free(double tol) const { return trace().max_coefficient() <= tol; }

double MatrixField::max_coefficient() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_coefficient());
  return m;
}

MatrixField& MatrixField::operator+=(const MatrixField& o) {
  for (int k = 0; k < 4; ++k) entries_[k] += o.entries_[k];
  return *this;
}

MatrixField& MatrixField::operator-=(const MatrixField& o) {
  for (int k = 0; k < 4; ++k) entries_[k] -= o.entries_[k];
  return *this;
}

MatrixField operator*(const MatrixField& a, const MatrixField& b) {
  MatrixField out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
  }
  return out;
}

MatrixField operator*(const TrigPoly& f, const MatrixField& a) {
  return MatrixField(f * a(0, 0), f * a(0, 1), f * a(1, 0), f * a(1, 1));
}

MatrixField operator*(cd s, const MatrixField& a) {
  return MatrixField(s * a(0, 0), s * a(0, 1), s * a(1, 0), s * a(1, 1));
}

double max_coefficient_difference(const MatrixField& a, const MatrixField& b) {
  return (a - b).max_coefficient();
}

double max_grid_difference(const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace spinspec
