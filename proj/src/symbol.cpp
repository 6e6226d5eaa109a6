#include "spinspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinspec/errors.hpp"
#include "spinspec/parallel.hpp"

namespace spinspec {

PrincipalSymbol::PrincipalSymbol(std::array<MatrixField, 3> components) : components_(std::move(components)) {
  for (int a = 0; a < 3; ++a) {
    const double scale = std::max(1.0, components_[a].max_coefficient());
    if (!components_[a].is_hermitian(1e-12 * scale)) {
      throw ValidationError("symbol component L^(" + std::to_string(a + 1) + ") is not Hermitian");
    }
    if (!components_[a].is_trace_free(1e-12 * scale)) {
      throw ValidationError("symbol component L^(" + std::to_string(a + 1) + ") is not trace-free");
    }
  }
}

int PrincipalSymbol::degree() const {
  return std::max({components_[0].degree(), components_[1].degree(), components_[2].degree()});
}

Mat2 PrincipalSymbol::at(const Point& x, const Vec3& p) const {
  Mat2 m = Mat2::Zero();
  for (int a = 0; a < 3; ++a) m += components_[a].at(x) * p[a];
  return m;
}

PrincipalSymbol PrincipalSymbol::scaled(const TrigPoly& f) const {
  return PrincipalSymbol({f * components_[0], f * components_[1], f * components_[2]});
}

PrincipalSymbol PrincipalSymbol::projected(const std::array<MatrixField, 3>& components) {
  std::array<MatrixField, 3> out;
  for (int a = 0; a < 3; ++a) {
    const MatrixField& raw = components[a];
    const TrigPoly diag = ((raw(0, 0) - raw(1, 1)) * cd(0.5)).real_part();
    const TrigPoly upper = (raw(0, 1) + raw(1, 0).conj()) * cd(0.5);
    out[a] = MatrixField(diag, upper, upper.conj(), -diag);
  }
  return PrincipalSymbol(std::move(out));
}

PrincipalSymbol PrincipalSymbol::conjugated(const MatrixField& q) const {
  const auto qa = q.adjoint();
  return projected({q * components_[0] * qa, q * components_[1] * qa, q * components_[2] * qa});
}

PrincipalSymbol PrincipalSymbol::inverted() const {
  return PrincipalSymbol({cd(-1.0) * components_[0].reflected(), cd(-1.0) * components_[1].reflected(),
                          cd(-1.0) * components_[2].reflected()});
}

PrincipalSymbol PrincipalSymbol::pruned(double tol) const {
  return PrincipalSymbol({components_[0].pruned(tol), components_[1].pruned(tol), components_[2].pruned(tol)});
}

// ---------------------------------------------------------------- Metric

Metric Metric::from_contravariant(const SymTensor& g, const Grid& grid) {
  Metric m(grid);
  m.exact_ = g;
  std::array<std::array<RealGrid, 3>, 3> samples;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) samples[a][b] = g[a][b].real_on_grid(grid);
  }
  m.upper_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        m.upper_[i](a, b) = samples[a][b][i];
        m.upper_[i](b, a) = samples[a][b][i];
      }
    }
  }
  m.lower_.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { m.lower_[i] = m.upper_[i].inverse(); });
  m.finalize();
  return m;
}

Metric Metric::from_contravariant_grid(std::vector<Mat3> contravariant, const Grid& grid) {
  Metric m(grid);
  m.upper_ = std::move(contravariant);
  m.lower_.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { m.lower_[i] = m.upper_[i].inverse(); });
  m.finalize();
  return m;
}

Metric Metric::from_covariant_grid(std::vector<Mat3> covariant, const Grid& grid) {
  Metric m(grid);
  m.lower_ = std::move(covariant);
  m.upper_.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { m.upper_[i] = m.lower_[i].inverse(); });
  m.finalize();
  return m;
}

void Metric::finalize() {
  density_.resize(grid_.size());
  RealGrid min_eig(grid_.size());
  parallel_for(grid_.size(), [&](std::size_t i) {
    const double det_lower = lower_[i].determinant();
    density_[i] = det_lower > 0.0 ? std::sqrt(det_lower) : 0.0;
    Eigen::SelfAdjointEigenSolver<Mat3> es(upper_[i], Eigen::EigenvaluesOnly);
    min_eig[i] = es.eigenvalues()(0);
  });
  min_eigenvalue_ = *std::min_element(min_eig.begin(), min_eig.end());
}

double Metric::inverse_residual() const {
  double r = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    r = std::max(r, (lower_[i] * upper_[i] - Mat3::Identity()).cwiseAbs().maxCoeff());
  }
  return r;
}

// ---------------------------------------------------------------- Frame

Frame Frame::identity() {
  Components c;
  for (int j = 0; j < 3; ++j) {
    for (int a = 0; a < 3; ++a) c[j][a] = TrigPoly(j == a ? 1.0 : 0.0);
  }
  return Frame(std::move(c));
}

std::vector<Mat3> Frame::on_grid(const Grid& grid) const {
  std::array<std::array<RealGrid, 3>, 3> samples;
  for (int j = 0; j < 3; ++j) {
    for (int a = 0; a < 3; ++a) samples[j][a] = vectors_[j][a].real_on_grid(grid);
  }
  std::vector<Mat3> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int a = 0; a < 3; ++a) out[i](j, a) = samples[j][a][i];
    }
  }
  return out;
}

SymTensor Frame::induced_metric() const {
  SymTensor g;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      TrigPoly s;
      for (int j = 0; j < 3; ++j) s += vectors_[j][a] * vectors_[j][b];
      g[a][b] = s;
    }
  }
  return g;
}

Frame Frame::scaled(const TrigPoly& f) const {
  Components c;
  for (int j = 0; j < 3; ++j) {
    for (int a = 0; a < 3; ++a) c[j][a] = f * vectors_[j][a];
  }
  return Frame(std::move(c));
}

Frame Frame::rotated(const Mat3& o) const {
  Components c;
  for (int j = 0; j < 3; ++j) {
    for (int a = 0; a < 3; ++a) {
      TrigPoly s;
      for (int k = 0; k < 3; ++k) s += vectors_[k][a] * cd(o(j, k));
      c[j][a] = s;
    }
  }
  return Frame(std::move(c));
}

int Frame::degree() const {
  int d = 0;
  for (const auto& row : vectors_) {
    for (const auto& e : row) d = std::max(d, e.degree());
  }
  return d;
}

// ---------------------------------------------------------------- operations

SymTensor contravariant_metric(const PrincipalSymbol& sym) {
  SymTensor g;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      g[a][b] = ((sym[a] * sym[b]).trace() * cd(0.5)).real_part();
      g[b][a] = g[a][b];
    }
  }
  return g;
}

Metric metric_from_symbol(const PrincipalSymbol& sym, const Grid& grid) {
  return Metric::from_contravariant(contravariant_metric(sym), grid);
}

bool ellipticity_check(const PrincipalSymbol& sym, int grid_size, double tol_ellip) {
  if (grid_size < 2 * sym.degree() + 1) {
    throw ValidationError("ellipticity grid of size " + std::to_string(grid_size) + " is too coarse for degree " +
                          std::to_string(sym.degree()));
  }
  return metric_from_symbol(sym, Grid(grid_size)).min_eigenvalue() > tol_ellip;
}

Frame frame_from_symbol(const PrincipalSymbol& sym) {
  Frame::Components c;
  for (int a = 0; a < 3; ++a) {
    c[0][a] = sym[a](0, 1).real_part();
    c[1][a] = -sym[a](0, 1).imag_part();
    c[2][a] = sym[a](0, 0).real_part();
  }
  return Frame(std::move(c));
}

PrincipalSymbol symbol_from_frame(const Frame& frame) {
  std::array<MatrixField, 3> out;
  const cd i(0.0, 1.0);
  for (int a = 0; a < 3; ++a) {
    const TrigPoly& e1 = frame(0, a);
    const TrigPoly& e2 = frame(1, a);
    const TrigPoly& e3 = frame(2, a);
    // e1 s¹ + e2 s² + e3 s³
    out[a] = MatrixField(e3, e1 - i * e2, e1 + i * e2, -e3);
  }
  return PrincipalSymbol(std::move(out));
}

Coframe coframe(const Metric& metric, const Frame& frame) {
  const auto& grid = metric.grid();
  const auto e = frame.on_grid(grid);
  Coframe out{grid, std::vector<Mat3>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = e[i] * metric.covariant_grid()[i];
  return out;
}

ChargeSamples charge_samples(const PrincipalSymbol& sym, const Grid& grid) {
  const auto metric = metric_from_symbol(sym, grid);
  const auto l1 = sym[0].on_grid(grid);
  const auto l2 = sym[1].on_grid(grid);
  const auto l3 = sym[2].on_grid(grid);
  const auto e = frame_from_symbol(sym).on_grid(grid);
  ChargeSamples out{RealGrid(grid.size()), RealGrid(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) {
    const cd tr = (l1[i] * l2[i] * l3[i]).trace();
    out.analytic[i] = (cd(0.0, -0.5) * metric.density()[i] * tr).real();
    const double det = e[i].determinant();
    out.frame[i] = det > 0.0 ? 1.0 : (det < 0.0 ? -1.0 : 0.0);
  });
  return out;
}

int topological_charge(const PrincipalSymbol& sym, const Grid& grid, double tol_charge) {
  const auto s = charge_samples(sym, grid);
  const double sign = s.frame.front();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (s.frame[i] != sign || sign == 0.0) {
      throw ChargeInconsistent("frame orientation changes sign on the grid (symbol not elliptic)");
    }
    if (std::abs(s.analytic[i] - sign) > tol_charge) {
      throw ChargeInconsistent("analytic charge " + std::to_string(s.analytic[i]) +
                               " disagrees with frame orientation " + std::to_string(sign));
    }
  }
  return sign > 0.0 ? 1 : -1;
}

double polarization_residual(const PrincipalSymbol& sym, const Metric& metric, const std::vector<Vec3>& momenta) {
  const auto& grid = metric.grid();
  std::array<std::vector<Mat2>, 3> l = {sym[0].on_grid(grid), sym[1].on_grid(grid), sym[2].on_grid(grid)};
  double r = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const auto& p : momenta) {
      const Mat2 lp = l[0][i] * p[0] + l[1][i] * p[1] + l[2][i] * p[2];
      const double quad = p.dot(metric.contravariant_grid()[i] * p);
      r = std::max(r, std::abs(lp.determinant() + quad));
    }
  }
  return r;
}

double orthonormality_residual(const Metric& metric, const Frame& frame) {
  const auto e = frame.on_grid(metric.grid());
  double r = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    r = std::max(r, (metric.contravariant_grid()[i] - e[i].transpose() * e[i]).cwiseAbs().maxCoeff());
  }
  return r;
}

}  // namespace spinspec
