#include "spinspec/dirac.hpp"

#include <cmath>
#include <numbers>

#include "spinspec/parallel.hpp"

namespace spinspec {

namespace {

const cd kI(0.0, 1.0);

RealGrid component(const std::vector<Mat3>& m, int r, int c) {
  RealGrid out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i](r, c);
  return out;
}

}  // namespace

PauliField pauli_field(const PrincipalSymbol& reference, const Metric& metric) {
  const Grid& grid = metric.grid();
  PauliField p{grid, {}, {}, {}};
  for (int b = 0; b < 3; ++b) {
    p.upper[b] = reference[b].on_grid(grid);
    for (int a = 0; a < 3; ++a) p.derivative[a][b] = reference[b].derivative(a).on_grid(grid);
  }
  for (int a = 0; a < 3; ++a) p.lower[a].assign(grid.size(), Mat2::Zero());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Mat3& g = metric.covariant_grid()[i];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) p.lower[a][i] += g(a, b) * p.upper[b][i];
    }
  });
  return p;
}

double pauli_relation_residual(const PauliField& pauli, const Metric& metric) {
  double r = 0.0;
  for (std::size_t i = 0; i < pauli.grid.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        const Mat2 ac = pauli.upper[a][i] * pauli.upper[b][i] + pauli.upper[b][i] * pauli.upper[a][i] -
                        2.0 * metric.contravariant_grid()[i](a, b) * Mat2::Identity();
        r = std::max(r, ac.cwiseAbs().maxCoeff());
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- Christoffel

ChristoffelField christoffel(const Metric& metric) {
  const Grid& grid = metric.grid();
  const auto& lower = metric.covariant_grid();
  // dg[a][b][c] = ∂_c g_{ab}
  std::array<std::array<std::array<RealGrid, 3>, 3>, 3> dg;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      const auto gab = component(lower, a, b);
      dg[a][b] = fourier::gradient(grid, std::span<const double>(gab));
      if (a != b) dg[b][a] = dg[a][b];
    }
  }
  ChristoffelField out{grid, std::vector<std::array<Mat3, 3>>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) {
    // first kind: [αγ, δ] = ½(∂_α g_{γδ} + ∂_γ g_{αδ} − ∂_δ g_{αγ})
    std::array<Mat3, 3> first;
    for (int d = 0; d < 3; ++d) {
      for (int a = 0; a < 3; ++a) {
        for (int c = 0; c < 3; ++c) {
          first[d](a, c) = 0.5 * (dg[c][d][a][i] + dg[a][d][c][i] - dg[a][c][d][i]);
        }
      }
    }
    const Mat3& gu = metric.contravariant_grid()[i];
    for (int b = 0; b < 3; ++b) {
      Mat3 s = Mat3::Zero();
      for (int d = 0; d < 3; ++d) s += gu(b, d) * first[d];
      out.gamma[i][b] = s;
    }
  });
  return out;
}

double christoffel_symmetry_residual(const ChristoffelField& chris) {
  double r = 0.0;
  for (const auto& g : chris.gamma) {
    for (int b = 0; b < 3; ++b) r = std::max(r, (g[b] - g[b].transpose()).cwiseAbs().maxCoeff());
  }
  return r;
}

double christoffel_compatibility_residual(const ChristoffelField& chris, const Metric& metric) {
  const Grid& grid = metric.grid();
  const auto& lower = metric.covariant_grid();
  double r = 0.0;
  for (int b = 0; b < 3; ++b) {
    for (int c = b; c < 3; ++c) {
      const auto gbc = component(lower, b, c);
      const auto grad = fourier::gradient(grid, std::span<const double>(gbc));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int a = 0; a < 3; ++a) {
          double v = grad[a][i];
          for (int d = 0; d < 3; ++d) {
            v -= chris.gamma[i][d](a, b) * lower[i](d, c) + chris.gamma[i][d](a, c) * lower[i](b, d);
          }
          r = std::max(r, std::abs(v));
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- Weyl operator

std::vector<Spinor> weyl_apply(const PauliField& pauli, const ChristoffelField& chris, const SpinorField& xi) {
  const Grid& grid = pauli.grid;
  std::array<ComplexGrid, 2> comp;
  for (int c = 0; c < 2; ++c) {
    comp[c].resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) comp[c][i] = xi.values[i](c);
  }
  const auto d0 = fourier::gradient(grid, std::span<const cd>(comp[0]));
  const auto d1 = fourier::gradient(grid, std::span<const cd>(comp[1]));

  std::vector<Spinor> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    Spinor w = Spinor::Zero();
    for (int a = 0; a < 3; ++a) {
      Mat2 conn = Mat2::Zero();
      for (int b = 0; b < 3; ++b) {
        Mat2 inner = pauli.derivative[a][b][i];
        for (int c = 0; c < 3; ++c) inner += chris.gamma[i][b](a, c) * pauli.upper[c][i];
        conn += pauli.lower[b][i] * inner;
      }
      Spinor d;
      d << d0[a][i], d1[a][i];
      w += pauli.upper[a][i] * (d + 0.25 * conn * xi.values[i]);
    }
    out[i] = -kI * w;
  });
  return out;
}

std::vector<Spinor> weyl_apply(const PauliField& pauli, const Metric& metric, const SpinorField& xi) {
  return weyl_apply(pauli, christoffel(metric), xi);
}

RealGrid dirac_lagrangian(const PauliField& pauli, const Metric& metric, const SpinorField& xi) {
  const auto w = weyl_apply(pauli, metric, xi);
  RealGrid out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = xi.values[i].dot(w[i]).real();
  return out;
}

double dirac_action(const PauliField& pauli, const Metric& metric, const SpinorField& xi) {
  auto density = dirac_lagrangian(pauli, metric, xi);
  for (std::size_t i = 0; i < density.size(); ++i) density[i] *= metric.density()[i];
  return integrate(metric.grid(), density);
}

// ---------------------------------------------------------------- torsion

RealGrid axial_torsion(const Frame& frame, const Metric& metric) {
  const Grid& grid = metric.grid();
  const auto co = coframe(metric, frame);
  // c[k][α] values and dc[k][α][β] = ∂_β e^k_α
  std::array<std::array<RealGrid, 3>, 3> c;
  std::array<std::array<std::array<RealGrid, 3>, 3>, 3> dc;
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 3; ++a) {
      c[k][a] = component(co.values, k, a);
      dc[k][a] = fourier::gradient(grid, std::span<const double>(c[k][a]));
    }
  }
  RealGrid out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
      s += c[k][0][i] * dc[k][2][1][i] + c[k][1][i] * dc[k][0][2][i] + c[k][2][i] * dc[k][1][0][i] -
           c[k][0][i] * dc[k][1][2][i] - c[k][1][i] * dc[k][2][0][i] - c[k][2][i] * dc[k][0][1][i];
    }
    // √det g^{αβ} = 1/√det g_{αβ}
    out[i] = s / (3.0 * metric.density()[i]);
  });
  return out;
}

RealGrid torsion_spinor_identity_residual(const Frame& frame, const Metric& metric, const SpinorField& xi,
                                          const PauliField& pauli) {
  auto t = axial_torsion(frame, metric);
  const auto lag = dirac_lagrangian(pauli, metric, xi);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] -= 4.0 * lag[i] / (3.0 * xi.values[i].squaredNorm());
  return t;
}

// ---------------------------------------------------------------- coefficients

double coeff_a(const SpinorField& xi, const Metric& metric) {
  RealGrid f(xi.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(xi.values[i].norm(), 3) * metric.density()[i];
  return integrate(metric.grid(), f) / (6.0 * std::numbers::pi * std::numbers::pi);
}

double coeff_b_action(const SpinorField& xi, const PauliField& pauli, const Metric& metric) {
  return dirac_action(pauli, metric, xi) / (2.0 * std::numbers::pi * std::numbers::pi);
}

double coeff_b_torsion(const RealGrid& weight, const Frame& frame, const Metric& metric, int charge) {
  auto t = axial_torsion(frame, metric);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] *= weight[i] * weight[i] * metric.density()[i];
  return 3.0 * charge * integrate(metric.grid(), t) / (8.0 * std::numbers::pi * std::numbers::pi);
}

// ---------------------------------------------------------------- inversion

RealGrid inverted(const Grid& grid, const RealGrid& values) {
  RealGrid out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto c = grid.coords(i);
    out[i] = values[grid.index(-c[0], -c[1], -c[2])];
  }
  return out;
}

SpinorField inverted(const SpinorField& xi) {
  SpinorField out = xi;
  for (std::size_t i = 0; i < xi.values.size(); ++i) {
    const auto c = xi.grid.coords(i);
    const std::size_t j = xi.grid.index(-c[0], -c[1], -c[2]);
    out.values[i] = xi.values[j];
    out.weight[i] = xi.weight[j];
  }
  return out;
}

}  // namespace spinspec
