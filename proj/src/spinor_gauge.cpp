#include "spinspec/spinor_gauge.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <deque>

#include "spinspec/errors.hpp"
#include "spinspec/parallel.hpp"

namespace spinspec {

double SpinorField::min_norm() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : values) m = std::min(m, v.norm());
  return m;
}

double SpinorField::normalization_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) d = std::max(d, std::abs(values[i].norm() - weight[i]));
  return d;
}

// ---------------------------------------------------------------- frames

SO3Field relate_frames(const Frame& frame, const Frame& reference, const Metric& metric, const Tolerances& tol) {
  const auto& grid = metric.grid();
  const auto e = frame.on_grid(grid);
  const auto e0 = reference.on_grid(grid);
  double scale = 1.0;
  for (const auto& g : metric.contravariant_grid()) scale = std::max(scale, g.cwiseAbs().maxCoeff());
  double deviation = 0.0;
  bool orientation_differs = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Mat3& g = metric.contravariant_grid()[i];
    deviation = std::max(deviation, (e[i].transpose() * e[i] - g).cwiseAbs().maxCoeff());
    deviation = std::max(deviation, (e0[i].transpose() * e0[i] - g).cwiseAbs().maxCoeff());
    if (e[i].determinant() * e0[i].determinant() < 0.0) orientation_differs = true;
  }
  if (deviation > tol.frame * scale) {
    throw MetricMismatch("frames are not orthonormal for a common metric", deviation);
  }
  if (orientation_differs) {
    throw ChargeMismatch("symbols have opposite topological charge; no special orthogonal relation exists");
  }
  SO3Field out{grid, std::vector<Mat3>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) {
    out.values[i] = e[i] * metric.covariant_grid()[i] * e0[i].transpose();
  });
  return out;
}

// ---------------------------------------------------------------- SO(3) <-> SU(2)

Mat3 so3_from_su2(const Mat2& r) {
  const auto& s = pauli_matrices();
  const Mat2 ra = r.adjoint();
  Mat3 o;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) o(j, k) = 0.5 * (s[j] * r * s[k] * ra).trace().real();
  }
  return o;
}

Mat2 su2_from_so3(const Mat3& o, double tol) {
  if ((o * o.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() > tol || std::abs(o.determinant() - 1.0) > tol) {
    throw LiftIllConditioned("matrix is not special orthogonal within tolerance");
  }
  // Eigen picks the largest of (trace, diagonal entries) as pivot.
  Eigen::Quaterniond q(o);
  q.normalize();
  const auto& s = pauli_matrices();
  // R = q₀ I − i q·s rotates s^k into O_j^k s^j.
  const cd i(0.0, 1.0);
  Mat2 r = q.w() * Mat2::Identity() - i * (q.x() * s[0] + q.y() * s[1] + q.z() * s[2]);
  return r;
}

namespace {

const char* kCycleNames[3] = {"x1", "x2", "x3"};

// Minimum |½ Re tr(A* B)| for neighbours: rotations between adjacent grid
// points larger than 120 degrees are treated as unresolved.
constexpr double kContinuityMargin = 0.5;

int relative_sign(const Mat2& a, const Mat2& b) {
  return (a.adjoint() * b).trace().real() >= 0.0 ? 1 : -1;
}

struct EdgeSigns {
  // sign[axis][i]: relative sign between point i and its forward neighbour.
  std::array<std::vector<signed char>, 3> sign;
};

EdgeSigns edge_signs(const Grid& grid, const std::vector<Mat2>& raw) {
  EdgeSigns out;
  for (int axis = 0; axis < 3; ++axis) {
    out.sign[axis].resize(grid.size());
    bool ill = false;
    double worst = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Mat2& a = raw[i];
      const Mat2& b = raw[grid.step(i, axis)];
      const double overlap = 0.5 * (a.adjoint() * b).trace().real();
      if (std::abs(overlap) < kContinuityMargin) {
        ill = true;
        worst = std::min(worst, std::abs(overlap));
      }
      out.sign[axis][i] = static_cast<signed char>(relative_sign(a, b));
    }
    if (ill) {
      throw LiftIllConditioned("adjacent SU(2) values along " + std::string(kCycleNames[axis]) +
                               " are nearly orthogonal (overlap " + std::to_string(worst) +
                               "); increase the grid resolution");
    }
  }
  return out;
}

SU2Field lift_impl(const SO3Field& o, std::size_t root, const Tolerances& tol) {
  const Grid& grid = o.grid;
  std::vector<Mat2> raw(grid.size());
  std::vector<char> bad(grid.size(), 0);
  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      raw[i] = su2_from_so3(o.values[i], tol.orth);
    } catch (const LiftIllConditioned&) {
      bad[i] = 1;
    }
  });
  if (std::find(bad.begin(), bad.end(), 1) != bad.end()) {
    throw LiftIllConditioned("SO(3) field is not special orthogonal at some grid point");
  }

  const auto edges = edge_signs(grid, raw);

  // Local (contractible) loops must close; failure means under-resolution.
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::size_t ia = grid.step(i, a);
        const std::size_t ib = grid.step(i, b);
        const int product = edges.sign[a][i] * edges.sign[b][ia] * edges.sign[a][ib] * edges.sign[b][i];
        if (product != 1) {
          throw LiftIllConditioned("sign is not coherent around a grid plaquette; increase the grid resolution");
        }
      }
    }
  }

  // Non-contractible loops through the origin.
  std::vector<std::string> failing;
  for (int axis = 0; axis < 3; ++axis) {
    int product = 1;
    std::size_t i = grid.index(0, 0, 0);
    for (int s = 0; s < grid.n(); ++s) {
      product *= edges.sign[axis][i];
      i = grid.step(i, axis);
    }
    if (product != 1) failing.emplace_back(kCycleNames[axis]);
  }
  if (!failing.empty()) {
    std::string list;
    for (const auto& c : failing) list += (list.empty() ? "" : ", ") + c;
    throw SpinStructureMismatch("SU(2) lift changes sign around the " + list + " cycle", failing);
  }

  // Breadth-first sign propagation.
  std::vector<signed char> sign(grid.size(), 0);
  std::deque<std::size_t> queue{root};
  sign[root] = 1;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (int axis = 0; axis < 3; ++axis) {
      const std::size_t fwd = grid.step(cur, axis, 1);
      if (sign[fwd] == 0) {
        sign[fwd] = static_cast<signed char>(sign[cur] * edges.sign[axis][cur]);
        queue.push_back(fwd);
      }
      const std::size_t back = grid.step(cur, axis, -1);
      if (sign[back] == 0) {
        sign[back] = static_cast<signed char>(sign[cur] * edges.sign[axis][back]);
        queue.push_back(back);
      }
    }
  }

  SU2Field out{grid, std::vector<Mat2>(grid.size()), true};
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = static_cast<double>(sign[i]) * raw[i];

  for (int axis = 0; axis < 3; ++axis) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (relative_sign(out.values[i], out.values[grid.step(i, axis)]) != 1) {
        throw LiftIllConditioned("sign propagation left a discontinuous edge");
      }
    }
  }
  return out;
}

}  // namespace

SU2Field so3_to_su2_lift_from(const SO3Field& o, std::size_t root, const Tolerances& tol) {
  return lift_impl(o, root, tol);
}

SU2Field so3_to_su2_lift(const SO3Field& o, const Tolerances& tol) {
  auto out = lift_impl(o, 0, tol);
  if (out.values[0].trace().real() < 0.0) {
    for (auto& r : out.values) r = -r;
  }
  const double residual = lift_residual(out, o);
  if (residual > tol.lift) {
    throw LiftIllConditioned("lift residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return out;
}

double lift_residual(const SU2Field& r, const SO3Field& o) {
  double m = 0.0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    m = std::max(m, (so3_from_su2(r.values[i]) - o.values[i]).cwiseAbs().maxCoeff());
  }
  return m;
}

// ---------------------------------------------------------------- spinors

SpinorField spinor_from_su2(const SU2Field& r, const RealGrid& weight) {
  SpinorField xi{r.grid, std::vector<Spinor>(r.values.size()), weight};
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    xi.values[i] << weight[i] * r.values[i](1, 1), -weight[i] * r.values[i](1, 0);
  }
  return xi;
}

Mat2 su2_from_spinor(const Spinor& xi) {
  const double n = xi.norm();
  Mat2 r;
  r << std::conj(xi(0)), std::conj(xi(1)), -xi(1), xi(0);
  return r / n;
}

SU2Field su2_from_spinor(const SpinorField& xi, double min_norm) {
  SU2Field out{xi.grid, std::vector<Mat2>(xi.values.size()), true};
  for (std::size_t i = 0; i < xi.values.size(); ++i) {
    if (xi.values[i].norm() < min_norm) throw VanishingSpinor("spinor norm below threshold");
    out.values[i] = su2_from_spinor(xi.values[i]);
  }
  return out;
}

bool same_spin_structure(const PrincipalSymbol& a, const PrincipalSymbol& b, const Grid& grid,
                         const Tolerances& tol) {
  const auto metric = metric_from_symbol(a, grid);
  const auto o = relate_frames(frame_from_symbol(a), frame_from_symbol(b), metric, tol);
  try {
    so3_to_su2_lift(o, tol);
  } catch (const SpinStructureMismatch&) {
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- gauge transformations

ConformalResult conformal_transform(const PrincipalSymbol& sym, const TrigPoly& weight, const TrigPoly& phi,
                                    const Grid& expansion_grid) {
  const auto phi_values = phi.real_on_grid(expansion_grid);
  RealGrid factor(phi_values.size());
  for (std::size_t i = 0; i < factor.size(); ++i) factor[i] = std::exp(-phi_values[i]);

  std::array<MatrixField, 3> scaled;
  for (int a = 0; a < 3; ++a) {
    auto values = sym[a].on_grid(expansion_grid);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] *= factor[i];
    scaled[a] = MatrixField::from_grid(expansion_grid, values);
  }
  auto w = weight.real_on_grid(expansion_grid);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] *= factor[i];
  return {PrincipalSymbol::projected(scaled),
          TrigPoly::from_grid(expansion_grid, std::span<const double>(w)).real_part()};
}

PrincipalSymbol su2_reference_transform(const PrincipalSymbol& reference, const MatrixField& q) {
  return reference.conjugated(q);
}

SpinorField su2_spinor_transform(const SpinorField& xi, const MatrixField& q) {
  const auto qv = q.on_grid(xi.grid);
  SpinorField out = xi;
  for (std::size_t i = 0; i < xi.values.size(); ++i) out.values[i] = qv[i] * xi.values[i];
  return out;
}

Spinor charge_conjugate(const Spinor& xi) {
  Spinor out;
  out << -std::conj(xi(1)), std::conj(xi(0));
  return out;
}

SpinorField charge_conjugate(const SpinorField& xi) {
  SpinorField out = xi;
  for (auto& v : out.values) v = charge_conjugate(v);
  return out;
}

SpinorField rigid_rotation(const SpinorField& xi, const Mat2& q) {
  SpinorField out = xi;
  for (auto& v : out.values) v = q(1, 1) * v - q(1, 0) * charge_conjugate(v);
  return out;
}

double spinor_distance_up_to_sign(const SpinorField& a, const SpinorField& b) {
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    plus = std::max(plus, (a.values[i] - b.values[i]).cwiseAbs().maxCoeff());
    minus = std::max(minus, (a.values[i] + b.values[i]).cwiseAbs().maxCoeff());
  }
  return std::min(plus, minus);
}

}  // namespace spinspec
