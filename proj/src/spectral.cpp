#include "spinspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "spinspec/errors.hpp"
#include "spinspec/parallel.hpp"

namespace spinspec {

// ---------------------------------------------------------------- truncation

bool Truncation::contains(const Freq& m) const {
  return std::abs(m[0]) <= M && std::abs(m[1]) <= M && std::abs(m[2]) <= M;
}

std::size_t Truncation::mode_index(const Freq& m) const {
  const std::size_t s = side();
  return (static_cast<std::size_t>(m[0] + M) * s + (m[1] + M)) * s + (m[2] + M);
}

Freq Truncation::mode(std::size_t idx) const {
  const int s = side();
  const int m3 = static_cast<int>(idx % s);
  const int m2 = static_cast<int>((idx / s) % s);
  const int m1 = static_cast<int>(idx / (static_cast<std::size_t>(s) * s));
  return {m1 - M, m2 - M, m3 - M};
}

namespace {

const cd kI(0.0, 1.0);

/// Coefficient matrices of the operator at one frequency.
struct Coupling {
  std::array<Mat2, 3> P{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
  Mat2 Q = Mat2::Zero();
};

Mat2 coefficient(const MatrixField& f, const Freq& k) {
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = f(r, c).coefficient(k);
  }
  return m;
}

void collect_support(const MatrixField& f, std::set<Freq>& out) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (const auto& [k, v] : f(r, c).coefficients()) out.insert(k);
    }
  }
}

std::map<Freq, Coupling> couplings(const Operator1st& op, const Truncation& t) {
  std::set<Freq> support;
  for (const auto& p : op.P) collect_support(p, support);
  collect_support(op.Q0, support);
  std::map<Freq, Coupling> out;
  for (const auto& k : support) {
    if (std::abs(k[0]) > 2 * t.M || std::abs(k[1]) > 2 * t.M || std::abs(k[2]) > 2 * t.M) {
      throw TruncationTooSmall("coefficient frequency (" + std::to_string(k[0]) + ", " + std::to_string(k[1]) + ", " +
                               std::to_string(k[2]) + ") exceeds twice the cutoff M = " + std::to_string(t.M));
    }
    Coupling c;
    for (int a = 0; a < 3; ++a) c.P[a] = coefficient(op.P[a], k);
    c.Q = coefficient(op.Q0, k);
    out.emplace(k, c);
  }
  return out;
}

Mat2 entry(const Coupling& c, const Freq& m) {
  Mat2 e = c.Q;
  for (int a = 0; a < 3; ++a) e += kI * static_cast<double>(m[a]) * c.P[a];
  return e;
}

/// Connected components of the mode graph; each block lists mode indices in
/// increasing order.
std::vector<std::vector<std::size_t>> mode_blocks(const Truncation& t, const std::vector<Freq>& support) {
  const std::size_t n = t.modes();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Freq m = t.mode(i);
    for (const auto& k : support) {
      const Freq mk = m + k;
      if (!t.contains(mk)) continue;
      const std::size_t a = find(i);
      const std::size_t b = find(t.mode_index(mk));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

Eigen::MatrixXcd block_matrix(const std::map<Freq, Coupling>& cpl, const Truncation& t,
                              const std::vector<std::size_t>& modes) {
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < modes.size(); ++i) local[modes[i]] = i;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * modes.size(), 2 * modes.size());
  for (std::size_t col = 0; col < modes.size(); ++col) {
    const Freq m = t.mode(modes[col]);
    for (const auto& [k, c] : cpl) {
      const Freq mp = m + k;
      if (!t.contains(mp)) continue;
      const std::size_t row = local.at(t.mode_index(mp));
      a.block<2, 2>(2 * row, 2 * col) += entry(c, m);
    }
  }
  return a;
}

Eigen::MatrixXcd block_weight(const TrigPoly& w, const Truncation& t, const std::vector<std::size_t>& modes) {
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < modes.size(); ++i) local[modes[i]] = i;
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2 * modes.size(), 2 * modes.size());
  for (std::size_t col = 0; col < modes.size(); ++col) {
    const Freq m = t.mode(modes[col]);
    for (const auto& [k, v] : w.coefficients()) {
      const Freq mp = m + k;
      if (!t.contains(mp)) continue;
      const std::size_t row = local.at(t.mode_index(mp));
      b(2 * row, 2 * col) += v;
      b(2 * row + 1, 2 * col + 1) += v;
    }
  }
  return b;
}

std::vector<Freq> support_vector(const std::map<Freq, Coupling>& cpl, const TrigPoly* weight) {
  std::set<Freq> s;
  for (const auto& [k, c] : cpl) s.insert(k);
  if (weight) {
    for (const auto& [k, v] : weight->coefficients()) s.insert(k);
  }
  return {s.begin(), s.end()};
}

}  // namespace

Eigen::MatrixXcd assemble(const Operator1st& op, const Truncation& t) {
  const auto cpl = couplings(op, t);
  std::vector<std::size_t> all(t.modes());
  std::iota(all.begin(), all.end(), 0);
  return block_matrix(cpl, t, all);
}

Eigen::MatrixXcd assemble_weight(const TrigPoly& w, const Truncation& t) {
  std::vector<std::size_t> all(t.modes());
  std::iota(all.begin(), all.end(), 0);
  return block_weight(w, t, all);
}

// ---------------------------------------------------------------- eigensolvers

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& input) {
  const lapack_int n = static_cast<lapack_int>(input.rows());
  if (n == 0) return {};
  const Eigen::MatrixXcd a = 0.5 * (input + input.adjoint());
  Eigen::MatrixXcd v = a;
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, v.data(), n, w.data());
  if (info != 0) throw ConvergenceFailure("zheevd failed with info = " + std::to_string(info));

  // ‖A‖₂ of a Hermitian matrix is its spectral radius.
  const double scale = std::max({std::abs(w.front()), std::abs(w.back()), 1e-300});
  const lapack_int samples = std::min<lapack_int>(n, 20);
  for (lapack_int s = 0; s < samples; ++s) {
    const lapack_int j = samples == 1 ? 0 : s * (n - 1) / (samples - 1);
    const double residual = (a * v.col(j) - w[j] * v.col(j)).norm();
    if (residual > 1e-9 * scale) {
      throw ConvergenceFailure("eigenpair residual " + std::to_string(residual) + " too large");
    }
  }
  return w;
}

std::vector<double> generalized_eigenvalues(const Eigen::MatrixXcd& input_a, const Eigen::MatrixXcd& input_b) {
  const lapack_int n = static_cast<lapack_int>(input_a.rows());
  if (n == 0) return {};
  Eigen::MatrixXcd a = 0.5 * (input_a + input_a.adjoint());
  Eigen::MatrixXcd b = 0.5 * (input_b + input_b.adjoint());
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_zhegv(LAPACK_COL_MAJOR, 1, 'N', 'U', n, a.data(), n, b.data(), n, w.data());
  if (info > n) throw NonpositiveWeight("weight mass matrix is not positive definite");
  if (info != 0) throw ConvergenceFailure("zhegv failed with info = " + std::to_string(info));
  return w;
}

// ---------------------------------------------------------------- spectra

std::vector<double> DiscreteSpectrum::trusted_eigenvalues() const {
  std::vector<double> out;
  for (double l : eigenvalues) {
    if (trusted(l)) out.push_back(l);
  }
  return out;
}

double principal_gamma_min(const Operator1st& op, int grid_size) {
  const Grid grid(std::max(grid_size, 2 * op.degree() + 1));
  const auto comps = op.principal_components();
  std::array<std::vector<Mat2>, 3> l;
  for (int a = 0; a < 3; ++a) l[a] = comps[a].on_grid(grid);
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Mat3 g;
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        g(a, b) = 0.5 * (l[a][i] * l[b][i]).trace().real();
        g(b, a) = g(a, b);
      }
    }
    Eigen::SelfAdjointEigenSolver<Mat3> es(g, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
  }
  return std::sqrt(std::max(lo, 0.0));
}

namespace {

DiscreteSpectrum solve_blocks(const Operator1st& op, const TrigPoly* weight, const Truncation& t, double rho) {
  const auto cpl = couplings(op, t);
  const auto blocks = mode_blocks(t, support_vector(cpl, weight));
  std::vector<std::vector<double>> parts(blocks.size());
  std::vector<std::string> errors(blocks.size());
  // Blocks are independent; each worker writes only its own slot.
  const unsigned workers = std::min<std::size_t>(thread_count(), blocks.size());
  std::vector<std::thread> pool;
  auto run = [&](unsigned w) {
    for (std::size_t b = w; b < blocks.size(); b += workers) {
      try {
        const auto a = block_matrix(cpl, t, blocks[b]);
        parts[b] = weight ? generalized_eigenvalues(a, block_weight(*weight, t, blocks[b])) : hermitian_eigenvalues(a);
      } catch (const SpinspecError& e) {
        errors[b] = e.what();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw ConvergenceFailure(e);
  }

  DiscreteSpectrum s;
  for (const auto& p : parts) s.eigenvalues.insert(s.eigenvalues.end(), p.begin(), p.end());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  s.M = t.M;
  s.dimension = t.dimension();
  s.blocks = blocks.size();
  if (weight) {
    // The metric of the weighted problem is that of w^{−1} L_prin.
    double wmax = 0.0;
    const Grid grid(std::max(32, 2 * weight->degree() + 1));
    for (double v : weight->real_on_grid(grid)) wmax = std::max(wmax, v);
    s.gamma_min = principal_gamma_min(op) / wmax;
  } else {
    s.gamma_min = principal_gamma_min(op);
  }
  s.trust_radius = rho * t.M * s.gamma_min;
  return s;
}

}  // namespace

DiscreteSpectrum galerkin_spectrum(const Operator1st& op, const Truncation& t, double rho) {
  return solve_blocks(op, nullptr, t, rho);
}

DiscreteSpectrum weighted_galerkin_spectrum(const Operator1st& op, const TrigPoly& weight, const Truncation& t,
                                            double rho) {
  return solve_blocks(op, &weight, t, rho);
}

ReducedOperator weighted_reduce(const Operator1st& op, const TrigPoly& w, int degree_cap, int grid_size) {
  if (!w.is_real()) throw NonpositiveWeight("weight is not real-valued");
  const Grid grid(std::max(grid_size, 4 * std::max(w.degree(), degree_cap) + 2));
  const auto values = w.real_on_grid(grid);
  RealGrid f(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw NonpositiveWeight("weight is not positive on the grid");
    f[i] = 1.0 / std::sqrt(values[i]);
  }
  const TrigPoly full = TrigPoly::from_grid(grid, std::span<const double>(f)).real_part();
  const TrigPoly kept = full.truncated(degree_cap);

  ReducedOperator out;
  out.degree_cap = degree_cap;
  out.truncation_error = (full - kept).l1_norm();
  const TrigPoly f2 = kept * kept;
  out.op.Q0 = f2 * op.Q0;
  for (int a = 0; a < 3; ++a) {
    out.op.P[a] = f2 * op.P[a];
    out.op.Q0 += (kept * kept.derivative(a)) * op.P[a];
  }
  return out;
}

// ---------------------------------------------------------------- counting

std::vector<double> midpoint_samples(double lambda_max, double step) {
  std::vector<double> out;
  for (long j = 0;; ++j) {
    const double l = (static_cast<double>(j) + 0.5) * step;
    if (l > lambda_max) break;
    out.push_back(l);
  }
  return out;
}

CountingTable counting_function(const DiscreteSpectrum& spec, const std::vector<double>& lambdas) {
  CountingTable t{{}, "galerkin"};
  const auto first_positive = std::upper_bound(spec.eigenvalues.begin(), spec.eigenvalues.end(), 0.0);
  for (double l : lambdas) {
    const auto end = std::lower_bound(first_positive, spec.eigenvalues.end(), l);
    const auto n = static_cast<std::int64_t>(std::max<std::ptrdiff_t>(0, end - first_positive));
    t.rows.push_back({l, n, spec.trusted(l)});
  }
  return t;
}

namespace {

/// Largest integer n with n < r² (−1 if none).
std::int64_t below_square(double r) {
  const double r2 = r * r;
  auto n = static_cast<std::int64_t>(std::floor(r2));
  if (static_cast<double>(n) >= r2) --n;
  return n;
}

}  // namespace

std::int64_t lattice_count(double r) {
  if (r <= 0.0) return 0;
  const std::int64_t lim = below_square(r);  // ‖m‖² ≤ lim
  if (lim < 0) return 0;
  const auto R = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(lim)))) + 1;
  std::int64_t count = 0;
  for (std::int64_t m1 = -R; m1 <= R; ++m1) {
    for (std::int64_t m2 = -R; m2 <= R; ++m2) {
      const std::int64_t rem = lim - m1 * m1 - m2 * m2;
      if (rem < 0) continue;
      auto t = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rem)));
      while (t * t > rem) --t;
      while ((t + 1) * (t + 1) <= rem) ++t;
      count += 2 * t + 1;
    }
  }
  return count;
}

LatticeShells::LatticeShells(std::int64_t n_max) : cumulative_(static_cast<std::size_t>(n_max) + 1, 0) {
  auto R = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n_max)));
  while (R * R > n_max) --R;
  while ((R + 1) * (R + 1) <= n_max) ++R;
  for (std::int64_t m1 = -R; m1 <= R; ++m1) {
    for (std::int64_t m2 = -R; m2 <= R; ++m2) {
      const std::int64_t s = m1 * m1 + m2 * m2;
      if (s > n_max) continue;
      ++cumulative_[s];
      for (std::int64_t m3 = 1; s + m3 * m3 <= n_max; ++m3) cumulative_[s + m3 * m3] += 2;
    }
  }
  std::partial_sum(cumulative_.begin(), cumulative_.end(), cumulative_.begin());
}

std::int64_t LatticeShells::count_below(double r) const {
  if (r <= 0.0) return 0;
  const std::int64_t n = below_square(r);
  if (n < 0) return 0;
  if (n >= static_cast<std::int64_t>(cumulative_.size())) {
    throw ValidationError("lattice shell table too small for radius " + std::to_string(r));
  }
  return cumulative_[n];
}

std::vector<double> exact_example_spectrum(double bound) {
  std::vector<double> out;
  if (bound >= 1.0) out.insert(out.end(), 2, 1.0);
  const auto R = static_cast<int>(std::floor(bound + 1.0));
  for (int a = -R; a <= R; ++a) {
    for (int b = -R; b <= R; ++b) {
      for (int c = -R; c <= R; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const double n = std::sqrt(static_cast<double>(a * a + b * b + c * c));
        if (std::abs(1.0 + n) <= bound) out.push_back(1.0 + n);
        if (std::abs(1.0 - n) <= bound) out.push_back(1.0 - n);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CountingTable exact_example_counting(const std::vector<double>& lambdas) {
  CountingTable t{{}, "exact_example"};
  double lmax = 0.0;
  for (double l : lambdas) lmax = std::max(lmax, l);
  const LatticeShells shells(below_square(std::max(lmax - 1.0, 0.0)) + 1);
  // Positive eigenvalues below λ: 1 (twice) and 1 + ‖m‖ for m ≠ 0.
  for (double l : lambdas) {
    const std::int64_t n = l > 1.0 ? 1 + shells.count_below(l - 1.0) : 0;
    t.rows.push_back({l, n, true});
  }
  return t;
}

AsymptoticReport asymptotic_compare(const CountingTable& table, double a, double b, double window_lo,
                                    double window_hi, double fit_lo, double fit_hi) {
  AsymptoticReport r;
  r.window_lo = window_lo;
  r.window_hi = window_hi;
  r.fit_lo = fit_lo;
  r.fit_hi = fit_hi;
  double sum = 0.0;
  std::size_t count = 0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t nfit = 0;
  for (const auto& row : table.rows) {
    const double l = row.lambda;
    const double res = static_cast<double>(row.count) - a * l * l * l - b * l * l;
    r.residual.push_back(res);
    r.scaled.push_back(res / (l * l));
    if (l >= window_lo && l <= window_hi) {
      sum += res / (l * l);
      ++count;
    }
    if (l >= fit_lo && l <= fit_hi && res != 0.0) {
      const double x = std::log(l);
      const double y = std::log(std::abs(res));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++nfit;
    }
  }
  r.window_mean = count ? sum / static_cast<double>(count) : std::nan("");
  if (nfit >= 2) {
    const double n = static_cast<double>(nfit);
    r.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  } else {
    r.exponent = std::nan("");
  }
  return r;
}

// ---------------------------------------------------------------- multisets

std::vector<Cluster> clusters(std::vector<double> values, double gap) {
  std::sort(values.begin(), values.end());
  std::vector<Cluster> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > gap) {
      if (i > start) {
        double s = 0.0;
        for (std::size_t j = start; j < i; ++j) s += values[j];
        out.push_back({s / static_cast<double>(i - start), i - start});
      }
      start = i;
    }
  }
  return out;
}

MultisetMatch match_multisets(std::vector<double> expected, std::vector<double> computed, double tol) {
  std::sort(expected.begin(), expected.end());
  std::sort(computed.begin(), computed.end());
  MultisetMatch m;
  std::size_t i = 0, j = 0;
  while (i < expected.size() && j < computed.size()) {
    const double d = computed[j] - expected[i];
    if (std::abs(d) <= tol) {
      ++m.matched;
      m.max_deviation = std::max(m.max_deviation, std::abs(d));
      ++i;
      ++j;
    } else if (d < 0.0) {
      m.extra.push_back(computed[j++]);
    } else {
      m.missing.push_back(expected[i++]);
    }
  }
  for (; i < expected.size(); ++i) m.missing.push_back(expected[i]);
  for (; j < computed.size(); ++j) m.extra.push_back(computed[j]);
  return m;
}

}  // namespace spinspec
