#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "spinspec/catalog.hpp"
#include "spinspec/dirac.hpp"
#include "spinspec/pipeline.hpp"

using namespace spinspec;

namespace {

constexpr double kPi = std::numbers::pi;

// g_{αβ}(x) from the exact contravariant coefficients.
Mat3 lower_at(const SymTensor& g, const Point& x) {
  Mat3 m;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) m(a, b) = g[a][b](x).real();
  }
  return m.inverse();
}

// ∂_α g_{βγ} by a fourth-order central difference.
Mat3 lower_derivative(const SymTensor& g, Point x, int alpha) {
  const double h = 1e-3;
  auto at = [&](double s) {
    Point y = x;
    y[alpha] += s;
    return lower_at(g, y);
  };
  return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
}

SpinorField plane_spinor(const Grid& grid) {
  SpinorField xi{grid, {}, RealGrid(grid.size(), 1.0)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    xi.values.emplace_back(std::exp(cd(0.0, -grid.point(i)[2])), 0.0);
  }
  return xi;
}

}  // namespace

TEST_CASE("Weyl operator on the double-turn spinor") {
  const Grid grid(16);
  const PrincipalSymbol ref = standard_pauli_symbol(1);
  const Metric metric = metric_from_symbol(catalog::double_turn(), grid);
  const PauliField pauli = pauli_field(ref, metric);
  CHECK(pauli_relation_residual(pauli, metric) < 1e-14);
  const SpinorField xi = plane_spinor(grid);
  const std::vector<Spinor> w = weyl_apply(pauli, metric, xi);
  double dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) dev = std::max(dev, (w[i] + xi.values[i]).cwiseAbs().maxCoeff());
  CHECK(dev < 1e-12);
  CHECK(dirac_action(pauli, metric, xi) == doctest::Approx(-std::pow(2.0 * kPi, 3)).epsilon(1e-13));
  CHECK(coeff_a(xi, metric) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
}

TEST_CASE("axial torsion of the double-turn frame is -4/3") {
  const Grid grid(16);
  const PrincipalSymbol sym = catalog::double_turn();
  const Metric metric = metric_from_symbol(sym, grid);
  const RealGrid t = axial_torsion(frame_from_symbol(sym), metric);
  for (double v : t) CHECK(std::abs(v + 4.0 / 3.0) < 1e-12);
  CHECK(coeff_b_torsion(RealGrid(grid.size(), 1.0), frame_from_symbol(sym), metric, 1) ==
        doctest::Approx(-4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("Christoffel symbols against a finite-difference oracle") {
  std::mt19937_64 rng(31);
  const auto rc = catalog::random_case(rng);
  const Grid grid(32);
  const Metric metric = metric_from_symbol(rc.symbol, grid);
  const ChristoffelField chris = christoffel(metric);
  CHECK(christoffel_symmetry_residual(chris) < 1e-12);
  CHECK(christoffel_compatibility_residual(chris, metric) < 1e-8);

  const SymTensor g = contravariant_metric(rc.symbol);
  for (int t = 0; t < 8; ++t) {
    const std::size_t i = static_cast<std::size_t>(rng() % grid.size());
    const Point x = grid.point(i);
    const Mat3 lower = lower_at(g, x);
    const Mat3 upper = lower.inverse();
    std::array<Mat3, 3> d;
    for (int a = 0; a < 3; ++a) d[a] = lower_derivative(g, x, a);
    double dev = 0.0;
    for (int b = 0; b < 3; ++b) {
      for (int a = 0; a < 3; ++a) {
        for (int c = 0; c < 3; ++c) {
          double expected = 0.0;
          for (int e = 0; e < 3; ++e) expected += 0.5 * upper(b, e) * (d[a](e, c) + d[c](e, a) - d[e](a, c));
          dev = std::max(dev, std::abs(chris.gamma[i][b](a, c) - expected));
        }
      }
    }
    CHECK(dev < 1e-8);
  }
}

TEST_CASE("Christoffel symbols vanish for a constant metric") {
  const Grid grid(8);
  const ChristoffelField chris = christoffel(metric_from_symbol(standard_pauli_symbol(1), grid));
  double m = 0.0;
  for (const auto& g : chris.gamma) {
    for (const Mat3& x : g) m = std::max(m, x.cwiseAbs().maxCoeff());
  }
  CHECK(m == 0.0);
}

TEST_CASE("torsion-spinor identity and both routes on random symbols") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 3; ++t) {
    const auto rc = catalog::random_case(rng);
    const Analysis an = analyze(rc.symbol, rc.reference, rc.weight, 32);
    CHECK(an.torsion_identity_max < 1e-6);
    CHECK(std::abs(an.b_action - an.b_torsion) < 1e-7);
    CHECK(an.pauli_residual < 1e-10);
    CHECK(an.christoffel_compatibility < 1e-8);
  }
}

TEST_CASE("charge -1 data: inverted chart gives the same b on both routes") {
  const Analysis an = analyze(catalog::mirrored_problem());
  CHECK(an.charge == -1);
  REQUIRE(an.b_action_inverted.has_value());
  CHECK(std::abs(*an.b_action_inverted - an.b_action) < 1e-9);
  CHECK(std::abs(an.b_torsion - an.b_action) < 1e-9);
}

TEST_CASE("inversion of grid samples") {
  const Grid grid(6);
  const TrigPoly f = TrigPoly::sine({1, 2, -1}, 1.0) + TrigPoly::cosine({0, 1, 0}, 0.5);
  const RealGrid inv = inverted(grid, f.real_on_grid(grid));
  const RealGrid expected = f.reflected().real_on_grid(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(inv[i] - expected[i]) < 1e-14);
}
