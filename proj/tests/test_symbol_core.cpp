#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "spinspec/catalog.hpp"
#include "spinspec/errors.hpp"
#include "spinspec/operator.hpp"
#include "spinspec/symbol.hpp"

using namespace spinspec;

namespace {

constexpr double kPi = std::numbers::pi;

Point random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  return {u(rng), u(rng), u(rng)};
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("trig polynomials: evaluation, products and grid round trip") {
  const TrigPoly f = TrigPoly::exponential({1, 0, -2}, cd(0.5, 0.25)) + TrigPoly::cosine({0, 1, 1}, 2.0);
  const TrigPoly g = TrigPoly::sine({2, 0, 0}, 1.5) + TrigPoly(0.3);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const Point x = random_point(rng);
    const cd direct = cd(0.5, 0.25) * std::exp(cd(0.0, x[0] - 2.0 * x[2])) + 2.0 * std::cos(x[1] + x[2]);
    CHECK(std::abs(f(x) - direct) < 1e-13);
    CHECK(std::abs((f * g)(x) - f(x) * g(x)) < 1e-13);
    // ∂/∂x³ of the exponential part and of the cosine part
    const cd d3 = cd(0.0, -2.0) * cd(0.5, 0.25) * std::exp(cd(0.0, x[0] - 2.0 * x[2])) - 2.0 * std::sin(x[1] + x[2]);
    CHECK(std::abs(f.derivative(2)(x) - d3) < 1e-13);
  }
  const Grid grid(16);
  const TrigPoly back = TrigPoly::from_grid(grid, f.on_grid(grid));
  CHECK(max_coefficient_difference(back, f) < 1e-14);
  CHECK(f.conj().conj().coefficients().size() == f.coefficients().size());
  CHECK(g.is_real());
  CHECK_FALSE(f.is_real());
  CHECK(f.degree() == 2);
}

TEST_CASE("spectral derivative agrees with exact coefficient derivative") {
  const Grid grid(24);
  const TrigPoly f = TrigPoly::cosine({2, -1, 3}, 0.7) + TrigPoly::sine({0, 4, 1}, -1.1);
  const RealGrid values = f.real_on_grid(grid);
  for (int axis = 0; axis < 3; ++axis) {
    const RealGrid spectral = fourier::derivative(grid, values, axis);
    const RealGrid exact = f.derivative(axis).real_on_grid(grid);
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) dev = std::max(dev, std::abs(spectral[i] - exact[i]));
    CHECK(dev < 1e-12);
  }
}

TEST_CASE("periodic trapezoid rule is exact for trig polynomials") {
  const Grid grid(12);
  const TrigPoly f = TrigPoly(2.0) + TrigPoly::cosine({1, 2, 0}, 3.0);
  CHECK(integrate(grid, f.real_on_grid(grid)) == doctest::Approx(2.0 * std::pow(2.0 * kPi, 3)).epsilon(1e-14));
}

TEST_CASE("double-turn symbol: Euclidean metric, charge +1, frame round trip") {
  const PrincipalSymbol sym = catalog::double_turn();
  const Grid grid(32);
  const Metric metric = metric_from_symbol(sym, grid);
  double dev = 0.0;
  for (const Mat3& g : metric.contravariant_grid()) dev = std::max(dev, (g - Mat3::Identity()).cwiseAbs().maxCoeff());
  CHECK(dev <= 1e-12);
  CHECK(metric.inverse_residual() <= 1e-12);
  CHECK(topological_charge(sym, grid) == 1);
  CHECK(topological_charge(catalog::double_turn_mirrored(), grid) == -1);

  const Frame frame = frame_from_symbol(sym);
  CHECK(orthonormality_residual(metric, frame) <= 1e-12);
  const PrincipalSymbol again = symbol_from_frame(frame);
  for (int a = 0; a < 3; ++a) CHECK(max_coefficient_difference(again[a], sym[a]) < 1e-15);
}

TEST_CASE("both charge formulas agree pointwise on a random family") {
  std::mt19937_64 rng(11);
  const Grid grid(16);
  for (int t = 0; t < 3; ++t) {
    const auto rc = catalog::random_case(rng);
    const ChargeSamples s = charge_samples(rc.symbol, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(s.analytic[i] - 1.0) < 1e-9);
      CHECK(s.frame[i] == 1.0);
    }
  }
}

TEST_CASE("metric: polarization identity and determinant oracle") {
  std::mt19937_64 rng(3);
  const auto rc = catalog::random_case(rng);
  const Grid grid(16);
  const Metric metric = metric_from_symbol(rc.symbol, grid);
  std::vector<Vec3> momenta;
  for (int t = 0; t < 6; ++t) momenta.push_back(Vec3::Random());
  CHECK(polarization_residual(rc.symbol, metric, momenta) < 1e-12);
  CHECK(metric.inverse_residual() < 1e-12);
  CHECK(orthonormality_residual(metric, frame_from_symbol(rc.symbol)) < 1e-12);

  // Independent oracle: −det L_prin(x, p) is the quadratic form g^{αβ}p_α p_β.
  for (int t = 0; t < 10; ++t) {
    const std::size_t i = static_cast<std::size_t>(rng() % grid.size());
    const Point x = grid.point(i);
    Mat3 g;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const Vec3 ea = Vec3::Unit(a), eb = Vec3::Unit(b);
        const double qa = -rc.symbol.at(x, ea).determinant().real();
        const double qb = -rc.symbol.at(x, eb).determinant().real();
        const double qab = -rc.symbol.at(x, ea + eb).determinant().real();
        g(a, b) = 0.5 * (qab - qa - qb);
      }
    }
    CHECK((g - metric.contravariant_grid()[i]).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(metric.density()[i] - 1.0 / std::sqrt(g.determinant())) < 1e-12);
  }
}

TEST_CASE("ellipticity check") {
  CHECK(ellipticity_check(catalog::double_turn(), 32));
  const MatrixField s1{Mat2(pauli_matrices()[0])};
  const PrincipalSymbol degenerate({s1, s1, MatrixField{Mat2(pauli_matrices()[2])}});
  CHECK_FALSE(ellipticity_check(degenerate, 8));
  CHECK_THROWS_AS(ellipticity_check(catalog::double_turn(), 4), ValidationError);
}

TEST_CASE("symbol construction rejects non-Hermitian or traced components") {
  const MatrixField s3{Mat2(pauli_matrices()[2])};
  const MatrixField id = MatrixField::identity();
  CHECK_THROWS_AS(PrincipalSymbol(std::array<MatrixField, 3>{id, s3, s3}), ValidationError);
  Mat2 skew;
  skew << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(PrincipalSymbol(std::array<MatrixField, 3>{MatrixField(skew), s3, s3}), ValidationError);
}

TEST_CASE("inverted symbol flips the charge and keeps the metric up to reflection") {
  const PrincipalSymbol sym = catalog::double_turn_mirrored();
  const PrincipalSymbol inv = sym.inverted();
  const Grid grid(16);
  CHECK(topological_charge(inv, grid) == 1);
  const SymTensor g = contravariant_metric(sym);
  const SymTensor gi = contravariant_metric(inv);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) CHECK(max_coefficient_difference(gi[a][b], g[a][b].reflected()) < 1e-15);
  }
}

TEST_CASE("operators built from a symbol have zero subprincipal symbol") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 3; ++t) {
    const auto rc = catalog::random_case(rng);
    const Operator1st op = operator_from_symbol(rc.symbol);
    CHECK(subprincipal(op).max_coefficient() <= 1e-12);
    CHECK(self_adjointness_defect(op, Grid(12)) <= 1e-12);
  }
}

TEST_CASE("conjugation subprincipal: closed form versus direct conjugation") {
  const PrincipalSymbol ref = standard_pauli_symbol(1);
  const MatrixField r = catalog::double_turn_gauge();
  const Operator1st conj = conjugate_operator(operator_from_symbol(ref), r);
  const MatrixField direct = subprincipal(conj);
  CHECK(max_coefficient_difference(direct, MatrixField(Mat2(-Mat2::Identity()))) < 1e-12);
  CHECK(max_coefficient_difference(direct, conjugation_subprincipal(ref, r)) < 1e-12);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 3; ++t) {
    const MatrixField q = catalog::random_su2_field(rng);
    const MatrixField sub = subprincipal(conjugate_operator(operator_from_symbol(ref), q));
    CHECK(max_coefficient_difference(sub, conjugation_subprincipal(ref, q)) < 1e-12);
    // The subprincipal symbol is Hermitian.
    CHECK(sub.is_hermitian(1e-12));
  }
}

TEST_CASE("random family symbols are Hermitian trace-free of degree at most two") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    const auto rc = catalog::random_case(rng);
    CHECK(rc.symbol.degree() <= 2);
    CHECK(rc.reference.degree() <= 2);
    for (int a = 0; a < 3; ++a) {
      CHECK(rc.symbol[a].is_hermitian());
      CHECK(rc.symbol[a].is_trace_free());
    }
    CHECK(max_abs(rc.weight.real_on_grid(Grid(8))) < 1.3 + 1e-12);
  }
}
