#include "doctest.h"

#include <cmath>
#include <random>

#include "spinspec/catalog.hpp"
#include "spinspec/errors.hpp"
#include "spinspec/pipeline.hpp"
#include "spinspec/spinor_gauge.hpp"

using namespace spinspec;

namespace {

SO3Field relation(const PrincipalSymbol& sym, const PrincipalSymbol& ref, const Grid& grid) {
  const Metric metric = metric_from_symbol(sym, grid);
  return relate_frames(frame_from_symbol(sym), frame_from_symbol(ref), metric);
}

Mat3 random_rotation(std::mt19937_64& rng) { return so3_from_su2(catalog::random_su2(rng)); }

// Distance between two SU(2) fields up to one global sign.
double su2_distance_up_to_sign(const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus = std::max(plus, (a[i] - b[i]).cwiseAbs().maxCoeff());
    minus = std::max(minus, (a[i] + b[i]).cwiseAbs().maxCoeff());
  }
  return std::min(plus, minus);
}

}  // namespace

TEST_CASE("double cover: SO(3) image and quaternion preimage") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const Mat2 r = catalog::random_su2(rng);
    const Mat3 o = so3_from_su2(r);
    CHECK((o * o.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(o.determinant() == doctest::Approx(1.0).epsilon(1e-14));
    const Mat2 back = su2_from_so3(o);
    CHECK(std::min((back - r).cwiseAbs().maxCoeff(), (back + r).cwiseAbs().maxCoeff()) < 1e-13);
  }
  Mat3 reflection = Mat3::Identity();
  reflection(2, 2) = -1.0;
  CHECK_THROWS_AS(su2_from_so3(reflection), LiftIllConditioned);
}

TEST_CASE("double-turn relation lifts to the diagonal gauge") {
  const Grid grid(32);
  const SO3Field o = relation(catalog::double_turn(), standard_pauli_symbol(1), grid);
  const SU2Field r = so3_to_su2_lift(o);
  CHECK(r.sign_resolved);
  CHECK(lift_residual(r, o) < 1e-12);
  // Re tr R(0) ≥ 0 fixes the sign.
  CHECK(r.values[0].trace().real() >= 0.0);
  const std::vector<Mat2> expected = catalog::double_turn_gauge().adjoint().on_grid(grid);
  const std::vector<Mat2> expected_alt = catalog::double_turn_gauge().on_grid(grid);
  const double d = std::min(max_grid_difference(r.values, expected), max_grid_difference(r.values, expected_alt));
  CHECK(d < 1e-12);
}

TEST_CASE("single-turn relation has no continuous lift around x3") {
  for (int n : {16, 32}) {
    const SO3Field o = relation(catalog::single_turn(), standard_pauli_symbol(1), Grid(n));
    try {
      so3_to_su2_lift(o);
      FAIL("expected SpinStructureMismatch");
    } catch (const SpinStructureMismatch& e) {
      REQUIRE(e.cycles().size() == 1);
      CHECK(e.cycles()[0] == "x3");
    }
    CHECK_FALSE(same_spin_structure(catalog::single_turn(), standard_pauli_symbol(1), Grid(n)));
  }
  CHECK(same_spin_structure(catalog::double_turn(), standard_pauli_symbol(1), Grid(32)));
}

TEST_CASE("lift does not depend on the BFS root beyond a global sign") {
  std::mt19937_64 rng(8);
  const auto rc = catalog::random_case(rng);
  const Grid grid(16);
  const SO3Field o = relation(rc.symbol, rc.reference, grid);
  const SU2Field a = so3_to_su2_lift(o);
  for (std::size_t root : {std::size_t{17}, grid.size() / 2, grid.size() - 1}) {
    const SU2Field b = so3_to_su2_lift_from(o, root);
    CHECK(su2_distance_up_to_sign(a.values, b.values) < 1e-12);
  }
}

TEST_CASE("relate_frames rejects foreign metrics and opposite charges") {
  const Grid grid(16);
  const PrincipalSymbol sym = catalog::double_turn();
  const Metric metric = metric_from_symbol(sym, grid);
  const Frame frame = frame_from_symbol(sym);
  CHECK_THROWS_AS(relate_frames(frame, frame.scaled(TrigPoly(2.0)), metric), MetricMismatch);
  CHECK_THROWS_AS(relate_frames(frame, frame_from_symbol(standard_pauli_symbol(-1)), metric), ChargeMismatch);
  // A constant rotation of the reference is still admissible.
  std::mt19937_64 rng(1);
  const Mat3 q = random_rotation(rng);
  const SO3Field o = relate_frames(frame, frame.rotated(q), metric);
  CHECK(o.values.size() == grid.size());
}

TEST_CASE("spinor and SU(2) correspondence") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const Spinor xi(cd(n(rng), n(rng)), cd(n(rng), n(rng)));
    const Mat2 r = su2_from_spinor(xi);
    CHECK((r * r.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-14);
    const double w = xi.norm();
    CHECK(std::abs(w * r(1, 1) - xi(0)) < 1e-13);
    CHECK(std::abs(-w * r(1, 0) - xi(1)) < 1e-13);
    // C² = −1 and C preserves the norm.
    CHECK((charge_conjugate(charge_conjugate(xi)) + xi).norm() < 1e-15);
    CHECK(std::abs(charge_conjugate(xi).norm() - w) < 1e-14);
    CHECK(std::abs(xi.dot(charge_conjugate(xi))) < 1e-14);
  }
}

TEST_CASE("field round trip spinor -> SU(2) -> spinor") {
  const Grid grid(8);
  std::mt19937_64 rng(2);
  const MatrixField q = catalog::random_su2_field(rng);
  SU2Field r{grid, q.on_grid(grid), true};
  RealGrid w = (TrigPoly(1.0) + TrigPoly::cosine({1, 1, 0}, 0.2)).real_on_grid(grid);
  const SpinorField xi = spinor_from_su2(r, w);
  CHECK(xi.normalization_defect() < 1e-14);
  const SU2Field back = su2_from_spinor(xi);
  CHECK(max_grid_difference(back.values, r.values) < 1e-13);

  SpinorField zero{grid, std::vector<Spinor>(grid.size(), Spinor::Zero()), RealGrid(grid.size(), 0.0)};
  CHECK_THROWS_AS(su2_from_spinor(zero), VanishingSpinor);
}

TEST_CASE("double-turn spinor is the phase (e^{-i x3}, 0) up to sign") {
  const Analysis an = analyze(catalog::double_turn_problem());
  const Grid& grid = an.grid;
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Spinor expected(std::exp(cd(0.0, -grid.point(i)[2])), 0.0);
    plus = std::max(plus, (an.spinor.values[i] - expected).cwiseAbs().maxCoeff());
    minus = std::max(minus, (an.spinor.values[i] + expected).cwiseAbs().maxCoeff());
  }
  CHECK(std::min(plus, minus) <= 1e-12);
}

TEST_CASE("random family spinor is w eta / |eta| up to sign") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 2; ++t) {
    const auto rc = catalog::random_case(rng);
    const Analysis an = analyze(rc.symbol, rc.reference, rc.weight, 24);
    const Grid& grid = an.grid;
    SpinorField expected{grid, {}, an.spinor.weight};
    const ComplexGrid e1 = rc.eta1.on_grid(grid), e2 = rc.eta2.on_grid(grid);
    const RealGrid w = rc.weight.real_on_grid(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Spinor eta(e1[i], e2[i]);
      expected.values.push_back(w[i] * eta / eta.norm());
    }
    CHECK(spinor_distance_up_to_sign(an.spinor, expected) < 1e-10);
  }
}

TEST_CASE("reference change Q ref Q* maps the spinor to Q xi") {
  std::mt19937_64 rng(21);
  const auto rc = catalog::random_case(rng);
  const int n = 24;
  const Analysis base = analyze(rc.symbol, rc.reference, rc.weight, n);
  const MatrixField q = catalog::random_su2_field(rng);
  const PrincipalSymbol moved = su2_reference_transform(rc.reference, q);
  const Analysis after = analyze(rc.symbol, moved, rc.weight, n);
  CHECK(spinor_distance_up_to_sign(after.spinor, su2_spinor_transform(base.spinor, q)) < 1e-10);
  CHECK(std::abs(after.action - base.action) < 1e-9);
}

TEST_CASE("conformal transform scales the symbol and weight pointwise") {
  const PrincipalSymbol sym = catalog::double_turn();
  const TrigPoly phi = TrigPoly::cosine({1, 0, 0}, 0.2);
  const Grid fine(64);
  const ConformalResult c = conformal_transform(sym, TrigPoly(1.0), phi, fine);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 6.28);
  for (int t = 0; t < 10; ++t) {
    const Point x{u(rng), u(rng), u(rng)};
    const double f = std::exp(-phi(x).real());
    CHECK(std::abs(c.weight(x).real() - f) < 1e-12);
    const Vec3 p = Vec3::Random();
    CHECK((c.symbol.at(x, p) - f * sym.at(x, p)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("rigid rotation keeps the norm") {
  const Analysis an = analyze(catalog::double_turn_problem());
  std::mt19937_64 rng(5);
  const SpinorField rotated = rigid_rotation(an.spinor, catalog::random_su2(rng));
  double dev = 0.0;
  for (std::size_t i = 0; i < rotated.values.size(); ++i) {
    dev = std::max(dev, std::abs(rotated.values[i].norm() - an.spinor.values[i].norm()));
  }
  CHECK(dev < 1e-14);
}
