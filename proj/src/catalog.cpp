#include "spinspec/catalog.hpp"

#include <cmath>
#include <numbers>

namespace spinspec::catalog {

namespace {

PrincipalSymbol turning(int turns, int orientation) {
  const TrigPoly up = TrigPoly::exponential({0, 0, turns});
  const TrigPoly down = up.conj();
  // L^(1) = [[0, e], [ē, 0]], L^(2) = [[0, −io e], [io ē, 0]], L^(3) = s³.
  const double o = orientation;
  return PrincipalSymbol({MatrixField(TrigPoly(), up, down, TrigPoly()),
                          MatrixField(TrigPoly(), cd(0.0, -o) * up, cd(0.0, o) * down, TrigPoly()),
                          MatrixField(TrigPoly(1.0), TrigPoly(), TrigPoly(), TrigPoly(-1.0))});
}

ProblemSpec problem_from(const std::string& name, const PrincipalSymbol& sym) {
  ProblemSpec p;
  p.name = name;
  p.symbol = sym.components();
  return p;
}

}  // namespace

PrincipalSymbol double_turn() { return turning(2, 1); }
PrincipalSymbol double_turn_mirrored() { return turning(2, -1); }
PrincipalSymbol single_turn() { return turning(1, 1); }

MatrixField double_turn_gauge() {
  const TrigPoly e = TrigPoly::exponential({0, 0, 1});
  return MatrixField(e, TrigPoly(), TrigPoly(), e.conj());
}

ProblemSpec double_turn_problem() { return problem_from("double_turn", double_turn()); }
ProblemSpec standard_problem() { return problem_from("standard", standard_pauli_symbol(1)); }
ProblemSpec single_turn_problem() { return problem_from("single_turn", single_turn()); }
ProblemSpec mirrored_problem() { return problem_from("double_turn_mirrored", double_turn_mirrored()); }

TrigPoly random_scalar(std::mt19937_64& rng, double amplitude, int degree) {
  std::uniform_int_distribution<int> freq(-degree, degree);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigPoly f;
  const int terms = 3;
  for (int t = 0; t < terms; ++t) {
    Freq k{freq(rng), freq(rng), freq(rng)};
    if (k == Freq{0, 0, 0}) k = {0, 0, 1};
    // cos and sin parts with |a| + |b| ≤ amplitude / terms
    const double a = unit(rng) * amplitude / (2.0 * terms);
    const double b = unit(rng) * amplitude / (2.0 * terms);
    f += TrigPoly::cosine(k, a) + TrigPoly::sine(k, b);
  }
  return f;
}

Mat2 random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector4d q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  Mat2 u;
  u << cd(q[0], q[1]), cd(q[2], q[3]), cd(-q[2], q[3]), cd(q[0], -q[1]);
  return u;
}

MatrixField random_su2_field(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> freq(-1, 1);
  Freq k{freq(rng), freq(rng), freq(rng)};
  if (k == Freq{0, 0, 0}) k = {1, 0, 0};
  const TrigPoly e = TrigPoly::exponential(k);
  const MatrixField d(e, TrigPoly(), TrigPoly(), e.conj());
  return MatrixField(random_su2(rng)) * d * MatrixField(random_su2(rng));
}

RandomCase random_case(std::mt19937_64& rng, double amplitude, double weight_amplitude) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> freq(-1, 1);

  auto random_eta = [&](cd constant) {
    TrigPoly eta(constant);
    for (int t = 0; t < 4; ++t) {
      Freq k{freq(rng), freq(rng), freq(rng)};
      if (k == Freq{0, 0, 0}) continue;
      eta += TrigPoly::exponential(k, cd(unit(rng), unit(rng)) * (amplitude / std::sqrt(2.0)));
    }
    return eta;
  };
  const TrigPoly eta1 = random_eta(cd(1.0, 0.0));
  const TrigPoly eta2 = random_eta(cd(0.3, 0.0));

  // Constant frame near the identity with positive determinant.
  Mat3 e0;
  do {
    for (int j = 0; j < 3; ++j) {
      for (int a = 0; a < 3; ++a) e0(j, a) = (j == a ? 1.0 : 0.0) + 0.25 * unit(rng);
    }
  } while (e0.determinant() < 0.2);

  const auto& s = pauli_matrices();
  std::array<Mat2, 3> base;
  for (int a = 0; a < 3; ++a) base[a] = e0(0, a) * s[0] + e0(1, a) * s[1] + e0(2, a) * s[2];

  const MatrixField m(eta1.conj(), eta2.conj(), -eta2, eta1);
  const MatrixField ma = m.adjoint();
  const TrigPoly norm2 = (eta1 * eta1.conj() + eta2 * eta2.conj()).real_part();

  std::array<MatrixField, 3> sym, ref;
  for (int a = 0; a < 3; ++a) {
    sym[a] = m * MatrixField(base[a]) * ma;
    ref[a] = norm2 * MatrixField(base[a]);
  }
  const TrigPoly weight = TrigPoly(1.0) + random_scalar(rng, weight_amplitude);
  return {PrincipalSymbol::projected(sym), PrincipalSymbol::projected(ref), weight, eta1, eta2};
}

}  // namespace spinspec::catalog
