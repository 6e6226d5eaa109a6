#include "spinspec/operator.hpp"

#include <algorithm>

namespace spinspec {

namespace {
const cd kI(0.0, 1.0);
}

int Operator1st::degree() const {
  return std::max({P[0].degree(), P[1].degree(), P[2].degree(), Q0.degree()});
}

std::array<MatrixField, 3> Operator1st::principal_components() const {
  return {kI * P[0], kI * P[1], kI * P[2]};
}

Operator1st operator_from_symbol(const PrincipalSymbol& sym) {
  Operator1st op;
  MatrixField divergence = MatrixField::zero();
  for (int a = 0; a < 3; ++a) {
    op.P[a] = -kI * sym[a];
    divergence += sym[a].derivative(a);
  }
  op.Q0 = cd(0.0, -0.5) * divergence;
  return op;
}

MatrixField subprincipal(const Operator1st& op) {
  MatrixField sum = MatrixField::zero();
  for (int a = 0; a < 3; ++a) sum += (kI * op.P[a]).derivative(a);
  return op.Q0 + cd(0.0, 0.5) * sum;
}

Operator1st conjugate_operator(const Operator1st& op, const MatrixField& r) {
  const auto ra = r.adjoint();
  Operator1st out;
  out.Q0 = r * op.Q0 * ra;
  for (int a = 0; a < 3; ++a) {
    out.P[a] = r * op.P[a] * ra;
    out.Q0 += r * op.P[a] * ra.derivative(a);
  }
  return out;
}

MatrixField conjugation_subprincipal(const PrincipalSymbol& reference, const MatrixField& r) {
  const auto ra = r.adjoint();
  MatrixField sum = MatrixField::zero();
  for (int a = 0; a < 3; ++a) {
    sum += r.derivative(a) * reference[a] * ra;
    sum -= r * reference[a] * ra.derivative(a);
  }
  return cd(0.0, 0.5) * sum;
}

Operator1st shifted(const Operator1st& op, const MatrixField& z) {
  Operator1st out = op;
  out.Q0 += z;
  return out;
}

double self_adjointness_defect(const Operator1st& op, const Grid& grid) {
  double defect = 0.0;
  auto check = [&](const MatrixField& m) {
    for (const auto& v : m.on_grid(grid)) defect = std::max(defect, (v - v.adjoint()).cwiseAbs().maxCoeff());
  };
  for (const auto& l : op.principal_components()) check(l);
  check(subprincipal(op));
  return defect;
}

}  // namespace spinspec
