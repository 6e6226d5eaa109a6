#pragma once

#include <random>

#include "spinspec/problem.hpp"
#include "spinspec/spinor_gauge.hpp"

namespace spinspec {

/// Symbols with closed-form answers and random generators used by the
/// verification suites and the tests.
namespace catalog {

/// [[p3, e^{2ix³}(p1 − ip2)], [e^{−2ix³}(p1 + ip2), −p3]]: the frame turns
/// twice about the third axis as x³ goes round.
PrincipalSymbol double_turn();
/// The same with p1 + ip2 in the upper right corner (charge −1).
PrincipalSymbol double_turn_mirrored();
/// e^{±ix³} instead of e^{±2ix³}: a single turn, no continuous lift.
PrincipalSymbol single_turn();
/// diag(e^{ix³}, e^{−ix³}), relating double_turn to the standard symbol.
MatrixField double_turn_gauge();

ProblemSpec double_turn_problem();
ProblemSpec standard_problem();
ProblemSpec single_turn_problem();
ProblemSpec mirrored_problem();

/// Charge +1 symbol of degree ≤ 2 with a known spinor. With η a random
/// degree-1 spinor and E0 a random constant frame (det > 0):
///   reference L̊ = ‖η‖² E0·s,   symbol L = M(η) (E0·s) M(η)*,
/// M(η) = [[conj η¹, conj η²], [−η², η¹]], so both share the metric
/// ‖η‖⁴ E0ᵀE0 and the spinor is ±w η/‖η‖.
struct RandomCase {
  PrincipalSymbol symbol;
  PrincipalSymbol reference;
  TrigPoly weight;
  TrigPoly eta1, eta2;
};
RandomCase random_case(std::mt19937_64& rng, double amplitude = 0.1, double weight_amplitude = 0.3);

/// Real trig polynomial of degree ≤ 2 with sup norm ≤ amplitude.
TrigPoly random_scalar(std::mt19937_64& rng, double amplitude, int degree = 2);
/// Uniformly distributed constant SU(2) matrix.
Mat2 random_su2(std::mt19937_64& rng);
/// U1 diag(e^{ik·x}, e^{−ik·x}) U2 with random constant U1, U2 and |k_α| ≤ 1.
MatrixField random_su2_field(std::mt19937_64& rng);

}  // namespace catalog
}  // namespace spinspec
