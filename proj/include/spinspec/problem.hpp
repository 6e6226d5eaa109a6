#pragma once

#include <array>
#include <optional>
#include <string>

#include "spinspec/symbol.hpp"

namespace spinspec {

/// Input of the command line tool: symbol, optional reference symbol,
/// weight, cutoff and grid.
///
/// JSON layout:
///   { "name": "...",
///     "symbol": [[entry...], [entry...], [entry...]],      // L^(1), L^(2), L^(3)
///     "reference_symbol": [[...], [...], [...]],           // optional
///     "weight": [{"k": [0,0,0], "re": 1.0, "im": 0.0}],    // optional
///     "truncation": 4, "grid": 32,
///     "tolerances": {"ellip": 1e-8, ...} }                 // optional
/// with matrix entries {"k": [k1,k2,k3], "re": [[..],[..]], "im": [[..],[..]]}.
/// Only one of each ±k pair needs to be given; the partner is the Hermitian
/// adjoint (conjugate for the weight). If both are given they must agree.
struct ProblemSpec {
  std::string name;
  std::array<MatrixField, 3> symbol;
  std::optional<std::array<MatrixField, 3>> reference;
  TrigPoly weight = TrigPoly(1.0);
  int truncation = 4;
  int grid = 32;
  Tolerances tol;

  PrincipalSymbol principal() const { return PrincipalSymbol(symbol); }
  /// The stated reference, or the constant standard Pauli symbol with the
  /// given orientation (s¹, ±s², s³) when none is stated.
  PrincipalSymbol reference_symbol(int charge) const;
};

/// Parses and validates; throws ValidationError with a description.
ProblemSpec parse_problem(const std::string& json_text);
ProblemSpec load_problem(const std::string& path);
/// Canonical JSON (one representative per ±k pair).
std::string serialize_problem(const ProblemSpec& spec);

/// Checks the Hermitian/trace-free structure, the grid rule and that the
/// weight is real and positive on the grid. Throws ValidationError.
void validate(const ProblemSpec& spec);

/// Constant (s¹, c·s², s³).
PrincipalSymbol standard_pauli_symbol(int charge = 1);

}  // namespace spinspec
