#pragma once

#include <array>

#include "spinspec/symbol.hpp"

namespace spinspec {

/// First-order 2×2 operator L = P^α ∂/∂x^α + Q0 with trig-polynomial coefficients.
struct Operator1st {
  std::array<MatrixField, 3> P;
  MatrixField Q0;

  int degree() const;
  /// Principal symbol matrices i P^α (not validated).
  std::array<MatrixField, 3> principal_components() const;
};

/// Operator with principal symbol sym and zero subprincipal symbol:
/// P^α = −i L^(α), Q0 = −(i/2) Σ_α ∂_α L^(α).
Operator1st operator_from_symbol(const PrincipalSymbol& sym);

/// L_sub = Q0 + (i/2) Σ_α ∂_α(i P^α).
MatrixField subprincipal(const Operator1st& op);

/// Coefficients of R ∘ op ∘ R*: P' = R P R*, Q0' = R Q0 R* + R P^α ∂_α R*.
Operator1st conjugate_operator(const Operator1st& op, const MatrixField& r);

/// Subprincipal symbol of R L̊ R* for L̊ with zero subprincipal symbol, from
/// the closed form (i/2)(∂_α R σ^α R* − R σ^α ∂_α R*), σ^α = L̊^(α).
MatrixField conjugation_subprincipal(const PrincipalSymbol& reference, const MatrixField& r);

/// op + Z as a zero-order shift.
Operator1st shifted(const Operator1st& op, const MatrixField& z);

/// max over grid points of ‖A − A*‖ for the principal and subprincipal parts.
double self_adjointness_defect(const Operator1st& op, const Grid& grid);

}  // namespace spinspec
