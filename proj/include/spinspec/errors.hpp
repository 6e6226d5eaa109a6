#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinspec {

/// Base class for every recoverable failure raised by the library.
class SpinspecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The induced metric is not positive definite somewhere on the grid.
class EllipticityFailure : public SpinspecError {
 public:
  EllipticityFailure(const std::string& what, double min_eigenvalue)
      : SpinspecError(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// The analytic and frame-based charge formulas disagree, or are not near ±1.
class ChargeInconsistent : public SpinspecError {
 public:
  using SpinspecError::SpinspecError;
};

/// Two frames that should share a metric do not.
class MetricMismatch : public SpinspecError {
 public:
  MetricMismatch(const std::string& what, double deviation)
      : SpinspecError(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

/// The two symbols carry opposite topological charge, so no SO(3) relation exists.
class ChargeMismatch : public SpinspecError {
 public:
  using SpinspecError::SpinspecError;
};

/// The SO(3) field admits no continuous SU(2) lift: the sign flips around
/// at least one non-contractible cycle of the torus.
class SpinStructureMismatch : public SpinspecError {
 public:
  SpinStructureMismatch(const std::string& what, std::vector<std::string> cycles)
      : SpinspecError(what), cycles_(std::move(cycles)) {}
  const std::vector<std::string>& cycles() const { return cycles_; }

 private:
  std::vector<std::string> cycles_;
};

/// Quaternion extraction or local sign continuity broke down (grid too coarse).
class LiftIllConditioned : public SpinspecError {
 public:
  using SpinspecError::SpinspecError;
};

class VanishingSpinor : public SpinspecError {
 public:
  using SpinspecError::SpinspecError;
};

class NonpositiveWeight : public SpinspecError {
 public:
  using SpinspecError::SpinspecError;
};

/// A coefficient frequency is too large for the requested plane-wave cutoff.
class TruncationTooSmall : public SpinspecError {
 public:
  using SpinspecError::SpinspecError;
};

class ConvergenceFailure : public SpinspecError {
 public:
  using SpinspecError::SpinspecError;
};

/// Malformed or inconsistent problem description.
class ValidationError : public SpinspecError {
 public:
  using SpinspecError::SpinspecError;
};

}  // namespace spinspec
