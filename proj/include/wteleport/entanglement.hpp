#pragma once

// Two-qubit concurrence: spin-flip overlap for pure states, Wootters'
// eigenvalue formula for mixed states.

#include <Eigen/Dense>

#include "wteleport/qcore.hpp"

namespace wteleport {

/// The 4x4 operator sigma_y (x) sigma_y in the computational basis.
///
/// `standard()` is the only physically meaningful value. Other matrices can be
/// supplied through `from_matrix` so that harness self-tests can inject a
/// deliberately wrong operator and watch verification fail.
class SpinFlipOperator {
 public:
  static const SpinFlipOperator& standard();
  static SpinFlipOperator from_matrix(const Eigen::Matrix4cd& m) { return SpinFlipOperator(m); }

  const Eigen::Matrix4cd& matrix() const { return m_; }

 private:
  explicit SpinFlipOperator(const Eigen::Matrix4cd& m) : m_(m) {}
  Eigen::Matrix4cd m_;
};

/// (sigma_y (x) sigma_y)|eta*>. Requires a normalized two-qubit state.
StateVector spin_flip_pure(const StateVector& state,
                           const SpinFlipOperator& flip = SpinFlipOperator::standard());

/// |<eta|eta~>|, in [0, 1].
double concurrence_pure(const StateVector& state,
                        const SpinFlipOperator& flip = SpinFlipOperator::standard());

/// (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
DensityMatrix spin_flip_mixed(const DensityMatrix& rho,
                              const SpinFlipOperator& flip = SpinFlipOperator::standard());

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), with l_i the decreasing
/// square roots of the eigenvalues of rho * rho~.
///
/// The eigenvalues are taken from the Hermitian matrix sqrt(rho) rho~ sqrt(rho),
/// which is similar to rho * rho~. Eigenvalues in [-1e-10, 0) are clipped to
/// zero; anything below -1e-8 raises NumericalFailure. Input must have unit
/// trace (1e-10), be Hermitian and positive semidefinite.
double concurrence_mixed(const DensityMatrix& rho,
                         const SpinFlipOperator& flip = SpinFlipOperator::standard());

}  // namespace wteleport
