#include "wteleport/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace wteleport {

namespace {

constexpr double kHardNegative = 1e-8;

void require_two_qubits(std::size_t size, const char* where) {
  if (size != 2) {
    throw InvalidInput(std::string(where) + ": expected a two-qubit register, got " +
                       std::to_string(size) + " qubits");
  }
}

}  // namespace

const SpinFlipOperator& SpinFlipOperator::standard() {
  static const SpinFlipOperator op = [] {
    // |11><00| - |01><10| - |10><01| + |00><11|
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(3, 0) = 1.0;
    m(1, 2) = -1.0;
    m(2, 1) = -1.0;
    m(0, 3) = 1.0;
    return SpinFlipOperator(m);
  }();
  return op;
}

StateVector spin_flip_pure(const StateVector& state, const SpinFlipOperator& flip) {
  require_two_qubits(state.reg().size(), "spin_flip_pure");
  if (!state.is_normalized()) {
    throw InvalidInput("spin_flip_pure: state is not normalized");
  }
  CVector flipped = flip.matrix() * state.amplitudes().conjugate();
  return StateVector(state.reg(), std::move(flipped));
}

double concurrence_pure(const StateVector& state, const SpinFlipOperator& flip) {
  const StateVector tilde = spin_flip_pure(state, flip);
  return std::abs(state.amplitudes().dot(tilde.amplitudes()));
}

DensityMatrix spin_flip_mixed(const DensityMatrix& rho, const SpinFlipOperator& flip) {
  require_two_qubits(rho.reg().size(), "spin_flip_mixed");
  rho.check_physical();
  const Eigen::Matrix4cd& y = flip.matrix();
  CMatrix tilde = y * rho.entries().conjugate() * y;
  return DensityMatrix(rho.reg(), std::move(tilde));
}

double concurrence_mixed(const DensityMatrix& rho, const SpinFlipOperator& flip) {
  require_two_qubits(rho.reg().size(), "concurrence_mixed");
  if (!rho.is_normalized()) {
    throw InvalidInput("concurrence_mixed: trace " + std::to_string(rho.trace()) + " is not 1");
  }
  const DensityMatrix tilde = spin_flip_mixed(rho, flip);

  // rho = A A^dagger with A = V sqrt(D). Eigenvalues of rho under the zero-probability
  // cutoff are roundoff and are dropped from A.
  Eigen::SelfAdjointEigenSolver<CMatrix> rho_es(rho.entries());
  if (rho_es.info() != Eigen::Success) {
    throw NumericalFailure("concurrence_mixed: eigendecomposition of rho failed");
  }
  const Eigen::VectorXd root_vals =
      rho_es.eigenvalues().unaryExpr([](double d) { return d < tol::kZeroProbability ? 0.0 : std::sqrt(d); });
  const CMatrix a = rho_es.eigenvectors() * root_vals.cast<Complex>().asDiagonal();

  // A^dagger rho~ A shares its nonzero spectrum with rho rho~.
  CMatrix h = a.adjoint() * tilde.entries() * a;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> h_es(h, Eigen::EigenvaluesOnly);
  if (h_es.info() != Eigen::Success) {
    throw NumericalFailure("concurrence_mixed: eigendecomposition of A^dagger rho~ A failed");
  }
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) {
    const double ev = h_es.eigenvalues()(i);
    if (ev < -kHardNegative) {
      throw NumericalFailure("concurrence_mixed: eigenvalue " + std::to_string(ev) +
                             " of rho*rho~ is negative beyond roundoff");
    }
    lambda[static_cast<std::size_t>(i)] = std::sqrt(std::max(ev, 0.0));
  }

  // For a Hermitian flip, A^dagger rho~ A = tau^dagger tau with tau = A^T Y A, so the lambdas
  // are the singular values of tau. This skips squaring them, which would push roundoff
  // of order 1e-16 up to 1e-8 on rank-deficient states.
  const Eigen::Matrix4cd& y = flip.matrix();
  if ((y - y.adjoint()).cwiseAbs().maxCoeff() == 0.0) {
    const CMatrix tau = a.transpose() * y * a;
    Eigen::JacobiSVD<CMatrix> svd(tau);
    for (int i = 0; i < 4; ++i) lambda[static_cast<std::size_t>(i)] = svd.singularValues()(i);
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace wteleport
