#pragma once

// Dense state-vector / density-matrix substrate for registers of at most five
// labeled qubits.
//
// Index convention: the first label of a register is the most significant bit
// of the basis index. For register [1,4,5] the amplitude of |q1 q4 q5> lives at
// index 4*q1 + 2*q4 + q5.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wteleport/errors.hpp"

namespace wteleport {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace tol {
inline constexpr double kNorm = 1e-10;         // norm, trace, Hermiticity
inline constexpr double kOrthonormal = 1e-12;  // basis checks
inline constexpr double kZeroProbability = 1e-14;
}  // namespace tol

inline constexpr std::size_t kMaxQubits = 5;

/// Ordered set of distinct qubit labels.
class QubitRegister {
 public:
  QubitRegister(std::initializer_list<int> labels);
  explicit QubitRegister(std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }

  bool contains(int label) const;
  /// Position of `label` counted from the most significant end. Throws if absent.
  std::size_t position(int label) const;
  bool disjoint(const QubitRegister& other) const;
  bool contains_all(const QubitRegister& other) const;

  /// Labels of this register that are not in `removed`, original order kept.
  QubitRegister without(const QubitRegister& removed) const;
  QubitRegister concat(const QubitRegister& other) const;

  std::string to_string() const;

  friend bool operator==(const QubitRegister&, const QubitRegister&) = default;

 private:
  std::vector<int> labels_;
};

class StateVector {
 public:
  StateVector(QubitRegister reg, CVector amplitudes);

  /// All-zero vector, used as the "impossible branch" sentinel.
  static StateVector zero(QubitRegister reg);

  const QubitRegister& reg() const { return reg_; }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t index) const { return amps_(static_cast<Eigen::Index>(index)); }
  std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tolerance = tol::kNorm) const;
  bool is_zero() const { return amps_.isZero(0.0); }
  /// Returns the renormalized state; a zero vector is returned unchanged.
  StateVector normalized() const;

  /// |<this|other>|, both registers must match.
  double overlap_modulus(const StateVector& other) const;

 private:
  QubitRegister reg_;
  CVector amps_;
};

class DensityMatrix {
 public:
  /// Checks shape and Hermiticity (1e-10). Positivity is checked by
  /// `check_physical`, trace by `is_normalized`.
  DensityMatrix(QubitRegister reg, CMatrix entries);

  const QubitRegister& reg() const { return reg_; }
  const CMatrix& entries() const { return rho_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return rho_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  std::size_t dimension() const { return static_cast<std::size_t>(rho_.rows()); }

  double trace() const { return rho_.trace().real(); }
  bool is_normalized(double tolerance = tol::kNorm) const;
  /// Throws InvalidInput if any eigenvalue is below -1e-10.
  void check_physical() const;
  /// Divides by the trace. Throws InvalidInput on a (near) zero trace.
  DensityMatrix normalized() const;

 private:
  QubitRegister reg_;
  CMatrix rho_;
};

enum class BasisKind { Computational, Bell };

/// Orthonormal basis over a k-qubit sub-register. Vector i is outcome i.
class MeasurementBasis {
 public:
  /// Throws InvalidBasis unless `vectors` is an orthonormal basis of C^(2^k).
  MeasurementBasis(BasisKind kind, std::vector<CVector> vectors);

  static MeasurementBasis computational(std::size_t qubits);
  /// Outcome order: Phi+, Phi-, Psi+, Psi-.
  static MeasurementBasis bell();

  BasisKind kind() const { return kind_; }
  const std::vector<CVector>& vectors() const { return vectors_; }
  std::size_t qubits() const { return qubits_; }

 private:
  BasisKind kind_;
  std::size_t qubits_;
  std::vector<CVector> vectors_;
};

struct MeasurementOutcome {
  std::size_t index;
  double probability;
  /// Renormalized state on the unmeasured qubits, or the zero sentinel when
  /// the probability is below 1e-14.
  StateVector post_state;
};

StateVector ket(std::span<const int> bits, const QubitRegister& reg);
StateVector ket(std::initializer_list<int> bits, const QubitRegister& reg);

/// Kronecker product; the result register is a's labels followed by b's.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Projective measurement of `targets` (bit order as listed) enumerating every
/// outcome of `basis`.
std::vector<MeasurementOutcome> measure(const StateVector& state, const QubitRegister& targets,
                                        const MeasurementBasis& basis);

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitRegister& keep);

DensityMatrix density_from_pure(const StateVector& state);

}  // namespace wteleport
