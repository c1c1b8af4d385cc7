#include "wteleport/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wteleport {

namespace {

// Shift amounts (LSB-based) for each label of `sub` inside `full`.
std::vector<std::size_t> bit_shifts(const QubitRegister& full, const QubitRegister& sub) {
  std::vector<std::size_t> shifts;
  shifts.reserve(sub.size());
  for (int label : sub.labels()) {
    shifts.push_back(full.size() - 1 - full.position(label));
  }
  return shifts;
}

// Places the bits of `sub_index` (MSB first, one per shift) into a full index.
std::size_t scatter(std::size_t sub_index, const std::vector<std::size_t>& shifts) {
  std::size_t full = 0;
  const std::size_t k = shifts.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t bit = (sub_index >> (k - 1 - i)) & 1U;
    full |= bit << shifts[i];
  }
  return full;
}

}  // namespace

// ---------------------------------------------------------------------------
// QubitRegister

QubitRegister::QubitRegister(std::initializer_list<int> labels)
    : QubitRegister(std::vector<int>(labels)) {}

QubitRegister::QubitRegister(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty() || labels_.size() > kMaxQubits) {
    throw InvalidInput("register size must be in [1, 5], got " + std::to_string(labels_.size()));
  }
  std::set<int> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw InvalidInput("register labels must be unique: " + to_string());
  }
}

bool QubitRegister::contains(int label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t QubitRegister::position(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw InvalidInput("qubit " + std::to_string(label) + " not in register " + to_string());
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

bool QubitRegister::disjoint(const QubitRegister& other) const {
  return std::none_of(other.labels_.begin(), other.labels_.end(),
                      [this](int l) { return contains(l); });
}

bool QubitRegister::contains_all(const QubitRegister& other) const {
  return std::all_of(other.labels_.begin(), other.labels_.end(),
                     [this](int l) { return contains(l); });
}

QubitRegister QubitRegister::without(const QubitRegister& removed) const {
  std::vector<int> rest;
  for (int l : labels_) {
    if (!removed.contains(l)) rest.push_back(l);
  }
  return QubitRegister(std::move(rest));
}

QubitRegister QubitRegister::concat(const QubitRegister& other) const {
  std::vector<int> all = labels_;
  all.insert(all.end(), other.labels_.begin(), other.labels_.end());
  return QubitRegister(std::move(all));
}

std::string QubitRegister::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(labels_[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(QubitRegister reg, CVector amplitudes)
    : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != reg_.dimension()) {
    throw InvalidInput("state vector length " + std::to_string(amps_.size()) +
                       " does not match register " + reg_.to_string());
  }
  if (!amps_.allFinite()) {
    throw InvalidInput("state vector has non-finite amplitudes");
  }
}

StateVector StateVector::zero(QubitRegister reg) {
  const auto dim = static_cast<Eigen::Index>(reg.dimension());
  return StateVector(std::move(reg), CVector::Zero(dim));
}

bool StateVector::is_normalized(double tolerance) const {
  return std::abs(amps_.squaredNorm() - 1.0) <= tolerance;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) return *this;
  return StateVector(reg_, amps_ / n);
}

double StateVector::overlap_modulus(const StateVector& other) const {
  if (!(reg_ == other.reg_)) {
    throw InvalidInput("overlap of states on different registers " + reg_.to_string() + " vs " +
                       other.reg_.to_string());
  }
  return std::abs(amps_.dot(other.amps_));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(QubitRegister reg, CMatrix entries)
    : reg_(std::move(reg)), rho_(std::move(entries)) {
  const auto dim = static_cast<Eigen::Index>(reg_.dimension());
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw InvalidInput("density matrix shape does not match register " + reg_.to_string());
  }
  if (!rho_.allFinite()) {
    throw InvalidInput("density matrix has non-finite entries");
  }
  const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::kNorm) {
    throw InvalidInput("density matrix is not Hermitian (max deviation " + std::to_string(asym) +
                       ")");
  }
}

bool DensityMatrix::is_normalized(double tolerance) const {
  return std::abs(trace() - 1.0) <= tolerance;
}

void DensityMatrix::check_physical() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eigen decomposition of density matrix failed");
  }
  if (es.eigenvalues().minCoeff() < -tol::kNorm) {
    throw InvalidInput("density matrix has negative eigenvalue " +
                       std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::normalized() const {
  const double t = trace();
  if (std::abs(t) < tol::kZeroProbability) {
    throw InvalidInput("cannot normalize a density matrix with zero trace");
  }
  return DensityMatrix(reg_, rho_ / t);
}

// ---------------------------------------------------------------------------
// MeasurementBasis

MeasurementBasis::MeasurementBasis(BasisKind kind, std::vector<CVector> vectors)
    : kind_(kind), qubits_(0), vectors_(std::move(vectors)) {
  const std::size_t count = vectors_.size();
  while ((std::size_t{1} << qubits_) < count) ++qubits_;
  if (count == 0 || (std::size_t{1} << qubits_) != count) {
    throw InvalidBasis("basis size must be a power of two, got " + std::to_string(count));
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (static_cast<std::size_t>(vectors_[i].size()) != count) {
      throw InvalidBasis("basis vector " + std::to_string(i) + " has wrong dimension");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex ip = vectors_[j].dot(vectors_[i]);
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - expected) > tol::kOrthonormal) {
        throw InvalidBasis("basis vectors " + std::to_string(j) + "," + std::to_string(i) +
                           " are not orthonormal");
      }
    }
  }
}

MeasurementBasis MeasurementBasis::computational(std::size_t qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits);
  std::vector<CVector> vs;
  for (Eigen::Index i = 0; i < dim; ++i) vs.push_back(CVector::Unit(dim, i));
  return MeasurementBasis(BasisKind::Computational, std::move(vs));
}

MeasurementBasis MeasurementBasis::bell() {
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<CVector> vs(4, CVector::Zero(4));
  vs[0] << h, 0, 0, h;   // Phi+
  vs[1] << h, 0, 0, -h;  // Phi-
  vs[2] << 0, h, h, 0;   // Psi+
  vs[3] << 0, h, -h, 0;  // Psi-
  return MeasurementBasis(BasisKind::Bell, std::move(vs));
}

// ---------------------------------------------------------------------------
// Operations

StateVector ket(std::span<const int> bits, const QubitRegister& reg) {
  if (bits.size() != reg.size()) {
    throw InvalidInput("ket: " + std::to_string(bits.size()) + " bits for register " +
                       reg.to_string());
  }
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw InvalidInput("ket: bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(b);
  }
  StateVector s = StateVector::zero(reg);
  CVector amps = s.amplitudes();
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(reg, std::move(amps));
}

StateVector ket(std::initializer_list<int> bits, const QubitRegister& reg) {
  return ket(std::span<const int>(bits.begin(), bits.size()), reg);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (!a.reg().disjoint(b.reg())) {
    throw InvalidInput("tensor: overlapping registers " + a.reg().to_string() + " and " +
                       b.reg().to_string());
  }
  QubitRegister reg = a.reg().concat(b.reg());
  const auto db = static_cast<Eigen::Index>(b.dimension());
  CVector out(static_cast<Eigen::Index>(reg.dimension()));
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  }
  return StateVector(std::move(reg), std::move(out));
}

std::vector<MeasurementOutcome> measure(const StateVector& state, const QubitRegister& targets,
                                        const MeasurementBasis& basis) {
  if (!state.reg().contains_all(targets)) {
    throw InvalidInput("measure: targets " + targets.to_string() + " not in register " +
                       state.reg().to_string());
  }
  if (basis.qubits() != targets.size()) {
    throw InvalidBasis("measure: basis acts on " + std::to_string(basis.qubits()) +
                       " qubits, targets have " + std::to_string(targets.size()));
  }
  if (targets.size() == state.reg().size()) {
    // Nothing is left unmeasured: report the collapsed basis vector on `targets`.
    const auto shifts = bit_shifts(state.reg(), targets);
    std::vector<MeasurementOutcome> outcomes;
    for (std::size_t k = 0; k < basis.vectors().size(); ++k) {
      CVector reordered(static_cast<Eigen::Index>(targets.dimension()));
      for (std::size_t t = 0; t < targets.dimension(); ++t) {
        reordered(static_cast<Eigen::Index>(t)) = state[scatter(t, shifts)];
      }
      const double prob = std::norm(basis.vectors()[k].dot(reordered));
      outcomes.push_back({k, prob,
                          prob < tol::kZeroProbability ? StateVector::zero(targets)
                                                       : StateVector(targets, basis.vectors()[k])});
    }
    return outcomes;
  }

  const QubitRegister rest = state.reg().without(targets);
  const auto target_shifts = bit_shifts(state.reg(), targets);
  const auto rest_shifts = bit_shifts(state.reg(), rest);
  const std::size_t target_dim = targets.dimension();
  const std::size_t rest_dim = rest.dimension();

  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(basis.vectors().size());
  for (std::size_t k = 0; k < basis.vectors().size(); ++k) {
    const CVector& b = basis.vectors()[k];
    CVector projected = CVector::Zero(static_cast<Eigen::Index>(rest_dim));
    for (std::size_t r = 0; r < rest_dim; ++r) {
      const std::size_t r_bits = scatter(r, rest_shifts);
      Complex acc = 0.0;
      for (std::size_t t = 0; t < target_dim; ++t) {
        acc += std::conj(b(static_cast<Eigen::Index>(t))) * state[r_bits | scatter(t, target_shifts)];
      }
      projected(static_cast<Eigen::Index>(r)) = acc;
    }
    const double prob = projected.squaredNorm();
    if (prob < tol::kZeroProbability) {
      outcomes.push_back({k, prob, StateVector::zero(rest)});
    } else {
      outcomes.push_back({k, prob, StateVector(rest, projected / std::sqrt(prob))});
    }
  }
  return outcomes;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitRegister& keep) {
  if (!rho.reg().contains_all(keep)) {
    throw InvalidInput("partial_trace: keep " + keep.to_string() + " not in register " +
                       rho.reg().to_string());
  }
  if (keep.size() == rho.reg().size()) {
    // Reorder only.
    const auto shifts = bit_shifts(rho.reg(), keep);
    const std::size_t dim = keep.dimension();
    CMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            rho(scatter(i, shifts), scatter(j, shifts));
      }
    }
    return DensityMatrix(keep, std::move(out));
  }
  const QubitRegister traced = rho.reg().without(keep);
  const auto keep_shifts = bit_shifts(rho.reg(), keep);
  const auto traced_shifts = bit_shifts(rho.reg(), traced);
  const std::size_t dk = keep.dimension();
  const std::size_t dt = traced.dimension();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < dk; ++i) {
    const std::size_t ib = scatter(i, keep_shifts);
    for (std::size_t j = 0; j < dk; ++j) {
      const std::size_t jb = scatter(j, keep_shifts);
      Complex acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        const std::size_t tb = scatter(t, traced_shifts);
        acc += rho(ib | tb, jb | tb);
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return DensityMatrix(keep, std::move(out));
}

DensityMatrix density_from_pure(const StateVector& state) {
  if (!state.is_normalized()) {
    throw InvalidInput("density_from_pure: state is not normalized (norm^2 = " +
                       std::to_string(state.amplitudes().squaredNorm()) + ")");
  }
  const CVector& v = state.amplitudes();
  return DensityMatrix(state.reg(), v * v.adjoint());
}

}  // namespace wteleport
