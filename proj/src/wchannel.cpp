#include "wteleport/wchannel.hpp"

#include <cmath>
#include <string>

namespace wteleport {

namespace {

const MeasurementBasis& bell_basis() {
  static const MeasurementBasis basis = MeasurementBasis::bell();
  return basis;
}

const MeasurementBasis& bob_basis() {
  static const MeasurementBasis basis = MeasurementBasis::computational(1);
  return basis;
}

double pure_concurrence_or_zero(const StateVector& post, double probability,
                                const SpinFlipOperator& flip) {
  return probability < tol::kZeroProbability ? 0.0 : concurrence_pure(post, flip);
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameters

InputPairParams InputPairParams::from_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw InvalidInput("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  return InputPairParams(alpha, std::sqrt(1.0 - alpha * alpha));
}

InputPairParams InputPairParams::from_alpha_sq(double alpha_sq) {
  if (!std::isfinite(alpha_sq) || alpha_sq < 0.0 || alpha_sq > 1.0) {
    throw InvalidInput("alpha^2 must lie in [0, 1], got " + std::to_string(alpha_sq));
  }
  return InputPairParams(std::sqrt(alpha_sq), std::sqrt(1.0 - alpha_sq));
}

ChannelParams::ChannelParams(double n) : n_(n) {
  if (!std::isfinite(n) || n <= 0.0) {
    throw InvalidInput("channel parameter n must be positive, got " + std::to_string(n));
  }
}

WernerParams::WernerParams(double p) : p_(p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw InvalidInput("Werner weight p must lie in [0, 1], got " + std::to_string(p));
  }
}

std::string_view to_string(BellOutcome b) {
  switch (b) {
    case BellOutcome::PhiPlus: return "PhiPlus";
    case BellOutcome::PhiMinus: return "PhiMinus";
    case BellOutcome::PsiPlus: return "PsiPlus";
    case BellOutcome::PsiMinus: return "PsiMinus";
  }
  return "?";
}

std::string_view to_string(BobOutcome b) { return b == BobOutcome::Zero ? "Zero" : "One"; }

const QubitRegister& input_register() {
  static const QubitRegister r{1, 2};
  return r;
}
const QubitRegister& channel_register() {
  static const QubitRegister r{3, 4, 5};
  return r;
}
const QubitRegister& output_register() {
  static const QubitRegister r{1, 4};
  return r;
}

// ---------------------------------------------------------------------------
// States

StateVector input_pair(const InputPairParams& params) {
  CVector amps = CVector::Zero(4);
  amps(0) = params.alpha();
  amps(3) = params.beta();
  return StateVector(input_register(), std::move(amps));
}

StateVector w_state(const ChannelParams& params) {
  const double n = params.n();
  const double f = 1.0 / std::sqrt(2.0 + 2.0 * n);
  CVector amps = CVector::Zero(8);
  amps(0b100) = f;
  amps(0b010) = f * std::sqrt(n);
  amps(0b001) = f * std::sqrt(n + 1.0);
  return StateVector(channel_register(), std::move(amps));
}

DensityMatrix werner(const WernerParams& params) {
  const double p = params.p();
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = (1.0 + p) / 4.0;
  rho(1, 1) = rho(2, 2) = (1.0 - p) / 4.0;
  rho(0, 3) = rho(3, 0) = p / 2.0;
  return DensityMatrix(input_register(), std::move(rho));
}

StateVector compose_joint(const StateVector& input, const StateVector& channel) {
  if (!(input.reg() == input_register()) || !(channel.reg() == channel_register())) {
    throw InvalidInput("compose_joint: expected registers [1,2] and [3,4,5], got " +
                       input.reg().to_string() + " and " + channel.reg().to_string());
  }
  return tensor(input, channel);
}

// ---------------------------------------------------------------------------
// Pure protocol

PureProtocolResult run_protocol_pure(const InputPairParams& input, const ChannelParams& channel,
                                     const SpinFlipOperator& flip) {
  const StateVector joint = compose_joint(input_pair(input), w_state(channel));
  const auto alice = measure(joint, QubitRegister{2, 3}, bell_basis());

  PureProtocolResult result{input, channel, {}, 0.0};
  result.branches.reserve(8);
  for (BellOutcome bell : kBellOutcomes) {
    const MeasurementOutcome& a = alice[static_cast<std::size_t>(bell)];
    if (a.probability < tol::kZeroProbability) {
      for (BobOutcome bob : kBobOutcomes) {
        result.branches.push_back({bell, bob, 0.0, StateVector::zero(output_register()), 0.0});
      }
      continue;
    }
    // a.post_state lives on [1,4,5].
    const auto bob_outcomes = measure(a.post_state, QubitRegister{5}, bob_basis());
    for (BobOutcome bob : kBobOutcomes) {
      const MeasurementOutcome& b = bob_outcomes[static_cast<std::size_t>(bob)];
      const double prob = a.probability * b.probability;
      StateVector post = prob < tol::kZeroProbability ? StateVector::zero(output_register())
                                                      : b.post_state;
      const double c = pure_concurrence_or_zero(post, prob, flip);
      result.branches.push_back({bell, bob, prob, std::move(post), c});
    }
  }
  for (const auto& br : result.branches) result.total_probability += br.probability;
  return result;
}

// ---------------------------------------------------------------------------
// Branch maps

Eigen::Matrix4cd branch_map(const ChannelParams& channel, BellOutcome bell, BobOutcome bob) {
  const CVector w = w_state(channel).amplitudes();  // index 4*q3 + 2*q4 + q5
  const CVector& b = bell_basis().vectors()[static_cast<std::size_t>(bell)];  // index 2*q2 + q3
  const int q5 = static_cast<int>(bob);

  // M[(i1,i4), (j1,j2)] = delta(i1,j1) * sum_q3 conj(b[j2,q3]) * w[q3,i4,q5]
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int i1 = 0; i1 < 2; ++i1) {
    for (int i4 = 0; i4 < 2; ++i4) {
      for (int j2 = 0; j2 < 2; ++j2) {
        Complex acc = 0.0;
        for (int q3 = 0; q3 < 2; ++q3) {
          acc += std::conj(b(2 * j2 + q3)) * w(4 * q3 + 2 * i4 + q5);
        }
        m(2 * i1 + i4, 2 * i1 + j2) = acc;
      }
    }
  }
  return m;
}

std::vector<PureBranch> run_protocol_via_maps(const StateVector& input, const ChannelParams& channel,
                                              const SpinFlipOperator& flip) {
  if (!(input.reg() == input_register()) || !input.is_normalized()) {
    throw InvalidInput("run_protocol_via_maps: expected a normalized state on [1,2]");
  }
  std::vector<PureBranch> branches;
  branches.reserve(8);
  for (BellOutcome bell : kBellOutcomes) {
    for (BobOutcome bob : kBobOutcomes) {
      const CVector image = branch_map(channel, bell, bob) * input.amplitudes();
      const double prob = image.squaredNorm();
      StateVector post = prob < tol::kZeroProbability
                             ? StateVector::zero(output_register())
                             : StateVector(output_register(), image / std::sqrt(prob));
      const double c = pure_concurrence_or_zero(post, prob, flip);
      branches.push_back({bell, bob, prob, std::move(post), c});
    }
  }
  return branches;
}

// ---------------------------------------------------------------------------
// Mixed protocol

MixedProtocolResult run_protocol_mixed(const DensityMatrix& input, const ChannelParams& channel,
                                       const SpinFlipOperator& flip) {
  if (!(input.reg() == input_register())) {
    throw InvalidInput("run_protocol_mixed: input must live on [1,2], got " +
                       input.reg().to_string());
  }
  if (!input.is_normalized()) {
    throw InvalidInput("run_protocol_mixed: input trace is not 1");
  }
  input.check_physical();

  MixedProtocolResult result{input, channel, {}, 0.0};
  result.branches.reserve(8);
  for (BellOutcome bell : kBellOutcomes) {
    for (BobOutcome bob : kBobOutcomes) {
      const Eigen::Matrix4cd m = branch_map(channel, bell, bob);
      CMatrix out = m * input.entries() * m.adjoint();
      out = 0.5 * (out + out.adjoint()).eval();
      DensityMatrix unnormalized(output_register(), std::move(out));
      const double prob = unnormalized.trace();
      if (prob < tol::kZeroProbability) {
        result.branches.push_back({bell, bob, prob, unnormalized, unnormalized, 0.0});
        continue;
      }
      DensityMatrix post = unnormalized.normalized();
      const double c = concurrence_mixed(post, flip);
      result.branches.push_back({bell, bob, prob, std::move(post), std::move(unnormalized), c});
    }
  }
  for (const auto& br : result.branches) result.total_probability += br.probability;
  return result;
}

MixedProtocolResult run_protocol_mixed(const WernerParams& input, const ChannelParams& channel,
                                       const SpinFlipOperator& flip) {
  return run_protocol_mixed(werner(input), channel, flip);
}

}  // namespace wteleport
