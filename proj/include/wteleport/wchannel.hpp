#pragma once

// Entanglement teleportation through the |W_n> channel.
//
// Qubits 1,2 hold the input pair, 3,4,5 the channel. Alice measures (2,3) in
// the Bell basis, Bob measures 5 in the computational basis, and the output
// pair lives on (1,4). Every run enumerates all 4 x 2 outcomes.

#include <array>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wteleport/entanglement.hpp"
#include "wteleport/qcore.hpp"

namespace wteleport {

/// Input pair alpha|00> + beta|11>, beta = +sqrt(1 - alpha^2).
class InputPairParams {
 public:
  static InputPairParams from_alpha(double alpha);
  static InputPairParams from_alpha_sq(double alpha_sq);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double alpha_sq() const { return alpha_ * alpha_; }

 private:
  InputPairParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {}
  double alpha_;
  double beta_;
};

class ChannelParams {
 public:
  explicit ChannelParams(double n);
  double n() const { return n_; }

 private:
  double n_;
};

class WernerParams {
 public:
  explicit WernerParams(double p);
  double p() const { return p_; }

 private:
  double p_;
};

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };
enum class BobOutcome { Zero = 0, One = 1 };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes{
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus};
inline constexpr std::array<BobOutcome, 2> kBobOutcomes{BobOutcome::Zero, BobOutcome::One};

std::string_view to_string(BellOutcome b);
std::string_view to_string(BobOutcome b);

inline bool is_phi(BellOutcome b) {
  return b == BellOutcome::PhiPlus || b == BellOutcome::PhiMinus;
}

/// Registers used throughout the protocol.
const QubitRegister& input_register();    // [1,2]
const QubitRegister& channel_register();  // [3,4,5]
const QubitRegister& output_register();   // [1,4]

struct PureBranch {
  BellOutcome bell;
  BobOutcome bob;
  double probability;
  StateVector post_state;  // on [1,4]; zero sentinel when probability < 1e-14
  double concurrence;
};

struct MixedBranch {
  BellOutcome bell;
  BobOutcome bob;
  double probability;
  DensityMatrix post_state;    // normalized, on [1,4]; equals `unnormalized` when probability ~ 0
  DensityMatrix unnormalized;  // M rho M^dagger
  double concurrence;
};

template <class Branch, class Input>
struct ProtocolResult {
  Input input;
  ChannelParams channel;
  std::vector<Branch> branches;  // 8 entries, Bell-major order
  double total_probability;

  const Branch& branch(BellOutcome bell, BobOutcome bob) const {
    return branches.at(static_cast<std::size_t>(bell) * 2 + static_cast<std::size_t>(bob));
  }
};

using PureProtocolResult = ProtocolResult<PureBranch, InputPairParams>;
using MixedProtocolResult = ProtocolResult<MixedBranch, DensityMatrix>;

StateVector input_pair(const InputPairParams& params);

/// f(n)(|100> + sqrt(n)|010> + sqrt(n+1)|001>) on [3,4,5], f(n) = 1/sqrt(2+2n).
StateVector w_state(const ChannelParams& params);

/// p |Phi+><Phi+| + (1-p)/4 I on [1,2].
DensityMatrix werner(const WernerParams& params);

/// |input>_12 (x) |channel>_345.
StateVector compose_joint(const StateVector& input, const StateVector& channel);

/// Full five-qubit enumeration: Bell measurement on (2,3), then computational
/// measurement on 5.
PureProtocolResult run_protocol_pure(const InputPairParams& input, const ChannelParams& channel,
                                     const SpinFlipOperator& flip = SpinFlipOperator::standard());

/// Post-selected linear map from the input pair [1,2] to the unnormalized
/// output pair [1,4] for one (Bell, Bob) outcome.
Eigen::Matrix4cd branch_map(const ChannelParams& channel, BellOutcome bell, BobOutcome bob);

/// Same branches as run_protocol_pure, computed by applying the eight branch
/// maps to an arbitrary normalized two-qubit input on [1,2].
std::vector<PureBranch> run_protocol_via_maps(const StateVector& input, const ChannelParams& channel,
                                              const SpinFlipOperator& flip = SpinFlipOperator::standard());

/// Mixed input on [1,2] pushed through the eight branch maps.
MixedProtocolResult run_protocol_mixed(const DensityMatrix& input, const ChannelParams& channel,
                                       const SpinFlipOperator& flip = SpinFlipOperator::standard());

MixedProtocolResult run_protocol_mixed(const WernerParams& input, const ChannelParams& channel,
                                       const SpinFlipOperator& flip = SpinFlipOperator::standard());

}  // namespace wteleport
