#pragma once

// Command-line front end: run | sweep | verify | roots.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical failure.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wteleport/analysis.hpp"

namespace wteleport::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumerical = 3 };

enum class OutputFormat { Table, Csv, Json };

/// A flag value: a scalar "x" or an inclusive grid "start:stop:count".
struct ParamSpec {
  std::string text;
  GridSpec grid;
  bool is_grid;
};

/// Throws InvalidInput on malformed text, count < 1 or start > stop.
ParamSpec parse_param(const std::string& text);

struct RunConfig {
  std::string subcommand;
  SweepMode mode = SweepMode::Pure;
  std::optional<ParamSpec> n;
  std::optional<ParamSpec> alpha_sq;
  std::optional<ParamSpec> p;
  OutputFormat format = OutputFormat::Table;
  std::optional<std::string> output_path;
  bool inject_spin_flip_fault = false;
};

inline constexpr std::string_view kSweepCsvHeader =
    "mode,n,alpha_sq,p,bell,bob,probability,oracle_concurrence,formula_concurrence,abs_diff,verdict";

/// Sweep rows as CSV with the fixed header above, LF line endings.
std::string sweep_csv(const std::vector<VerificationRow>& rows);

struct FamilyCount {
  SweepMode mode;
  std::string family;  // "Phi/Zero", "Psi/Zero", "*/One"
  int match = 0;
  int discrepant = 0;
};

struct SpotCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifySummary {
  std::vector<FamilyCount> counts;
  std::vector<SpotCheck> checks;
  std::vector<VerificationRow> discrepant_rows;
  bool pure_failed = false;
  std::optional<std::string> werner_error;

  int exit_code() const;
};

/// Runs the default pure and Werner grids plus the state-independence and
/// Bob-|1> spot checks. `flip` is the operator handed to every concurrence
/// evaluation.
VerifySummary run_verify(const SpinFlipOperator& flip = SpinFlipOperator::standard());

/// The standard operator with the sign of its |00><11| entry flipped.
SpinFlipOperator faulty_spin_flip();

/// Full command dispatch. `argv[0]` is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wteleport::cli
