#include "wteleport/analysis.hpp"

#include <cmath>
#include <string>

namespace wteleport {

namespace {

void check_alpha_n(double alpha, double n, const char* where) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw InvalidInput(std::string(where) + ": alpha must lie in [0, 1]");
  }
  if (!std::isfinite(n) || n <= 0.0) {
    throw InvalidInput(std::string(where) + ": n must be positive");
  }
}

constexpr double kBoundaryTolerance = 1e-12;

}  // namespace

double input_concurrence(double alpha) {
  check_alpha_n(alpha, 1.0, "input_concurrence");
  return 2.0 * alpha * std::sqrt(1.0 - alpha * alpha);
}

double predicted_concurrence_phi(double alpha, double n) {
  check_alpha_n(alpha, n, "predicted_concurrence_phi");
  const double a2 = alpha * alpha;
  return 2.0 * alpha * std::sqrt(n * (1.0 - a2)) / ((n - 1.0) * a2 + 1.0);
}

double predicted_concurrence_psi(double alpha, double n) {
  check_alpha_n(alpha, n, "predicted_concurrence_psi");
  const double b2 = 1.0 - alpha * alpha;
  const double beta = std::sqrt(b2);
  return 2.0 * beta * std::sqrt(n * (1.0 - b2)) / ((n - 1.0) * b2 + 1.0);
}

double predicted_concurrence_werner(double p, double n) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw InvalidInput("predicted_concurrence_werner: p must lie in [0, 1]");
  }
  if (!std::isfinite(n) || n <= 0.0) {
    throw InvalidInput("predicted_concurrence_werner: n must be positive");
  }
  if (p <= 1.0 / 3.0) return 0.0;
  return 4.0 * std::sqrt(n) * (3.0 * p - 1.0) / ((n + 1.0) * (n + 1.0));
}

double efficiency_ratio(double alpha_sq, double n) {
  if (!std::isfinite(alpha_sq) || alpha_sq < 0.0 || alpha_sq > 1.0) {
    throw InvalidInput("efficiency_ratio: alpha^2 must lie in [0, 1]");
  }
  check_alpha_n(0.0, n, "efficiency_ratio");
  return std::sqrt(n) / ((n - 1.0) * alpha_sq + 1.0);
}

StateIndependence state_independent_alpha_sq(double n) {
  if (!std::isfinite(n) || n <= 0.0) {
    throw InvalidInput("state_independent_alpha_sq: n must be positive");
  }
  return {1.0 / (std::sqrt(n) + 1.0), n == 1.0};
}

std::string_view to_string(Region r) {
  return r == Region::Preserving ? "PRESERVING" : "DEGRADED";
}

Region classify_region(double alpha_sq, double n) {
  if (!std::isfinite(alpha_sq) || alpha_sq <= 0.0 || alpha_sq >= 1.0) {
    throw InvalidInput("classify_region: alpha^2 must lie in (0, 1)");
  }
  if (!std::isfinite(n) || n <= 0.0) {
    throw InvalidInput("classify_region: n must be positive");
  }
  return efficiency_ratio(alpha_sq, n) < 1.0 - kBoundaryTolerance ? Region::Degraded
                                                                  : Region::Preserving;
}

double quartic(double n) {
  // Horner: n^4 + 4n^3 + 6n^2 - 60n + 1
  return (((n + 4.0) * n + 6.0) * n - 60.0) * n + 1.0;
}

QuarticReport quartic_roots() {
  QuarticReport report;
  const double r1 = bisect(quartic, 0.0, 0.1);
  const double r2 = bisect(quartic, 2.0, 3.0);
  report.roots_positive = {r1, r2};
  report.sign_regions = {
      {0.0, r1, quartic(0.5 * r1) > 0.0 ? 1 : -1},
      {r1, r2, quartic(0.5 * (r1 + r2)) > 0.0 ? 1 : -1},
      {r2, std::nullopt, quartic(r2 + 1.0) > 0.0 ? 1 : -1},
  };
  return report;
}

// ---------------------------------------------------------------------------
// Sweeps

std::string_view to_string(SweepMode m) { return m == SweepMode::Pure ? "pure" : "werner"; }

std::string_view to_string(Verdict v) { return v == Verdict::Match ? "MATCH" : "DISCREPANT"; }

std::vector<double> GridSpec::values() const {
  if (count < 1) throw InvalidInput("grid count must be at least 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw InvalidInput("grid bounds must be finite");
  if (start > stop) throw InvalidInput("grid start must not exceed stop");
  if (count == 1) return {start};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const double span = stop - start;
  for (int i = 0; i < count; ++i) {
    out.push_back(i == count - 1 ? stop : start + span * i / (count - 1));
  }
  return out;
}

ParameterGrid default_grid(SweepMode mode) {
  ParameterGrid g;
  g.n = {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0};
  if (mode == SweepMode::Pure) {
    for (int i = 1; i <= 19; ++i) g.second.push_back(i / 20.0);
  } else {
    for (int i = 0; i <= 10; ++i) g.second.push_back(i / 10.0);
  }
  return g;
}

namespace {

template <class Branch>
VerificationRow make_row(SweepMode mode, double n, double second, const Branch& br,
                         std::optional<double> formula) {
  VerificationRow row{};
  row.mode = mode;
  row.n = n;
  if (mode == SweepMode::Pure) {
    row.alpha_sq = second;
  } else {
    row.p = second;
  }
  row.bell = br.bell;
  row.bob = br.bob;
  row.probability = br.probability;
  row.oracle_concurrence = br.concurrence;
  row.formula_concurrence = formula;
  row.abs_diff = std::abs(br.concurrence - formula.value_or(0.0));
  row.verdict = row.abs_diff <= kMatchThreshold ? Verdict::Match : Verdict::Discrepant;
  return row;
}

}  // namespace

std::vector<VerificationRow> sweep(const ParameterGrid& grid, SweepMode mode,
                                   const SpinFlipOperator& flip) {
  if (grid.n.empty() || grid.second.empty()) {
    throw InvalidInput("sweep: grid must not be empty");
  }
  std::vector<VerificationRow> rows;
  rows.reserve(grid.n.size() * grid.second.size() * 8);
  for (double n : grid.n) {
    const ChannelParams channel(n);
    for (double second : grid.second) {
      if (mode == SweepMode::Pure) {
        const auto input = InputPairParams::from_alpha_sq(second);
        const auto result = run_protocol_pure(input, channel, flip);
        for (const auto& br : result.branches) {
          std::optional<double> formula;
          if (br.bob == BobOutcome::Zero) {
            formula = is_phi(br.bell) ? predicted_concurrence_phi(input.alpha(), n)
                                      : predicted_concurrence_psi(input.alpha(), n);
          }
          rows.push_back(make_row(mode, n, second, br, formula));
        }
      } else {
        const WernerParams params(second);
        const auto result = run_protocol_mixed(params, channel, flip);
        for (const auto& br : result.branches) {
          std::optional<double> formula;
          if (br.bob == BobOutcome::Zero) formula = predicted_concurrence_werner(second, n);
          rows.push_back(make_row(mode, n, second, br, formula));
        }
      }
    }
  }
  return rows;
}

}  // namespace wteleport
