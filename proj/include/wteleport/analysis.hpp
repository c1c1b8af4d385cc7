#pragma once

// Closed-form branch concurrences, the efficiency classification, the quartic
// channel condition, and sweeps that pair each closed form with the
// simulated value.

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "wteleport/entanglement.hpp"
#include "wteleport/wchannel.hpp"

namespace wteleport {

/// Verdict threshold for formula-vs-simulation rows.
inline constexpr double kMatchThreshold = 1e-8;

/// 2 alpha sqrt(1 - alpha^2), the concurrence of alpha|00> + beta|11>.
double input_concurrence(double alpha);

/// Output concurrence for (Phi+-, Zero): 2 alpha sqrt(n (1 - alpha^2)) / ((n - 1) alpha^2 + 1).
double predicted_concurrence_phi(double alpha, double n);

/// Output concurrence for (Psi+-, Zero): the Phi formula with alpha^2 -> beta^2.
double predicted_concurrence_psi(double alpha, double n);

/// Published Werner-input closed form: 4 sqrt(n)(3p - 1)/(n + 1)^2 for p > 1/3,
/// else 0. Returned as printed, without clamping to [0, 1]; it does not agree
/// with the simulated value except at n = 3 (and for p <= 1/3).
double predicted_concurrence_werner(double p, double n);

/// Efficiency ratio sqrt(n) / ((n - 1) alpha^2 + 1): output over input concurrence.
double efficiency_ratio(double alpha_sq, double n);

struct StateIndependence {
  double alpha_sq;
  bool any_alpha;  // true at n = 1: every input keeps its concurrence
};

/// alpha^2 = (sqrt(n) - 1)/(n - 1), evaluated as 1/(sqrt(n) + 1).
StateIndependence state_independent_alpha_sq(double n);

enum class Region { Preserving, Degraded };
std::string_view to_string(Region r);

/// Degraded iff the efficiency ratio is below 1 - 1e-12.
Region classify_region(double alpha_sq, double n);

double quartic(double n);

struct SignRegion {
  double lower;
  std::optional<double> upper;  // nullopt = +infinity
  int sign;                     // +1 or -1
};

struct QuarticReport {
  std::array<double, 5> coefficients{1.0, 4.0, 6.0, -60.0, 1.0};  // highest degree first
  std::vector<double> roots_positive;
  std::vector<SignRegion> sign_regions;
};

/// Bisection on the fixed brackets (0, 0.1) and (2, 3) to |dn| <= 1e-12.
QuarticReport quartic_roots();

/// Bisection for a sign change of `f` on [lo, hi]. Throws NumericalFailure when
/// the endpoints do not bracket a root or the iteration budget runs out.
template <class F>
double bisect(F&& f, double lo, double hi, double tolerance = 1e-12, int max_iter = 200) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericalFailure("bisect: endpoints do not bracket a sign change");
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0 || 0.5 * (hi - lo) <= tolerance) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  throw NumericalFailure("bisect: no convergence");
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepMode { Pure, Werner };
enum class Verdict { Match, Discrepant };

std::string_view to_string(SweepMode m);
std::string_view to_string(Verdict v);

/// Inclusive start:stop:count grid. count == 1 yields {start}.
struct GridSpec {
  double start;
  double stop;
  int count;

  static GridSpec single(double v) { return {v, v, 1}; }
  /// Throws InvalidInput for count < 1 or start > stop.
  std::vector<double> values() const;
};

struct ParameterGrid {
  std::vector<double> n;
  std::vector<double> second;  // alpha^2 for Pure, p for Werner
};

struct VerificationRow {
  SweepMode mode;
  double n;
  std::optional<double> alpha_sq;
  std::optional<double> p;
  BellOutcome bell;
  BobOutcome bob;
  double probability;
  double oracle_concurrence;
  std::optional<double> formula_concurrence;  // empty for (., One): compared against 0
  double abs_diff;
  Verdict verdict;
};

/// One row per (n, second, branch), ordered by n, then second, then branch.
std::vector<VerificationRow> sweep(const ParameterGrid& grid, SweepMode mode,
                                   const SpinFlipOperator& flip = SpinFlipOperator::standard());

/// Default sweep grids: n in {0.1, 0.25, 0.5, 1, 2, 4, 10}, alpha^2 in
/// {0.05, ..., 0.95}, p in {0, 0.1, ..., 1}.
ParameterGrid default_grid(SweepMode mode);

}  // namespace wteleport
