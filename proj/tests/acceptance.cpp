// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "wteleport/analysis.hpp"
#include "wteleport/cli.hpp"
#include "wteleport/entanglement.hpp"
#include "wteleport/wchannel.hpp"

using namespace wteleport;

namespace {

const std::vector<double> kN{0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0};

std::vector<double> alpha_sq_grid() {
  std::vector<double> out;
  for (int i = 1; i <= 19; ++i) out.push_back(i / 20.0);
  return out;
}

std::vector<double> p_grid(int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(static_cast<double>(i) / (count - 1));
  return out;
}

// Reference closed forms, written out here rather than taken from the library.
double phi_zero_reference(double a2, double n) {
  return 2.0 * std::sqrt(a2) * std::sqrt(n * (1.0 - a2)) / ((n - 1.0) * a2 + 1.0);
}

double psi_zero_reference(double a2, double n) { return phi_zero_reference(1.0 - a2, n); }

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("%s  %2d  %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  if (!ok) ++failures;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

void criterion_zero_branches(int id, bool phi) {
  double worst = 0.0;
  for (double n : kN) {
    for (double a2 : alpha_sq_grid()) {
      const auto r = run_protocol_pure(InputPairParams::from_alpha_sq(a2), ChannelParams(n));
      const double expected = phi ? phi_zero_reference(a2, n) : psi_zero_reference(a2, n);
      for (BellOutcome b : kBellOutcomes) {
        if (is_phi(b) != phi) continue;
        worst = std::max(worst, std::abs(r.branch(b, BobOutcome::Zero).concurrence - expected));
      }
    }
  }
  report(id, worst <= 1e-10,
         std::string(phi ? "(Phi+-, Zero)" : "(Psi+-, Zero)") + " concurrence vs closed form over 133 points, max diff " +
             sci(worst));
}

void criterion_observation_one() {
  double worst = 0.0;
  for (double a2 : alpha_sq_grid()) {
    const auto r = run_protocol_pure(InputPairParams::from_alpha_sq(a2), ChannelParams(1.0));
    const double input = 2.0 * std::sqrt(a2) * std::sqrt(1.0 - a2);
    for (BellOutcome b : {BellOutcome::PhiPlus, BellOutcome::PhiMinus}) {
      worst = std::max(worst, std::abs(r.branch(b, BobOutcome::Zero).concurrence - input));
    }
  }
  for (auto [n, a2] : {std::pair{4.0, 1.0 / 3.0}, std::pair{9.0, 1.0 / 4.0}}) {
    const auto r = run_protocol_pure(InputPairParams::from_alpha_sq(a2), ChannelParams(n));
    const double input = 2.0 * std::sqrt(a2) * std::sqrt(1.0 - a2);
    for (BellOutcome b : {BellOutcome::PhiPlus, BellOutcome::PhiMinus}) {
      worst = std::max(worst, std::abs(r.branch(b, BobOutcome::Zero).concurrence - input));
    }
  }
  report(3, worst <= 1e-10, "output equals input concurrence at n=1 and at (n=4, 1/3), (n=9, 1/4), max diff " + sci(worst));
}

void criterion_deadness() {
  double worst = 0.0;
  for (double n : kN) {
    for (double a2 : alpha_sq_grid()) {
      const auto r = run_protocol_pure(InputPairParams::from_alpha_sq(a2), ChannelParams(n));
      for (const auto& br : r.branches)
        if (br.bob == BobOutcome::One) worst = std::max(worst, br.concurrence);
    }
    for (double p : p_grid(11)) {
      const auto r = run_protocol_mixed(WernerParams(p), ChannelParams(n));
      for (const auto& br : r.branches)
        if (br.bob == BobOutcome::One) worst = std::max(worst, br.concurrence);
    }
  }
  report(4, worst < 1e-12, "(*, One) branches on pure and Werner grids, max concurrence " + sci(worst));
}

void criterion_probability() {
  double worst_total = 0.0;
  double worst_kraus = 0.0;
  for (double n : kN) {
    for (double a2 : alpha_sq_grid()) {
      const auto params = InputPairParams::from_alpha_sq(a2);
      const auto full = run_protocol_pure(params, ChannelParams(n));
      worst_total = std::max(worst_total, std::abs(full.total_probability - 1.0));
      const auto maps = run_protocol_via_maps(input_pair(params), ChannelParams(n));
      for (std::size_t i = 0; i < 8; ++i) {
        const auto& a = full.branches[i];
        const auto& b = maps[i];
        worst_kraus = std::max(worst_kraus, std::abs(a.probability - b.probability));
        worst_kraus = std::max(worst_kraus, std::abs(a.concurrence - b.concurrence));
        const CVector da = std::sqrt(a.probability) * a.post_state.amplitudes();
        const CVector db = std::sqrt(b.probability) * b.post_state.amplitudes();
        worst_kraus = std::max(worst_kraus, (da - db).cwiseAbs().maxCoeff());
      }
    }
    for (double p : p_grid(11)) {
      const auto r = run_protocol_mixed(WernerParams(p), ChannelParams(n));
      worst_total = std::max(worst_total, std::abs(r.total_probability - 1.0));
    }
  }
  report(5, worst_total <= 1e-12 && worst_kraus <= 1e-10,
         "branch probabilities sum to 1 (max dev " + sci(worst_total) + "), branch maps vs enumeration max diff " +
             sci(worst_kraus));
}

void criterion_werner_baseline() {
  double worst = 0.0;
  for (double p : p_grid(101)) {
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    worst = std::max(worst, std::abs(concurrence_mixed(werner(WernerParams(p))) - expected));
  }
  report(6, worst <= 1e-10, "Werner concurrence vs max(0, (3p-1)/2) over 101 p, max diff " + sci(worst));
}

void criterion_werner_protocol() {
  double worst_value = 0.0;
  double worst_cases = 0.0;
  for (double p : p_grid(101)) {
    const auto r = run_protocol_mixed(WernerParams(p), ChannelParams(1.0));
    for (BellOutcome b : kBellOutcomes) {
      const double c = r.branch(b, BobOutcome::Zero).concurrence;
      if (p > 1.0 / 3.0) worst_value = std::max(worst_value, std::abs(c - (3.0 * p - 1.0) / 2.0));
    }
    worst_cases = std::max(worst_cases, std::abs(r.branch(BellOutcome::PhiPlus, BobOutcome::Zero).concurrence -
                                                 r.branch(BellOutcome::PsiPlus, BobOutcome::Zero).concurrence));
    worst_cases = std::max(worst_cases, std::abs(r.branch(BellOutcome::PhiMinus, BobOutcome::Zero).concurrence -
                                                 r.branch(BellOutcome::PsiMinus, BobOutcome::Zero).concurrence));
  }
  report(7, worst_value <= 1e-9 && worst_cases <= 1e-10,
         "Werner through n=1 channel gives (3p-1)/2 (max diff " + sci(worst_value) + "), Phi vs Psi max diff " +
             sci(worst_cases));
}

void criterion_discrepancy() {
  const auto summary = cli::run_verify();
  bool listed = false;
  for (const auto& row : summary.discrepant_rows) {
    if (row.mode == SweepMode::Werner && row.n == 1.0 && row.p && *row.p == 1.0 && row.bob == BobOutcome::Zero &&
        std::abs(row.oracle_concurrence - 1.0) < 1e-10 && row.formula_concurrence &&
        std::abs(*row.formula_concurrence - 2.0) < 1e-12 && row.verdict == Verdict::Discrepant) {
      listed = true;
    }
  }
  const char* args[] = {"wteleport", "verify"};
  const char* faulty[] = {"wteleport", "verify", "--inject-spin-flip-fault"};
  std::ostringstream sink;
  const int clean = cli::run(2, args, sink, sink);
  const int mutated = cli::run(3, faulty, sink, sink);
  report(8, listed && !summary.pure_failed && clean == 0 && mutated == 1,
         "n=1 p=1 listed DISCREPANT (formula 2 vs oracle 1): " + std::string(listed ? "yes" : "no") +
             ", verify exit " + std::to_string(clean) + ", with sign-flipped operator exit " +
             std::to_string(mutated));
}

void criterion_quartic() {
  const auto rep = quartic_roots();
  bool ok = rep.roots_positive.size() == 2;
  if (ok) {
    const double r1 = rep.roots_positive[0];
    const double r2 = rep.roots_positive[1];
    ok = std::abs(quartic(r1)) <= 1e-8 && std::abs(quartic(r2)) <= 1e-8 && r1 > 0.0 && r1 < 0.1 && r2 > 2.0 &&
         r2 < 3.0;
  }
  ok = ok && quartic(1.0) == -48.0;
  ok = ok && rep.sign_regions.size() == 3 && rep.sign_regions[0].sign == 1 && rep.sign_regions[1].sign == -1 &&
       rep.sign_regions[2].sign == 1;
  std::string roots;
  for (double r : rep.roots_positive) roots += " " + std::to_string(r);
  report(9, ok, "quartic roots" + roots + ", quartic(1) = " + std::to_string(quartic(1.0)) + ", signs (+, -, +)");
}

void criterion_unimodal() {
  bool ok = true;
  for (double n : kN) {
    int changes = 0;
    int last = 0;
    double prev = phi_zero_reference(0.01, n);
    for (int i = 2; i <= 99; ++i) {
      const double cur = phi_zero_reference(i / 100.0, n);
      const double d = cur - prev;
      const int s = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
      if (s != 0) {
        if (last != 0 && s != last) ++changes;
        last = s;
      }
      prev = cur;
    }
    ok = ok && changes == 1 && last == -1;
  }
  report(10, ok, "output concurrence rises then falls in alpha^2 for every grid n");
}

}  // namespace

int main() {
  criterion_zero_branches(1, true);
  criterion_zero_branches(2, false);
  criterion_observation_one();
  criterion_deadness();
  criterion_probability();
  criterion_werner_baseline();
  criterion_werner_protocol();
  criterion_discrepancy();
  criterion_quartic();
  criterion_unimodal();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
