#include "wteleport/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

namespace wteleport::cli {

using nlohmann::json;

namespace {

constexpr double kSpotTolerance = 1e-10;
constexpr double kDeadTolerance = 1e-12;

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw InvalidInput("not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

int parse_count(std::string_view s) {
  int v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidInput("grid count must be an integer: '" + std::string(s) + "'");
  }
  return v;
}

// Shortest representation that parses back to the same double.
std::string num(double v) { return fmt::format("{}", v); }
std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string short_complex(Complex z) {
  if (std::abs(z.imag()) < 5e-7) return fmt::format("{:.6g}", z.real() == 0.0 ? 0.0 : z.real());
  return fmt::format("{:.6g}{:+.6g}i", z.real(), z.imag());
}

std::string full_complex(Complex z) { return fmt::format("{}{:+}j", z.real(), z.imag()); }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
  }
  return "table";
}

json config_json(const RunConfig& cfg) {
  json c;
  c["subcommand"] = cfg.subcommand;
  if (cfg.subcommand == "run" || cfg.subcommand == "sweep") {
    c["mode"] = to_string(cfg.mode);
    c["n"] = cfg.n ? json(cfg.n->text) : json(nullptr);
    c["alpha_sq"] = cfg.alpha_sq ? json(cfg.alpha_sq->text) : json(nullptr);
    c["p"] = cfg.p ? json(cfg.p->text) : json(nullptr);
  }
  c["format"] = format_name(cfg.format);
  return c;
}

std::string family_of(const VerificationRow& row) {
  if (row.bob == BobOutcome::One) return "*/One";
  return is_phi(row.bell) ? "Phi/Zero" : "Psi/Zero";
}

json row_json(const VerificationRow& r) {
  return json{{"mode", to_string(r.mode)},
              {"n", r.n},
              {"alpha_sq", optional_json(r.alpha_sq)},
              {"p", optional_json(r.p)},
              {"bell", to_string(r.bell)},
              {"bob", to_string(r.bob)},
              {"probability", r.probability},
              {"oracle_concurrence", r.oracle_concurrence},
              {"formula_concurrence", optional_json(r.formula_concurrence)},
              {"abs_diff", r.abs_diff},
              {"verdict", to_string(r.verdict)}};
}

// ---------------------------------------------------------------------------
// run

void require_scalar(const std::optional<ParamSpec>& spec, const char* flag) {
  if (!spec) throw InvalidInput(std::string("missing required flag ") + flag);
  if (spec->is_grid) throw InvalidInput(std::string(flag) + " takes a scalar for 'run'");
}

void check_mode_params(const RunConfig& cfg) {
  if (!cfg.n) throw InvalidInput("missing required flag --n");
  if (cfg.mode == SweepMode::Pure) {
    if (cfg.p) throw InvalidInput("--p is only valid with --mode werner");
    if (!cfg.alpha_sq) throw InvalidInput("--mode pure requires --alpha-sq");
  } else {
    if (cfg.alpha_sq) throw InvalidInput("--alpha-sq is only valid with --mode pure");
    if (!cfg.p) throw InvalidInput("--mode werner requires --p");
  }
}

const ParamSpec& second_param(const RunConfig& cfg) {
  return cfg.mode == SweepMode::Pure ? *cfg.alpha_sq : *cfg.p;
}

std::string cmd_run(const RunConfig& cfg) {
  check_mode_params(cfg);
  require_scalar(cfg.n, "--n");
  require_scalar(cfg.mode == SweepMode::Pure ? cfg.alpha_sq : cfg.p,
                 cfg.mode == SweepMode::Pure ? "--alpha-sq" : "--p");
  const ChannelParams channel(cfg.n->grid.start);
  const double second = second_param(cfg).grid.start;
  const std::string mode_name(to_string(cfg.mode));
  const std::string alpha_field = cfg.mode == SweepMode::Pure ? num(second) : "";
  const std::string p_field = cfg.mode == SweepMode::Werner ? num(second) : "";

  std::ostringstream os;
  json rows = json::array();

  auto emit = [&](BellOutcome bell, BobOutcome bob, double prob, double conc,
                  const CMatrix& entries, bool is_vector, const CMatrix* unnormalized) {
    switch (cfg.format) {
      case OutputFormat::Table: {
        os << fmt::format("{:<9} {:<5} {:<12.6f} {:.6f}", to_string(bell), to_string(bob), prob,
                          conc);
        if (is_vector) {
          os << "     ";
          std::string amps;
          for (Eigen::Index i = 0; i < entries.size(); ++i) {
            if (i) amps += ", ";
            amps += short_complex(entries(i));
          }
          os << "[" << amps << "]\n";
        } else {
          os << "\n";
          for (Eigen::Index i = 0; i < entries.rows(); ++i) {
            std::string line;
            for (Eigen::Index j = 0; j < entries.cols(); ++j) {
              line += fmt::format("{:>12}", short_complex(entries(i, j)));
            }
            os << "    " << line << "\n";
          }
        }
        break;
      }
      case OutputFormat::Csv: {
        std::string state;
        for (Eigen::Index i = 0; i < entries.rows(); ++i) {
          for (Eigen::Index j = 0; j < entries.cols(); ++j) {
            if (!state.empty()) state += ' ';
            state += full_complex(entries(i, j));
          }
        }
        os << fmt::format("{},{},{},{},{},{},{},{},{}\n", mode_name, num(channel.n()), alpha_field,
                          p_field, to_string(bell), to_string(bob), num(prob), num(conc), state);
        break;
      }
      case OutputFormat::Json: {
        json r{{"bell", to_string(bell)},
               {"bob", to_string(bob)},
               {"probability", prob},
               {"concurrence", conc}};
        if (is_vector) {
          json amps = json::array();
          for (Eigen::Index i = 0; i < entries.size(); ++i) amps.push_back(complex_json(entries(i)));
          r["post_state"] = std::move(amps);
        } else {
          r["post_state"] = matrix_json(entries);
          if (unnormalized) r["unnormalized"] = matrix_json(*unnormalized);
        }
        rows.push_back(std::move(r));
        break;
      }
    }
  };

  if (cfg.format == OutputFormat::Table) {
    os << fmt::format("# mode={} n={} {}={}\n", mode_name, num(channel.n()),
                      cfg.mode == SweepMode::Pure ? "alpha_sq" : "p", num(second));
    os << fmt::format("{:<9} {:<5} {:<12} {:<12} {}\n", "bell", "bob", "probability",
                      "concurrence", "post_state[1,4]");
  } else if (cfg.format == OutputFormat::Csv) {
    os << "mode,n,alpha_sq,p,bell,bob,probability,concurrence,post_state\n";
  }

  double total = 0.0;
  if (cfg.mode == SweepMode::Pure) {
    const auto result = run_protocol_pure(InputPairParams::from_alpha_sq(second), channel);
    total = result.total_probability;
    for (const auto& br : result.branches) {
      emit(br.bell, br.bob, br.probability, br.concurrence, br.post_state.amplitudes(), true,
           nullptr);
    }
  } else {
    const auto result = run_protocol_mixed(WernerParams(second), channel);
    total = result.total_probability;
    for (const auto& br : result.branches) {
      emit(br.bell, br.bob, br.probability, br.concurrence, br.post_state.entries(), false,
           &br.unnormalized.entries());
    }
  }

  if (cfg.format == OutputFormat::Json) {
    json doc{{"config", config_json(cfg)},
             {"rows", std::move(rows)},
             {"summary", {{"branches", 8}, {"total_probability", total}}}};
    os << doc.dump(2) << "\n";
  } else if (cfg.format == OutputFormat::Table) {
    os << fmt::format("# total probability {:.12f}\n", total);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// sweep

std::string cmd_sweep(const RunConfig& cfg) {
  check_mode_params(cfg);
  const ParamSpec& second = second_param(cfg);
  if (!cfg.n->is_grid && !second.is_grid) {
    throw InvalidInput("sweep needs at least one grid parameter (start:stop:count)");
  }
  ParameterGrid grid{cfg.n->grid.values(), second.grid.values()};
  const auto rows = sweep(grid, cfg.mode);

  switch (cfg.format) {
    case OutputFormat::Csv:
      return sweep_csv(rows);
    case OutputFormat::Json: {
      json jrows = json::array();
      int match = 0;
      for (const auto& r : rows) {
        jrows.push_back(row_json(r));
        match += r.verdict == Verdict::Match;
      }
      json doc{{"config", config_json(cfg)},
               {"rows", std::move(jrows)},
               {"summary",
                {{"rows", rows.size()},
                 {"match", match},
                 {"discrepant", static_cast<int>(rows.size()) - match}}}};
      return doc.dump(2) + "\n";
    }
    case OutputFormat::Table: {
      std::ostringstream os;
      const char* second_name = cfg.mode == SweepMode::Pure ? "alpha_sq" : "p";
      os << fmt::format("{:<8} {:<8} {:<9} {:<5} {:<12} {:<12} {:<12} {:<10} {}\n", "n",
                        second_name, "bell", "bob", "probability", "oracle", "formula", "abs_diff",
                        "verdict");
      for (const auto& r : rows) {
        const double s = r.alpha_sq ? *r.alpha_sq : *r.p;
        const std::string formula =
            r.formula_concurrence ? fmt::format("{:.6f}", *r.formula_concurrence) : "-";
        os << fmt::format("{:<8.6g} {:<8.6g} {:<9} {:<5} {:<12.6f} {:<12.6f} {:<12} {:<10.3g} {}\n",
                          r.n, s, to_string(r.bell), to_string(r.bob), r.probability,
                          r.oracle_concurrence, formula, r.abs_diff, to_string(r.verdict));
      }
      return os.str();
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// verify

std::string cmd_verify(const RunConfig& cfg, const VerifySummary& summary) {
  std::ostringstream os;
  switch (cfg.format) {
    case OutputFormat::Json: {
      json counts = json::array();
      for (const auto& c : summary.counts) {
        counts.push_back({{"mode", to_string(c.mode)},
                          {"family", c.family},
                          {"match", c.match},
                          {"discrepant", c.discrepant}});
      }
      json checks = json::array();
      for (const auto& c : summary.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      json discrepant = json::array();
      for (const auto& r : summary.discrepant_rows) discrepant.push_back(row_json(r));
      json doc{{"config", config_json(cfg)},
               {"rows", std::move(counts)},
               {"summary",
                {{"checks", std::move(checks)},
                 {"discrepant_rows", std::move(discrepant)},
                 {"werner_error", summary.werner_error ? json(*summary.werner_error) : json(nullptr)},
                 {"exit_code", summary.exit_code()}}}};
      os << doc.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv: {
      os << "mode,family,match,discrepant\n";
      for (const auto& c : summary.counts) {
        os << fmt::format("{},{},{},{}\n", to_string(c.mode), c.family, c.match, c.discrepant);
      }
      break;
    }
    case OutputFormat::Table: {
      os << fmt::format("{:<7} {:<9} {:>6} {:>11}\n", "mode", "family", "MATCH", "DISCREPANT");
      for (const auto& c : summary.counts) {
        os << fmt::format("{:<7} {:<9} {:>6} {:>11}\n", to_string(c.mode), c.family, c.match,
                          c.discrepant);
      }
      os << "\nchecks:\n";
      for (const auto& c : summary.checks) {
        os << fmt::format("  [{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
      }
      if (summary.werner_error) os << "\nwerner sweep aborted: " << *summary.werner_error << "\n";
      if (!summary.discrepant_rows.empty()) {
        os << "\ndiscrepant rows (first 12):\n";
        const std::size_t shown = std::min<std::size_t>(12, summary.discrepant_rows.size());
        for (std::size_t i = 0; i < shown; ++i) {
          const auto& r = summary.discrepant_rows[i];
          os << fmt::format("  {} n={} {}={} {}/{} oracle={:.9f} formula={:.9f}\n", to_string(r.mode),
                            r.n, r.alpha_sq ? "alpha_sq" : "p", r.alpha_sq ? *r.alpha_sq : *r.p,
                            to_string(r.bell), to_string(r.bob), r.oracle_concurrence,
                            r.formula_concurrence.value_or(0.0));
        }
        if (summary.discrepant_rows.size() > shown) {
          os << fmt::format("  ... {} more\n", summary.discrepant_rows.size() - shown);
        }
      }
      os << "\nresult: "
         << (summary.exit_code() == kOk
                 ? "PASS (Werner closed-form discrepancies are reported, not failed)"
                 : summary.exit_code() == kVerificationFailed ? "FAIL" : "NUMERICAL FAILURE")
         << "\n";
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// roots

std::string cmd_roots(const RunConfig& cfg) {
  const QuarticReport report = quartic_roots();
  std::ostringstream os;
  auto region_text = [](const SignRegion& r) {
    return fmt::format("({:.12g}, {})", r.lower, r.upper ? fmt::format("{:.12g}", *r.upper) : "inf");
  };
  switch (cfg.format) {
    case OutputFormat::Json: {
      json rows = json::array();
      for (std::size_t i = 0; i < report.roots_positive.size(); ++i) {
        const double r = report.roots_positive[i];
        rows.push_back({{"index", i + 1}, {"root", r}, {"quartic", quartic(r)}});
      }
      json regions = json::array();
      for (const auto& r : report.sign_regions) {
        regions.push_back({{"lower", r.lower},
                           {"upper", r.upper ? json(*r.upper) : json(nullptr)},
                           {"sign", r.sign},
                           {"satisfies_inequality", r.sign > 0}});
      }
      json doc{{"config", config_json(cfg)},
               {"rows", std::move(rows)},
               {"summary", {{"coefficients", report.coefficients}, {"sign_regions", std::move(regions)}}}};
      os << doc.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv: {
      os << "index,root,quartic\n";
      for (std::size_t i = 0; i < report.roots_positive.size(); ++i) {
        const double r = report.roots_positive[i];
        os << fmt::format("{},{},{}\n", i + 1, num(r), num(quartic(r)));
      }
      break;
    }
    case OutputFormat::Table: {
      os << "n^4 + 4n^3 + 6n^2 - 60n + 1 >= 0\n";
      for (std::size_t i = 0; i < report.roots_positive.size(); ++i) {
        const double r = report.roots_positive[i];
        os << fmt::format("r{} = {:.12g}   q(r{}) = {:.3g}\n", i + 1, r, i + 1, quartic(r));
      }
      for (const auto& r : report.sign_regions) {
        os << fmt::format("{:<40} sign {}  {}\n", region_text(r), r.sign > 0 ? '+' : '-',
                          r.sign > 0 ? "satisfies" : "violates");
      }
      break;
    }
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Public helpers

ParamSpec parse_param(const std::string& text) {
  std::vector<std::string_view> parts;
  std::string_view rest(text);
  while (true) {
    const auto pos = rest.find(':');
    parts.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (parts.size() == 1) {
    return {text, GridSpec::single(parse_double(parts[0])), false};
  }
  if (parts.size() != 3) {
    throw InvalidInput("expected a number or start:stop:count, got '" + text + "'");
  }
  GridSpec grid{parse_double(parts[0]), parse_double(parts[1]), parse_count(parts[2])};
  grid.values();  // validates
  return {text, grid, true};
}

std::string sweep_csv(const std::vector<VerificationRow>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.mode), num(r.n),
                       num(r.alpha_sq), num(r.p), to_string(r.bell), to_string(r.bob),
                       num(r.probability), num(r.oracle_concurrence), num(r.formula_concurrence),
                       num(r.abs_diff), to_string(r.verdict));
  }
  return out;
}

int VerifySummary::exit_code() const {
  if (pure_failed) return kVerificationFailed;
  if (werner_error) return kNumerical;
  return kOk;
}

SpinFlipOperator faulty_spin_flip() {
  Eigen::Matrix4cd m = SpinFlipOperator::standard().matrix();
  m(0, 3) = -m(0, 3);
  return SpinFlipOperator::from_matrix(m);
}

VerifySummary run_verify(const SpinFlipOperator& flip) {
  VerifySummary summary;
  std::map<std::pair<SweepMode, std::string>, FamilyCount> counts;
  auto tally = [&](const std::vector<VerificationRow>& rows) {
    for (const auto& r : rows) {
      auto& c = counts[{r.mode, family_of(r)}];
      c.mode = r.mode;
      c.family = family_of(r);
      (r.verdict == Verdict::Match ? c.match : c.discrepant) += 1;
      if (r.verdict == Verdict::Discrepant) summary.discrepant_rows.push_back(r);
    }
  };
  auto max_dead = [](const std::vector<VerificationRow>& rows) {
    double worst = 0.0;
    for (const auto& r : rows) {
      if (r.bob == BobOutcome::One) worst = std::max(worst, r.oracle_concurrence);
    }
    return worst;
  };

  const auto pure_rows = sweep(default_grid(SweepMode::Pure), SweepMode::Pure, flip);
  tally(pure_rows);
  const bool pure_rows_ok = std::all_of(pure_rows.begin(), pure_rows.end(), [](const auto& r) {
    return r.verdict == Verdict::Match;
  });

  // n = 1 keeps every input's concurrence.
  {
    double worst = 0.0;
    for (double a2 : default_grid(SweepMode::Pure).second) {
      const auto input = InputPairParams::from_alpha_sq(a2);
      const auto res = run_protocol_pure(input, ChannelParams(1.0), flip);
      for (BellOutcome b : {BellOutcome::PhiPlus, BellOutcome::PhiMinus}) {
        worst = std::max(worst, std::abs(res.branch(b, BobOutcome::Zero).concurrence -
                                         input_concurrence(input.alpha())));
      }
    }
    summary.checks.push_back({"state-independent channel n=1", worst <= kSpotTolerance,
                              fmt::format("max |C_out - C_in| = {:.3g} over alpha_sq grid", worst)});
  }
  // n != 1 keeps it only at alpha^2 = 1/(sqrt(n) + 1).
  {
    double worst = 0.0;
    for (double n : {0.25, 0.5, 2.0, 4.0, 9.0}) {
      const auto input = InputPairParams::from_alpha_sq(state_independent_alpha_sq(n).alpha_sq);
      const auto res = run_protocol_pure(input, ChannelParams(n), flip);
      worst = std::max(worst, std::abs(res.branch(BellOutcome::PhiPlus, BobOutcome::Zero).concurrence -
                                       input_concurrence(input.alpha())));
    }
    summary.checks.push_back({"state-dependent channels n in {0.25,0.5,2,4,9}",
                              worst <= kSpotTolerance,
                              fmt::format("max |C_out - C_in| = {:.3g}", worst)});
  }
  {
    const double worst = max_dead(pure_rows);
    summary.checks.push_back({"Bob |1> branches dead (pure)", worst < kDeadTolerance,
                              fmt::format("max concurrence {:.3g}", worst)});
  }

  try {
    const auto werner_rows = sweep(default_grid(SweepMode::Werner), SweepMode::Werner, flip);
    tally(werner_rows);
    const double worst = max_dead(werner_rows);
    summary.checks.push_back({"Bob |1> branches dead (werner)", worst < kDeadTolerance,
                              fmt::format("max concurrence {:.3g}", worst)});
  } catch (const InvalidInput& e) {
    summary.werner_error = e.what();
  } catch (const NumericalFailure& e) {
    summary.werner_error = e.what();
  }

  for (SweepMode mode : {SweepMode::Pure, SweepMode::Werner}) {
    for (const char* family : {"Phi/Zero", "Psi/Zero", "*/One"}) {
      if (auto it = counts.find({mode, family}); it != counts.end()) summary.counts.push_back(it->second);
    }
  }
  summary.pure_failed = !pure_rows_ok || std::any_of(summary.checks.begin(), summary.checks.end(),
                                                     [](const SpotCheck& c) { return !c.passed; });
  return summary;
}

// ---------------------------------------------------------------------------
// Dispatch

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement teleportation through the |W_n> channel"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode_text;
  std::string n_text, alpha_text, p_text;
  std::string format_text = "table";
  std::string output_text;

  const std::map<std::string, SweepMode> modes{{"pure", SweepMode::Pure}, {"werner", SweepMode::Werner}};
  const std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::Table}, {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--output", output_text, "Write output to this file instead of stdout");
  };
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--mode", mode_text, "pure or werner")
        ->required()
        ->check(CLI::IsMember({"pure", "werner"}));
    sub->add_option("--n", n_text, "Channel parameter: value or start:stop:count")->required();
    sub->add_option("--alpha-sq", alpha_text, "Input alpha^2 (pure mode)");
    sub->add_option("--p", p_text, "Werner weight p (werner mode)");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Enumerate all eight branches for one parameter point");
  add_params(run_cmd);
  add_common(run_cmd);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Closed form vs simulation over a grid");
  add_params(sweep_cmd);
  add_common(sweep_cmd);
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the default verification grids");
  add_common(verify_cmd);
  // Harness self-test: corrupts sigma_y (x) sigma_y so verification must fail.
  verify_cmd->add_flag("--inject-spin-flip-fault", cfg.inject_spin_flip_fault)->group("");
  CLI::App* roots_cmd = app.add_subcommand("roots", "Positive roots of the quartic channel condition");
  add_common(roots_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    cfg.format = formats.at(format_text);
    if (!output_text.empty()) cfg.output_path = output_text;
    if (!mode_text.empty()) cfg.mode = modes.at(mode_text);
    if (!n_text.empty()) cfg.n = parse_param(n_text);
    if (!alpha_text.empty()) cfg.alpha_sq = parse_param(alpha_text);
    if (!p_text.empty()) cfg.p = parse_param(p_text);

    std::string text;
    int code = kOk;
    if (sub == run_cmd) {
      text = cmd_run(cfg);
    } else if (sub == sweep_cmd) {
      text = cmd_sweep(cfg);
    } else if (sub == verify_cmd) {
      const VerifySummary summary =
          run_verify(cfg.inject_spin_flip_fault ? faulty_spin_flip() : SpinFlipOperator::standard());
      text = cmd_verify(cfg, summary);
      code = summary.exit_code();
    } else {
      text = cmd_roots(cfg);
    }

    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path, std::ios::binary);
      if (!file) {
        err << "error: cannot open output file " << *cfg.output_path << "\n";
        return kUsage;
      }
      file << text;
    } else {
      out << text;
    }
    return code;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidBasis& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace wteleport::cli
