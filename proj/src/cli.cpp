#include "hptoda/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hptoda/curve.hpp"
#include "hptoda/error.hpp"
#include "hptoda/genus1.hpp"
#include "hptoda/reduction.hpp"
#include "hptoda/reports.hpp"
#include "hptoda/spectral.hpp"
#include "hptoda/state_io.hpp"

namespace hptoda {

namespace {

const std::vector<std::string> kCommands = {"simulate", "invariants", "spectral", "lemmas", "theta", "reduce"};

struct Options {
  std::string state;
  int steps = -1;  // per-command default when negative
  std::string out;
  std::string radii = "1e2:1e8:12";
  std::string zeta = "1e2,1e4,1e6";
  int k = 3;
  double tol = 1e-5;
};

class Refusal : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

// Summary lines go to stdout when the report went to a file.
std::ostream& summary(const Options& o, std::ostream& out, std::ostream& err) {
  return o.out.empty() ? err : out;
}

std::string shape(const TodaState& s) {
  std::ostringstream os;
  os << "state has N = " << s.sites << ", M = " << s.depth << " (gcd " << gcd_int(s.sites, s.depth) << ")";
  return os.str();
}

std::vector<Rat> parse_zeta_list(const std::string& text) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error(ErrorKind::ParseError, "--zeta: empty entry");
    out.push_back(Rat::parse(item));
  }
  return out;
}

int run(const std::string& cmd, const Options& o, std::ostream& out, std::ostream& err) {
  const TodaState state = parse_state(o.state);
  if (cmd == "simulate") {
    const int steps = o.steps < 0 ? 25 : o.steps;
    emit(serialize_trajectory(evolve(state, steps)), o, out);
    summary(o, out, err) << "simulated " << steps << " steps; products conserved exactly\n";
  } else if (cmd == "invariants") {
    const int steps = o.steps < 0 ? 25 : o.steps;
    const auto report = invariant_report(evolve(state, steps));
    emit(invariants_csv(report), o, out);
    summary(o, out, err) << "verdict: " << (report.exact ? "exact" : "inexact") << " over " << steps << " steps\n";
    if (!report.exact) return kExitNumeric;
  } else if (cmd == "spectral") {
    emit(spectral_json(spectral_data(state)), o, out);
  } else if (cmd == "lemmas") {
    if (gcd_int(state.sites, state.depth) != 1)
      throw Refusal("boundary limits need gcd(N, M) = 1; " + shape(state));
    const auto lim = boundary_limits(state, RadiusSchedule::parse(o.radii), 0.3, o.tol);
    emit(boundary_csv(lim, state.sites), o, out);
    const int n = state.sites;
    summary(o, out, err) << "psi ratio " << decimal(lim.psi_ratio.real()) << " (I_N/I_1 = "
                         << decimal((state.I(0, n - 1) / state.I(0, 0)).to_double()) << "), phi ratio "
                         << decimal(lim.phi_ratio.real()) << " (V_{N-1}/V_N = "
                         << decimal((state.V(n - 2) / state.V(n - 1)).to_double()) << ")\n";
  } else if (cmd == "theta") {
    if (state.sites != 2 || state.depth != 1)
      throw Refusal("theta reconstruction needs N = 2, M = 1 (genus one, gcd(N, M) = 1); " + shape(state));
    const int steps = o.steps < 0 ? 8 : o.steps;
    const auto rep = reconstruct_and_verify(state, steps);
    emit(reconstruction_csv(rep), o, out);
    if (!o.out.empty()) {
      std::filesystem::path p(o.out);
      p.replace_extension(".periods.json");
      std::ofstream f(p);
      if (!f) throw std::runtime_error("cannot write " + p.string());
      f << periods_json(rep.model, rep.periods, rep.images) << '\n';
    }
    summary(o, out, err) << "omega " << decimal(rep.periods.omega.real()) << " + "
                         << decimal(rep.periods.omega.imag()) << "i; max relative error "
                         << decimal(rep.max_rel_err) << "; d spread " << decimal(rep.d_spread)
                         << "; d' spread " << decimal(rep.d_prime_spread) << "\n";
  } else if (cmd == "reduce") {
    const auto rep = zeta_sweep(state, parse_zeta_list(o.zeta), o.k);
    emit(zeta_csv(rep), o, out);
    summary(o, out, err) << "fitted slope " << decimal(rep.slope) << "; residuals "
                         << (rep.monotone ? "decrease monotonically" : "do not decrease monotonically") << "\n";
  }
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && args[0].front() != '-' &&
      std::find(kCommands.begin(), kCommands.end(), args[0]) == kCommands.end()) {
    err << "hptoda: unknown command '" << args[0] << "' (expected one of simulate, invariants, "
        << "spectral, lemmas, theta, reduce)\n";
    return kExitRefused;
  }

  CLI::App app{"Exact and numerical laboratory for the hungry periodic discrete Toda lattice", "hptoda"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--state", o.state, "state file (JSON)")->required();
    sub->add_option("--out", o.out, "report path (default: stdout)");
  };
  auto* sim = app.add_subcommand("simulate", "evolve and write the trajectory as JSON");
  auto* inv = app.add_subcommand("invariants", "spectral-curve coefficients at every step");
  auto* spec = app.add_subcommand("spectral", "curve F(x, y), genus, special points, E");
  auto* lem = app.add_subcommand("lemmas", "boundary limits of the eigenvector ratios at P and Q");
  auto* th = app.add_subcommand("theta", "theta-function reconstruction for N = 2, M = 1");
  auto* red = app.add_subcommand("reduce", "zeta-lift degeneration sweep");
  for (auto* sub : {sim, inv, spec, lem, th, red}) add_common(sub);
  for (auto* sub : {sim, inv, th}) sub->add_option("--steps", o.steps, "number of steps")->check(CLI::NonNegativeNumber);
  lem->add_option("--radii", o.radii, "radius schedule start:stop:count");
  lem->add_option("--tol", o.tol, "convergence tolerance of the extrapolated limits");
  red->add_option("--zeta", o.zeta, "comma-separated zeta values, e.g. 1e2,1e4,1e6");
  red->add_option("--k", o.k, "number of M-blocks checked")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hptoda: " << e.what() << "\n";
    return kExitRefused;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o, out, err);
  } catch (const Refusal& e) {
    err << "hptoda " << cmd << ": refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const Error& e) {
    err << "hptoda " << cmd << ": " << e.what() << "\n";
    return e.is_numeric() ? kExitNumeric : kExitRefused;
  } catch (const std::exception& e) {
    err << "hptoda " << cmd << ": " << e.what() << "\n";
    return kExitRefused;
  }
}

}  // namespace hptoda
