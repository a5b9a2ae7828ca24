#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "isingql/app.hpp"
#include "isingql/config.hpp"
#include "isingql/errors.hpp"

namespace {

using namespace isingql;

struct SharedFlags {
  std::string config;
  int sites = 0;
  double coupling = 0.0;
  double field = 0.0;
  double dtau = 0.0;
  int steps = 0;
  long long shots = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  std::string mode;
  bool negate_h = false;
  std::string out;
  int jobs = 0;
  double readout = 0.0;
  double depol = 0.0;
  int layers = 0;
  std::vector<CLI::Option*> options;

  void attach(CLI::App* cmd) {
    options = {
        cmd->add_option("--config", config, "key = value config file with [sections]"),
        cmd->add_option("--sites", sites, "number of sites N"),
        cmd->add_option("--coupling", coupling, "coupling J"),
        cmd->add_option("--field", field, "transverse field h"),
        cmd->add_option("--dtau", dtau, "imaginary-time step"),
        cmd->add_option("--steps", steps, "imaginary-time steps"),
        cmd->add_option("--shots", shots, "shots per measured Pauli string"),
        cmd->add_option("--runs", runs, "repetitions for error bars"),
        cmd->add_option("--seed", seed, "base RNG seed"),
        cmd->add_option("--mode", mode, "exact | shots | shots+roem | shots+roem+richardson (qite: comma list)"),
        cmd->add_flag("--negate-h", negate_h, "evolve under -H"),
        cmd->add_option("--out", out, "output CSV path"),
        cmd->add_option("--jobs", jobs, "parallel plan entries"),
        cmd->add_option("--readout", readout, "symmetric readout error probability"),
        cmd->add_option("--depol", depol, "depolarizing error per layer"),
        cmd->add_option("--layers", layers, "circuit layers before measurement"),
    };
  }

  bool given(std::size_t i) const { return options[i]->count() > 0; }

  // Config file first, then explicit flags on top. `mode` is applied by the caller.
  app::RunConfig resolve() const {
    app::RunConfig cfg;
    if (given(0)) app::apply_config(config::load(config), cfg);
    if (given(1)) cfg.sites = sites;
    if (given(2)) cfg.coupling = coupling;
    if (given(3)) cfg.field = field;
    if (given(4)) cfg.qite.dtau = dtau;
    if (given(5)) cfg.qite.steps = steps;
    if (given(6)) cfg.qite.noise.shots = shots;
    if (given(7)) cfg.runs = runs;
    if (given(8)) cfg.seed = seed;
    if (given(10)) cfg.negate_h = true;
    if (given(11)) cfg.out = out;
    if (given(12)) cfg.jobs = jobs;
    if (given(13)) cfg.qite.noise.p01 = cfg.qite.noise.p10 = {readout};
    if (given(14)) cfg.qite.noise.depol = depol;
    if (given(15)) cfg.qite.noise.layers = layers;
    return cfg;
  }
};

std::vector<MeasureMode> parse_modes(const std::string& text) {
  std::vector<MeasureMode> modes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) modes.push_back(parse_measure_mode(item));
  return modes;
}

std::pair<std::string, std::string> parse_transition(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw Error(ErrorKind::Parse, "transition '" + text + "' must look like <from>:<to>");
  }
  return {text.substr(0, colon), text.substr(colon + 1)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"QITE and QLanczos spectra of the periodic transverse-field Ising chain"};
  cli.require_subcommand(1);

  SharedFlags spectrum_flags;
  std::string plan;
  std::string scan_out;
  auto* spectrum = cli.add_subcommand("spectrum", "assemble the full spectrum and compare against exact diagonalization");
  spectrum_flags.attach(spectrum);
  auto* plan_opt = spectrum->add_option("--plan", plan, "plan file with run/analytic directives");
  spectrum->add_option("--scan-out", scan_out, "scan diagnostics CSV (default: scan.csv next to --out)");

  SharedFlags qite_flags;
  std::string initial;
  auto* qite = cli.add_subcommand("qite", "imaginary-time trace from one initial state");
  qite_flags.attach(qite);
  qite->add_option("--initial", initial, "lib:<name> or comma list of [+|-]<bits>")->required();

  SharedFlags evolve_flags;
  app::EvolveOptions evolve_opts;
  std::vector<std::string> transitions;
  auto* evolve = cli.add_subcommand("evolve", "real-time observables from a spectrum");
  evolve_flags.attach(evolve);
  evolve->add_option("--transition", transitions, "transition probability <from>:<to>");
  evolve->add_option("--occupation", evolve_opts.occupations, "site occupations from an initial basis state");
  evolve->add_option("--site", evolve_opts.sites, "site index for --occupation (repeatable)");
  evolve->add_flag("--sites-all", evolve_opts.sites_all, "every site for --occupation");
  evolve->add_option("--magnetization", evolve_opts.magnetizations, "m_z from an initial basis state");
  evolve->add_option("--tmin", evolve_opts.grid.t_start, "first time sample");
  evolve->add_option("--tmax", evolve_opts.grid.t_end, "last time sample");
  evolve->add_option("--samples", evolve_opts.grid.samples, "number of time samples");
  evolve->add_option("--spectrum-file", evolve_opts.spectrum_file, "spectrum CSV; deviations vs exact are added");

  SharedFlags oracle_flags;
  auto* oracle = cli.add_subcommand("oracle", "exact diagonalization spectrum");
  oracle_flags.attach(oracle);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kExitOk : app::kExitInvalid;
  }

  return app::guarded(
      [&]() -> int {
        if (spectrum->parsed()) {
          auto cfg = spectrum_flags.resolve();
          if (spectrum_flags.given(9)) cfg.qite.mode = parse_measure_mode(spectrum_flags.mode);
          if (plan_opt->count() > 0) cfg.plan = plan;
          return app::cmd_spectrum(cfg, scan_out, std::cout);
        }
        if (qite->parsed()) {
          auto cfg = qite_flags.resolve();
          std::vector<MeasureMode> modes{cfg.qite.mode};
          if (qite_flags.given(9)) modes = parse_modes(qite_flags.mode);
          return app::cmd_qite(cfg, initial, modes, std::cout);
        }
        if (evolve->parsed()) {
          auto cfg = evolve_flags.resolve();
          for (const auto& t : transitions) evolve_opts.transitions.push_back(parse_transition(t));
          return app::cmd_evolve(cfg, evolve_opts, std::cout);
        }
        return app::cmd_oracle(oracle_flags.resolve(), std::cout);
      },
      std::cerr);
}
