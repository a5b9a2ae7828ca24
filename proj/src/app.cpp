#include "isingql/app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "isingql/csv.hpp"
#include "isingql/errors.hpp"
#include "isingql/oracle.hpp"
#include "isingql/pipeline.hpp"
#include "isingql/state.hpp"

namespace isingql::app {

RunConfig::RunConfig() { qite.noise.shots = 8192; }

void RunConfig::validate() const {
  if (sites < 2 || sites > kMaxQubits) {
    throw Error(ErrorKind::InvalidParameter, "sites must lie in [2, " + std::to_string(kMaxQubits) + "]");
  }
  if (!std::isfinite(coupling) || !std::isfinite(field)) {
    throw Error(ErrorKind::InvalidParameter, "coupling and field must be finite");
  }
  qite.validate(sites);
  if (scan.dim < 1) throw Error(ErrorKind::InvalidParameter, "Krylov dimension must be >= 1");
  if (!(scan.accept_delta >= 0.0)) throw Error(ErrorKind::InvalidParameter, "accept_delta must be >= 0");
  if (runs < 1) throw Error(ErrorKind::InvalidParameter, "runs must be >= 1");
  if (jobs < 1) throw Error(ErrorKind::InvalidParameter, "jobs must be >= 1");
  if (partner_tol && !(*partner_tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "partner_tol must be > 0");
  if (dedupe_fidelity && !(*dedupe_fidelity > 0.0 && *dedupe_fidelity < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "dedupe_fidelity must lie in (0, 1)");
  }
  if (group_tol && !(*group_tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "group_tol must be > 0");
  if (max_cross_overlap && !(*max_cross_overlap > 0.0 && *max_cross_overlap < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "max_cross_overlap must lie in (0, 1)");
  }
}

std::vector<std::string> RunConfig::describe() const {
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + csv::num(v[i]);
    return s.empty() ? std::string("0") : s;
  };
  auto opt = [](const std::optional<double>& v) { return v ? csv::num(*v) : std::string("auto"); };
  std::string scales;
  for (std::size_t i = 0; i < qite.noise.scales.size(); ++i) {
    scales += (i ? "," : "") + std::to_string(qite.noise.scales[i]);
  }
  return {
      "sites=" + std::to_string(sites) + " coupling=" + csv::num(coupling) + " field=" + csv::num(field),
      "dtau=" + csv::num(qite.dtau) + " steps=" + std::to_string(qite.steps) +
          " svd_cutoff=" + csv::num(qite.svd_cutoff) + " c_order=" + std::to_string(qite.c_expansion_order),
      "mode=" + to_string(qite.mode) + " shots=" + std::to_string(qite.noise.shots) + " p01=" + join(qite.noise.p01) +
          " p10=" + join(qite.noise.p10) + " depol=" + csv::num(qite.noise.depol) +
          " layers=" + std::to_string(qite.noise.layers) + " scales=" + scales,
      "accept_delta=" + csv::num(scan.accept_delta) + " scan_stop=" + csv::num(scan.scan_stop) +
          " early_stop=" + (scan.early_stop ? "true" : "false") + " dim=" + std::to_string(scan.dim),
      "runs=" + std::to_string(runs) + " seed=" + std::to_string(seed) + " negate_h=" + (negate_h ? "true" : "false"),
      "partner_tol=" + opt(partner_tol) + " dedupe_fidelity=" + opt(dedupe_fidelity) + " group_tol=" + opt(group_tol) +
          " max_cross_overlap=" + opt(max_cross_overlap) +
          " complete_missing=" + (complete_missing ? (*complete_missing ? "true" : "false") : "auto") +
          " plan=" + (plan.empty() ? "default" : plan),
  };
}

void apply_config(const config::File& file, RunConfig& cfg) {
  using config::to_bool;
  using config::to_double;
  using config::to_double_list;
  using config::to_int;
  for (const auto& e : file.entries) {
    const std::string id = e.section.empty() ? e.key : e.section + "." + e.key;
    auto as_int = [&] { return static_cast<int>(to_int(file, e)); };
    if (id == "model.sites") cfg.sites = as_int();
    else if (id == "model.coupling") cfg.coupling = to_double(file, e);
    else if (id == "model.field") cfg.field = to_double(file, e);
    else if (id == "qite.dtau") cfg.qite.dtau = to_double(file, e);
    else if (id == "qite.steps") cfg.qite.steps = as_int();
    else if (id == "qite.svd_cutoff") cfg.qite.svd_cutoff = to_double(file, e);
    else if (id == "qite.c_order") cfg.qite.c_expansion_order = as_int();
    else if (id == "lanczos.accept_delta") cfg.scan.accept_delta = to_double(file, e);
    else if (id == "lanczos.scan_stop") cfg.scan.scan_stop = to_double(file, e);
    else if (id == "lanczos.early_stop") cfg.scan.early_stop = to_bool(file, e);
    else if (id == "lanczos.dim") cfg.scan.dim = as_int();
    else if (id == "lanczos.floor") cfg.scan.floor = to_double(file, e);
    else if (id == "noise.mode") {
      try {
        cfg.qite.mode = parse_measure_mode(e.value);
      } catch (const Error& err) {
        throw Error(ErrorKind::Parse, file.where(e) + ": " + err.what());
      }
    } else if (id == "noise.shots") cfg.qite.noise.shots = to_int(file, e);
    else if (id == "noise.readout") cfg.qite.noise.p01 = cfg.qite.noise.p10 = {to_double(file, e)};
    else if (id == "noise.p01") cfg.qite.noise.p01 = to_double_list(file, e);
    else if (id == "noise.p10") cfg.qite.noise.p10 = to_double_list(file, e);
    else if (id == "noise.depol") cfg.qite.noise.depol = to_double(file, e);
    else if (id == "noise.layers") cfg.qite.noise.layers = as_int();
    else if (id == "noise.scales") {
      cfg.qite.noise.scales.clear();
      for (double s : to_double_list(file, e)) cfg.qite.noise.scales.push_back(static_cast<int>(s));
    } else if (id == "run.runs") cfg.runs = as_int();
    else if (id == "run.seed") cfg.seed = static_cast<std::uint64_t>(to_int(file, e));
    else if (id == "run.jobs") cfg.jobs = as_int();
    else if (id == "run.out") cfg.out = e.value;
    else if (id == "run.negate_h") cfg.negate_h = to_bool(file, e);
    else if (id == "pipeline.partner_tol") cfg.partner_tol = to_double(file, e);
    else if (id == "pipeline.dedupe_fidelity") cfg.dedupe_fidelity = to_double(file, e);
    else if (id == "pipeline.group_tol") cfg.group_tol = to_double(file, e);
    else if (id == "pipeline.max_cross_overlap") cfg.max_cross_overlap = to_double(file, e);
    else if (id == "pipeline.complete_missing") cfg.complete_missing = to_bool(file, e);
    else if (id == "pipeline.plan") cfg.plan = e.value;
    else throw Error(ErrorKind::Parse, file.where(e) + ": unknown key '" + id + "'");
  }
}

namespace {

PipelineConfig pipeline_config(const RunConfig& cfg) {
  PipelineConfig p = pipeline_defaults(cfg.qite.mode);
  p.qite = cfg.qite;
  p.qite.noise.seed = cfg.seed;
  p.scan = cfg.scan;
  p.partner_tol = cfg.partner_tol.value_or(p.partner_tol);
  p.dedupe_fidelity = cfg.dedupe_fidelity.value_or(p.dedupe_fidelity);
  p.group_tol = cfg.group_tol.value_or(p.group_tol);
  p.max_cross_overlap = cfg.max_cross_overlap.value_or(p.max_cross_overlap);
  p.complete_missing = cfg.complete_missing.value_or(p.complete_missing);
  p.jobs = cfg.jobs;
  return p;
}

std::vector<std::string> header(const RunConfig& cfg, const std::string& command) {
  std::vector<std::string> lines{"isingql " + command};
  for (auto& l : cfg.describe()) lines.push_back(std::move(l));
  return lines;
}

std::string or_default(const std::string& path, const char* fallback) { return path.empty() ? fallback : path; }

std::string join_selection(const std::vector<int>& sel, std::size_t count) {
  std::string s;
  for (std::size_t i = 0; i < count; ++i) s += (i ? ";" : "") + std::to_string(sel[i]);
  return s;
}

std::uint32_t basis_index(const std::string& bits, int n) {
  if (static_cast<int>(bits.size()) != n) {
    throw Error(ErrorKind::Parse, "bitstring '" + bits + "' does not have " + std::to_string(n) + " sites");
  }
  return parse_bitstring(bits);
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, const std::string& scan_out, std::ostream& out) {
  cfg.validate();
  const PipelinePlan plan = cfg.plan.empty() ? default_plan(cfg.sites) : load_plan(cfg.plan);
  const PauliSum h = build_ising_hamiltonian(cfg.sites, cfg.coupling, cfg.field);
  const int runs = cfg.qite.mode == MeasureMode::Exact ? 1 : cfg.runs;
  const RunsSummary summary = assemble_runs(plan, h, pipeline_config(cfg), runs);
  const Spectrum oracle = oracle_spectrum(cfg.sites, cfg.coupling, cfg.field);

  const std::string spectrum_path = or_default(cfg.out, "spectrum.csv");
  const std::string scan_path = scan_out.empty()
                                    ? (std::filesystem::path(spectrum_path).parent_path() / "scan.csv").string()
                                    : scan_out;

  csv::Table scan_table;
  scan_table.comments = header(cfg, "spectrum scan");
  scan_table.header = {"run", "entry", "label", "l", "m", "E", "delta_e", "accepted"};
  for (std::size_t r = 0; r < summary.runs.size(); ++r) {
    const auto& entries = summary.runs[r].entries;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      for (const auto& rec : entries[e].records) {
        scan_table.add_row({std::to_string(r), std::to_string(e), entries[e].label,
                            join_selection(rec.selection, rec.selection.size() - 1),
                            std::to_string(rec.selection.back()), csv::num(rec.energy), csv::num(rec.delta_e),
                            rec.accepted ? "1" : "0"});
      }
    }
  }

  std::vector<std::string> comments = header(cfg, "spectrum");
  comments.push_back("runs_used=" + std::to_string(runs));
  write_spectrum_csv(spectrum_path, summary.spectrum, comments);
  csv::write_table(scan_path, scan_table);

  const auto& sources = summary.runs.front().sources;
  out << std::left << std::setw(6) << "level" << std::right << std::setw(14) << "energy" << std::setw(14) << "oracle"
      << std::setw(12) << "deviation" << std::setw(12) << "std(runs)" << std::setw(12) << "std.err" << "  source\n";
  double worst = 0.0;
  out << std::fixed;
  for (std::size_t i = 0; i < summary.spectrum.dim(); ++i) {
    const double dev = summary.spectrum.energies[i] - oracle.energies[i];
    worst = std::max(worst, std::abs(dev));
    out << std::left << std::setw(6) << i << std::right << std::setprecision(6) << std::setw(14)
        << summary.spectrum.energies[i] << std::setw(14) << oracle.energies[i] << std::setw(12) << dev
        << std::setw(12) << summary.sample_std[i] << std::setw(12) << summary.std_error[i] << "  " << sources[i]
        << '\n';
  }
  out << std::defaultfloat << "max |deviation| = " << worst << '\n';
  out << "wrote " << spectrum_path << " and " << scan_path << '\n';
  return kExitOk;
}

int cmd_qite(const RunConfig& cfg, const std::string& initial, const std::vector<MeasureMode>& modes,
             std::ostream& out) {
  cfg.validate();
  if (modes.empty()) throw Error(ErrorKind::InvalidParameter, "no measurement mode requested");
  const StateVector psi0 = parse_state_spec(initial, cfg.sites);
  if (psi0.qubits() != cfg.sites) {
    throw Error(ErrorKind::InvalidParameter, "initial state has " + std::to_string(psi0.qubits()) +
                                                 " sites, config has " + std::to_string(cfg.sites));
  }
  PauliSum h = build_ising_hamiltonian(cfg.sites, cfg.coupling, cfg.field);
  if (cfg.negate_h) h = h.scaled(-1.0);

  struct Column {
    std::vector<double> mean;
    std::vector<double> std;
  };
  std::vector<Column> columns;
  std::vector<double> c_sq_inv;
  const std::size_t len = static_cast<std::size_t>(cfg.qite.steps) + 1;
  for (MeasureMode mode : modes) {
    QiteConfig q = cfg.qite;
    q.mode = mode;
    if (mode != MeasureMode::Exact) q.noise.validate(cfg.sites);
    const int runs = mode == MeasureMode::Exact ? 1 : cfg.runs;
    std::vector<std::vector<double>> energies;
    for (int r = 0; r < runs; ++r) {
      q.run = static_cast<std::uint64_t>(r);
      q.noise.seed = cfg.seed + static_cast<std::uint64_t>(r);
      const auto trace = run_qite(psi0, h, q);
      if (c_sq_inv.empty()) c_sq_inv = trace.c_sq_inv;
      energies.push_back(trace.energies);
    }
    Column col{std::vector<double>(len, 0.0), std::vector<double>(len, 0.0)};
    for (std::size_t s = 0; s < len; ++s) {
      double m = 0.0;
      for (const auto& e : energies) m += e[s];
      m /= runs;
      double ss = 0.0;
      for (const auto& e : energies) ss += (e[s] - m) * (e[s] - m);
      col.mean[s] = m;
      col.std[s] = runs > 1 ? std::sqrt(ss / (runs - 1)) : 0.0;
    }
    columns.push_back(std::move(col));
  }

  csv::Table table;
  table.comments = header(cfg, "qite");
  table.comments.push_back("initial=" + initial);
  table.header = {"step", "tau"};
  for (MeasureMode m : modes) {
    table.header.push_back("energy[" + to_string(m) + "]");
    table.header.push_back("std[" + to_string(m) + "]");
  }
  table.header.push_back("c_sq_inv");
  for (std::size_t s = 0; s < len; ++s) {
    std::vector<std::string> row{std::to_string(s), csv::num(static_cast<double>(s) * cfg.qite.dtau)};
    for (const auto& c : columns) {
      row.push_back(csv::num(c.mean[s]));
      row.push_back(csv::num(c.std[s]));
    }
    row.push_back(csv::num(c_sq_inv[s]));
    table.add_row(std::move(row));
  }
  const std::string path = or_default(cfg.out, "trace.csv");
  csv::write_table(path, table);
  out << "final energy";
  for (std::size_t i = 0; i < modes.size(); ++i) {
    out << ' ' << to_string(modes[i]) << '=' << std::setprecision(10) << columns[i].mean.back();
  }
  out << "\nwrote " << path << '\n';
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, const EvolveOptions& opts, std::ostream& out) {
  opts.grid.validate();
  std::optional<Spectrum> file_spectrum;
  int n = cfg.sites;
  if (!opts.spectrum_file.empty()) {
    if (!std::filesystem::exists(opts.spectrum_file)) {
      throw Error(ErrorKind::Io, "spectrum file '" + opts.spectrum_file + "' does not exist");
    }
    file_spectrum = read_spectrum_csv(opts.spectrum_file);
    n = file_spectrum->qubits;
  }
  RunConfig model = cfg;
  model.sites = n;
  model.validate();
  const Spectrum oracle = oracle_spectrum(n, cfg.coupling, cfg.field);
  const Spectrum& primary = file_spectrum ? *file_spectrum : oracle;

  struct Series {
    std::string label;
    std::function<std::vector<double>(const Spectrum&)> eval;
  };
  std::vector<Series> series;
  for (const auto& [a, b] : opts.transitions) {
    const auto xa = basis_index(a, n);
    const auto xb = basis_index(b, n);
    series.push_back({"P(" + a + "->" + b + ")", [=, &opts](const Spectrum& s) {
                        return transition_probability_series(s, xa, xb, opts.grid);
                      }});
  }
  for (const auto& occ : opts.occupations) {
    const auto x = basis_index(occ, n);
    std::vector<int> sites = opts.sites;
    if (opts.sites_all || sites.empty()) {
      sites.resize(static_cast<std::size_t>(n));
      std::iota(sites.begin(), sites.end(), 0);
    }
    for (int site : sites) {
      if (site < 0 || site >= n) throw Error(ErrorKind::InvalidParameter, "site " + std::to_string(site) + " out of range");
      series.push_back({"n" + std::to_string(site) + "(" + occ + ")", [=, &opts](const Spectrum& s) {
                          return occupation_series(s, x, site, opts.grid);
                        }});
    }
  }
  for (const auto& mz : opts.magnetizations) {
    const auto x = basis_index(mz, n);
    series.push_back({"mz(" + mz + ")", [=, &opts](const Spectrum& s) { return magnetization_series(s, x, opts.grid); }});
  }
  if (series.empty()) throw Error(ErrorKind::InvalidParameter, "no observable requested");

  csv::Table table;
  table.comments = header(model, "evolve");
  table.comments.push_back("spectrum=" + (file_spectrum ? opts.spectrum_file : std::string("oracle")));
  table.header = {"t"};
  std::vector<std::vector<double>> columns;
  double worst = 0.0;
  for (const auto& s : series) {
    auto values = s.eval(primary);
    table.header.push_back(s.label);
    if (file_spectrum) {
      auto ref = s.eval(oracle);
      std::vector<double> dev(values.size());
      for (std::size_t k = 0; k < values.size(); ++k) {
        dev[k] = values[k] - ref[k];
        worst = std::max(worst, std::abs(dev[k]));
      }
      columns.push_back(std::move(values));
      columns.push_back(std::move(ref));
      columns.push_back(std::move(dev));
      table.header.push_back(s.label + "[oracle]");
      table.header.push_back(s.label + "[dev]");
    } else {
      columns.push_back(std::move(values));
    }
  }
  for (int k = 0; k < opts.grid.samples; ++k) {
    std::vector<std::string> row{csv::num(opts.grid.at(k))};
    for (const auto& c : columns) row.push_back(csv::num(c[static_cast<std::size_t>(k)]));
    table.add_row(std::move(row));
  }
  const std::string path = or_default(cfg.out, "series.csv");
  csv::write_table(path, table);
  if (file_spectrum) out << "max |deviation from oracle| = " << worst << '\n';
  out << "wrote " << path << " (" << series.size() << " series, " << opts.grid.samples << " samples)\n";
  return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const Spectrum s = oracle_spectrum(cfg.sites, cfg.coupling, cfg.field);
  const std::string path = or_default(cfg.out, "oracle.csv");
  write_spectrum_csv(path, s, header(cfg, "oracle"));
  out << std::setprecision(12);
  for (std::size_t i = 0; i < s.dim(); ++i) out << i << ' ' << s.energies[i] << '\n';
  out << "wrote " << path << '\n';
  return kExitOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const NoConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_validation_error(e.kind()) ? kExitInvalid : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace isingql::app
