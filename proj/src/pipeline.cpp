#include "isingql/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "isingql/errors.hpp"
#include "isingql/symmetry.hpp"

namespace isingql {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Error spec_error(std::size_t offset, const std::string& what) {
  return Error(ErrorKind::Parse, "state spec, offset " + std::to_string(offset) + ": " + what);
}

}  // namespace

StateVector parse_state_spec(std::string_view text, int n) {
  const std::string_view body = trim(text);
  const std::size_t lead = static_cast<std::size_t>(body.data() - text.data());
  if (body.empty()) throw spec_error(0, "empty state spec");
  if (body.substr(0, 4) == "lib:") {
    const std::string name(body.substr(4));
    if (n <= 0) throw spec_error(lead, "library states need the site count");
    if (n != 3 && n != 4) throw spec_error(lead, "no state library for N = " + std::to_string(n));
    auto s = library_state(n, name);
    if (!s) throw spec_error(lead + 4, "unknown library state '" + name + "'");
    return *s;
  }

  static constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  std::vector<SignedBasis> terms;
  std::set<std::string> seen;
  std::size_t width = 0;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    std::string_view tok = body.substr(pos, comma - pos);
    std::size_t off = lead + pos;
    while (!tok.empty() && tok.front() == ' ') {
      tok.remove_prefix(1);
      ++off;
    }
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw spec_error(off, "empty term");
    int sign = +1;
    if (tok.front() == '+' || tok.front() == '-') {
      sign = tok.front() == '-' ? -1 : +1;
      tok.remove_prefix(1);
      ++off;
    } else if (tok.substr(0, kUnicodeMinus.size()) == kUnicodeMinus) {
      sign = -1;
      tok.remove_prefix(kUnicodeMinus.size());
      off += kUnicodeMinus.size();
    }
    if (tok.empty()) throw spec_error(off, "missing bitstring after sign");
    for (std::size_t i = 0; i < tok.size(); ++i) {
      if (tok[i] != '0' && tok[i] != '1') {
        throw spec_error(off + i, "expected '0' or '1', found '" + std::string(1, tok[i]) + "'");
      }
    }
    if (width == 0) {
      width = tok.size();
      if (n > 0 && static_cast<int>(width) != n) {
        throw spec_error(off, "bitstring length " + std::to_string(width) + " does not match " +
                                  std::to_string(n) + " sites");
      }
    } else if (tok.size() != width) {
      throw spec_error(off, "mixed bitstring lengths (" + std::to_string(tok.size()) + " vs " +
                                std::to_string(width) + ")");
    }
    if (!seen.insert(std::string(tok)).second) {
      throw spec_error(off, "duplicate bitstring '" + std::string(tok) + "'");
    }
    terms.push_back({sign, std::string(tok)});
    pos = comma + 1;
  }
  if (width > static_cast<std::size_t>(kMaxQubits)) {
    throw spec_error(lead, "more than " + std::to_string(kMaxQubits) + " sites");
  }
  return from_superposition(static_cast<int>(width), terms);
}

PipelinePlan parse_plan(std::string_view text, std::string_view source) {
  PipelinePlan plan;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorKind::Parse, std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line == "[plan]") continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw fail("expected 'run = ...' or 'analytic = ...'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw fail("missing value for '" + std::string(key) + "'");
    if (key == "analytic") {
      plan.analytic.emplace_back(value);
      continue;
    }
    if (key != "run") throw fail("unknown directive '" + std::string(key) + "'");
    std::istringstream words{std::string(value)};
    std::string sign;
    std::string spec;
    words >> sign >> spec;
    PlanRun run;
    run.line = line_no;
    if (sign == "+H") {
      run.negate_h = false;
    } else if (sign == "-H") {
      run.negate_h = true;
    } else {
      throw fail("run must start with +H or -H, found '" + sign + "'");
    }
    if (spec.empty()) throw fail("missing initial state");
    run.spec = spec;
    std::string opt;
    while (words >> opt) {
      const auto oeq = opt.find('=');
      if (oeq == std::string::npos) throw fail("expected option key=value, found '" + opt + "'");
      const std::string k = opt.substr(0, oeq);
      const std::string v = opt.substr(oeq + 1);
      int parsed = 0;
      try {
        std::size_t used = 0;
        parsed = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw fail("option '" + k + "' needs an integer, found '" + v + "'");
      }
      if (k == "root") {
        if (parsed < 0) throw fail("root must be >= 0");
        run.root = parsed;
      } else if (k == "steps") {
        if (parsed < 2) throw fail("steps must be >= 2");
        run.steps = parsed;
      } else {
        throw fail("unknown run option '" + k + "'");
      }
    }
    plan.runs.push_back(std::move(run));
  }
  if (plan.runs.empty() && plan.analytic.empty()) {
    throw Error(ErrorKind::Parse, std::string(source) + ": plan has no entries");
  }
  return plan;
}

PipelinePlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open plan file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_plan(os.str(), path);
}

PipelinePlan default_plan(int n) {
  if (n == 3) {
    return parse_plan(
        "run = +H lib:w3-twoparticle\n"
        "run = +H 100\n"
        "run = -H 000\n"
        "run = -H 110\n"
        "run = -H 100\n"
        "analytic = lib:pair-1p-a\n"
        "analytic = lib:pair-1p-b\n",
        "default-plan-3");
  }
  if (n == 4) {
    return parse_plan(
        "run = +H lib:even7\n"
        "run = +H 0000 root=1 steps=60\n"
        "run = -H 0000\n"
        "run = -H 0000 root=1 steps=60\n"
        "run = +H 1000\n"
        "run = -H lib:w4-oneparticle\n"
        "run = +H lib:alt4-oneparticle\n"
        "run = -H lib:alt4-oneparticle\n"
        "analytic = lib:pair-1p-a\n"
        "analytic = lib:pair-1p-b\n"
        "analytic = lib:quad-2p-a\n"
        "analytic = lib:quad-2p-b\n"
        "analytic = lib:quad-2p-c\n"
        "analytic = lib:quad-2p-d\n"
        "analytic = lib:pair-3p-a\n"
        "analytic = lib:pair-3p-b\n",
        "default-plan-4");
  }
  throw Error(ErrorKind::InvalidParameter, "no default plan for N = " + std::to_string(n));
}

namespace {

std::string run_label(const PlanRun& run) {
  std::string s = (run.negate_h ? "-H " : "+H ") + run.spec;
  if (run.root != 0) s += " root=" + std::to_string(run.root);
  if (run.steps != 0) s += " steps=" + std::to_string(run.steps);
  return s;
}

EntryReport run_entry(std::size_t index, const PlanRun& run, const PauliSum& h, const PipelineConfig& cfg) {
  const PauliSum hr = run.negate_h ? h.scaled(-1.0) : h;
  const StateVector initial = parse_state_spec(run.spec, h.size());
  QiteConfig q = cfg.qite;
  q.entry = index;
  if (run.steps != 0) q.steps = run.steps;
  const QiteTrace trace = run_qite(initial, hr, q);
  ScanConfig sc = cfg.scan;
  sc.root = run.root;
  sc.dim = std::max(sc.dim, run.root + 1);
  EntryReport rep;
  rep.label = run_label(run);
  rep.qite_final_energy = trace.energies.back();
  auto res = scan(trace, hr, sc, q.mode, q.noise,
                  StreamKey{q.run, index, static_cast<std::uint64_t>(q.steps), 0, 0});
  rep.best = std::move(res.best);
  rep.records = std::move(res.records);
  return rep;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

using CVec = Eigen::VectorXcd;

CVec to_eigen(const StateVector& s) {
  const auto a = s.amplitudes();
  return Eigen::Map<const CVec>(a.data(), static_cast<Eigen::Index>(a.size()));
}

StateVector from_eigen(int n, const CVec& v) {
  return StateVector(n, std::vector<cplx>(v.data(), v.data() + v.size()));
}

// Rotates the global phase so the largest-magnitude amplitude is real and positive.
void fix_phase(CVec& v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  if (std::abs(v(at)) > 0.0) v *= std::conj(v(at)) / std::abs(v(at));
}

struct Level {
  CVec state;
  std::string source;
};

// Rayleigh-Ritz on the orthogonal complement of the accepted span. The
// complement matrix is formed exactly in exact mode and from measured
// expectation values of basis vectors and their pairwise sums otherwise.
std::vector<CVec> complement_levels(const std::vector<CVec>& span, const Eigen::MatrixXcd& hd, const PauliSum& h,
                                    const PipelineConfig& cfg) {
  const Eigen::Index dim = hd.rows();
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(dim, dim);
  for (const auto& b : span) proj -= (b * b.adjoint()).real();
  const Eigen::Index m = dim - static_cast<Eigen::Index>(span.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pe(proj);
  const Eigen::MatrixXd q = pe.eigenvectors().rightCols(m);

  Eigen::MatrixXd hc(m, m);
  if (cfg.qite.mode == MeasureMode::Exact) {
    hc = q.transpose() * hd.real() * q;
  } else {
    const int n = h.size();
    auto measure = [&](const Eigen::VectorXd& v, Eigen::Index a, Eigen::Index b) {
      std::vector<cplx> amps(v.data(), v.data() + v.size());
      const StateVector s = StateVector(n, std::move(amps)).normalized();
      const auto step = static_cast<std::uint64_t>(a * m + b);
      return measured_expectation(s, h, cfg.qite.noise, cfg.qite.mode,
                                  StreamKey{cfg.qite.run, 0, step, purpose::kComplement, 0})
          .value;
    };
    for (Eigen::Index a = 0; a < m; ++a) hc(a, a) = measure(q.col(a), a, a);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = a + 1; b < m; ++b) {
        const double sum = measure(q.col(a) + q.col(b), a, b);
        hc(a, b) = hc(b, a) = sum - 0.5 * (hc(a, a) + hc(b, b));
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> he(hc);
  const Eigen::MatrixXd ritz = q * he.eigenvectors();
  std::vector<CVec> out;
  for (Eigen::Index k = 0; k < m; ++k) out.push_back(ritz.col(k).cast<cplx>());
  return out;
}

}  // namespace

PipelineConfig pipeline_defaults(MeasureMode mode) {
  PipelineConfig cfg;
  cfg.qite.mode = mode;
  if (mode != MeasureMode::Exact) {
    cfg.partner_tol = 0.3;
    cfg.dedupe_fidelity = 0.5;
    cfg.group_tol = 0.15;
    cfg.max_cross_overlap = 0.35;
    cfg.complete_missing = true;
  }
  return cfg;
}

PipelineResult assemble_spectrum(const PipelinePlan& plan, const PauliSum& h, const PipelineConfig& cfg) {
  const int n = h.size();
  const std::size_t dim = std::size_t{1} << n;
  const bool exact = cfg.qite.mode == MeasureMode::Exact;

  PipelineResult result;
  result.entries.resize(plan.runs.size());
  parallel_for(plan.runs.size(), cfg.jobs, [&](std::size_t i) {
    result.entries[i] = run_entry(i, plan.runs[i], h, cfg);
  });

  struct Source {
    StateVector state;
    std::string label;
    EntryReport* report;
  };
  std::vector<Source> sources;
  for (auto& rep : result.entries) sources.push_back({rep.best.state, rep.label, &rep});
  for (const auto& spec : plan.analytic) {
    sources.push_back({parse_state_spec(spec, n), "analytic " + spec, nullptr});
  }

  // accepted levels plus an orthonormal basis of their span for deduplication
  std::vector<Level> levels;
  std::vector<CVec> span;
  for (auto& src : sources) {
    std::vector<StateVector> family;
    if (uncertainty(src.state, h) < cfg.partner_tol) {
      family = degenerate_partners(src.state, h, cfg.partner_tol, cfg.partner_residual);
    } else {
      family.push_back(src.state.normalized());
    }
    if (src.report) src.report->partners = family.size();
    for (const auto& member : family) {
      CVec v = to_eigen(member);
      fix_phase(v);
      CVec r = v;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : span) r -= b * b.dot(r);
      }
      const double fidelity = std::max(0.0, 1.0 - r.squaredNorm());
      if (fidelity > cfg.dedupe_fidelity || levels.size() == dim) continue;
      span.push_back(r / r.norm());
      levels.push_back({v, src.label});
      if (src.report) ++src.report->accepted;
    }
  }

  const Eigen::MatrixXcd hd = to_dense(h);
  auto energy_of = [&](const CVec& v) { return v.dot(hd * v).real(); };

  if (levels.size() < dim && cfg.complete_missing) {
    for (auto& v : complement_levels(span, hd, h, cfg)) levels.push_back({std::move(v), "complement"});
  }
  if (levels.size() != dim) {
    std::vector<double> es;
    for (const auto& l : levels) es.push_back(energy_of(l.state));
    std::sort(es.begin(), es.end());
    std::ostringstream os;
    os.precision(6);
    os << "found " << levels.size() << " of " << dim << " levels; covered energies:";
    for (double e : es) os << ' ' << e;
    throw Error(ErrorKind::MissingLevels, os.str());
  }

  // Gram-Schmidt inside groups of (nearly) equal energy
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> pre(dim);
  for (std::size_t i = 0; i < dim; ++i) pre[i] = energy_of(levels[i].state);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pre[a] < pre[b]; });
  for (std::size_t g = 0; g < dim;) {
    std::size_t end = g + 1;
    while (end < dim && pre[order[end]] - pre[order[end - 1]] < cfg.group_tol) ++end;
    for (std::size_t i = g; i < end; ++i) {
      CVec& v = levels[order[i]].state;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = g; j < i; ++j) {
          const CVec& b = levels[order[j]].state;
          v -= b * b.dot(v);
        }
      }
      v /= v.norm();
    }
    g = end;
  }

  // symmetric (Loewdin) orthonormalization of the whole set
  Eigen::MatrixXcd psi(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) psi.col(static_cast<Eigen::Index>(i)) = levels[i].state;
  const Eigen::MatrixXcd s = psi.adjoint() * psi;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      if (i != j) cross = std::max(cross, std::abs(s(i, j)));
    }
  }
  if (cross > cfg.max_cross_overlap) {
    throw Error(ErrorKind::Numerical, "recovered eigenstates overlap by " + std::to_string(cross) +
                                          " before orthonormalization");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> se(s);
  const Eigen::VectorXd inv_sqrt = se.eigenvalues().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXcd s_inv_half = se.eigenvectors() * inv_sqrt.asDiagonal() * se.eigenvectors().adjoint();
  psi = psi * s_inv_half;

  std::vector<double> energies(dim);
  std::vector<double> variances(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    CVec v = psi.col(static_cast<Eigen::Index>(i));
    fix_phase(v);
    double imag = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) imag = std::max(imag, std::abs(v(k).imag()));
    if (imag >= 1e-8) {
      throw Error(ErrorKind::RealnessViolation, "eigenstate from '" + levels[i].source +
                                                    "' has imaginary amplitude " + std::to_string(imag));
    }
    psi.col(static_cast<Eigen::Index>(i)) = v;
    if (exact) {
      energies[i] = energy_of(v);
    } else {
      const auto e = measured_expectation(from_eigen(n, v), h, cfg.qite.noise, cfg.qite.mode,
                                          StreamKey{cfg.qite.run, 0, i, purpose::kLevel, 0});
      energies[i] = e.value;
      variances[i] = e.variance;
    }
  }

  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
  Spectrum& out = result.spectrum;
  out.qubits = n;
  out.energies.resize(dim);
  out.t = linalg::Matrix(dim, dim);
  result.energy_variances.resize(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t i = order[r];
    out.energies[r] = energies[i];
    result.energy_variances[r] = variances[i];
    result.sources.push_back(levels[i].source);
    for (std::size_t x = 0; x < dim; ++x) out.t(r, x) = psi(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(i)).real();
    sign_normalize(out.t.row(r));
  }

  if (exact) {
    const double sum = std::accumulate(out.energies.begin(), out.energies.end(), 0.0);
    if (std::abs(sum) > 1e-6) {
      throw Error(ErrorKind::InternalConsistency, "energies sum to " + std::to_string(sum) + ", expected 0");
    }
  }
  return result;
}

RunsSummary assemble_runs(const PipelinePlan& plan, const PauliSum& h, const PipelineConfig& cfg, int runs) {
  if (runs < 1) throw Error(ErrorKind::InvalidParameter, "runs must be >= 1");
  RunsSummary summary;
  for (int r = 0; r < runs; ++r) {
    PipelineConfig c = cfg;
    c.qite.run = static_cast<std::uint64_t>(r);
    c.qite.noise.seed = cfg.qite.noise.seed + static_cast<std::uint64_t>(r);
    summary.runs.push_back(assemble_spectrum(plan, h, c));
  }
  const std::size_t dim = summary.runs.front().spectrum.dim();
  summary.spectrum = summary.runs.front().spectrum;
  summary.sample_std.assign(dim, 0.0);
  summary.std_error.assign(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    double mean = 0.0;
    double var_sum = 0.0;
    for (const auto& run : summary.runs) {
      mean += run.spectrum.energies[i];
      var_sum += run.energy_variances[i];
    }
    mean /= runs;
    double ss = 0.0;
    for (const auto& run : summary.runs) ss += (run.spectrum.energies[i] - mean) * (run.spectrum.energies[i] - mean);
    summary.spectrum.energies[i] = mean;
    summary.sample_std[i] = runs > 1 ? std::sqrt(ss / (runs - 1)) : 0.0;
    summary.std_error[i] = std::sqrt(var_sum) / runs;
  }
  return summary;
}

}  // namespace isingql
