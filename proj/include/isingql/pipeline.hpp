#pragma once

// Full-spectrum assembly: QITE + QLanczos runs over a plan of initial
// states (with +H or -H), closed-form eigenstate injections, degenerate
// partner expansion, deduplication and orthonormalization.

#include <string>
#include <string_view>
#include <vector>

#include "isingql/noise.hpp"
#include "isingql/oracle.hpp"
#include "isingql/pauli.hpp"
#include "isingql/qite.hpp"
#include "isingql/qlanczos.hpp"
#include "isingql/state.hpp"

namespace isingql {

// `lib:<name>` or a comma list of [+|-]<bitstring>. With n > 0 every bitstring
// must have length n. Errors carry the character offset.
StateVector parse_state_spec(std::string_view text, int n);

struct PlanRun {
  std::string spec;
  bool negate_h = false;
  int root = 0;
  int steps = 0;  // 0 keeps the configured step count
  int line = 0;
};

struct PipelinePlan {
  std::vector<PlanRun> runs;
  std::vector<std::string> analytic;
};

// Plan text: one directive per line, '#' comments.
//   run = +H <state-spec> [root=<k>] [steps=<n>]
//   run = -H <state-spec> ...
//   analytic = <state-spec>
PipelinePlan parse_plan(std::string_view text, std::string_view source);
PipelinePlan load_plan(const std::string& path);
PipelinePlan default_plan(int n);

struct PipelineConfig {
  QiteConfig qite;
  ScanConfig scan;
  double partner_tol = 0.1;        // max delta_e for expanding a state into its symmetry partners
  double partner_residual = 0.5;   // min residual for an orbit image to count as a new partner
  double dedupe_fidelity = 0.99;   // a state this close to the accepted span is a duplicate
  double group_tol = 1e-6;         // energy window treated as one degenerate level
  double max_cross_overlap = 0.05;
  bool complete_missing = false;   // fill missing levels by Rayleigh-Ritz on the orthogonal complement
  int jobs = 1;
};

// Exact mode keeps the tight defaults above. Noisy modes recover states of
// lower fidelity, so they loosen the quality gates and complete missing levels.
PipelineConfig pipeline_defaults(MeasureMode mode);

struct EntryReport {
  std::string label;
  double qite_final_energy = 0.0;  // in the sign convention of the run
  Candidate best;                  // energies in the sign convention of the run
  std::vector<ScanRecord> records;
  std::size_t partners = 0;
  std::size_t accepted = 0;
};

struct PipelineResult {
  Spectrum spectrum;
  std::vector<double> energy_variances;  // per level, estimator variance
  std::vector<std::string> sources;      // per level
  std::vector<EntryReport> entries;
};

PipelineResult assemble_spectrum(const PipelinePlan& plan, const PauliSum& h, const PipelineConfig& cfg);

struct RunsSummary {
  Spectrum spectrum;               // mean energies, eigenvectors of the first run
  std::vector<double> sample_std;  // spread over runs
  std::vector<double> std_error;   // propagated shot noise of the run mean
  std::vector<PipelineResult> runs;
};

// Repeats the pipeline with run indices 0..runs-1 and averages levels by rank.
RunsSummary assemble_runs(const PipelinePlan& plan, const PauliSum& h, const PipelineConfig& cfg, int runs);

}  // namespace isingql
