#pragma once

// Command implementations behind the isingql executable. Each command
// returns a process exit code: 0 success, 2 invalid input, 3 no convergence,
// 1 any other failure.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isingql/config.hpp"
#include "isingql/noise.hpp"
#include "isingql/observables.hpp"
#include "isingql/qite.hpp"
#include "isingql/qlanczos.hpp"

namespace isingql::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNoConvergence = 3;

struct RunConfig {
  int sites = 3;
  double coupling = 0.6;
  double field = 1.0;
  QiteConfig qite;  // mode and noise live here
  ScanConfig scan;
  // Pipeline overrides; unset values take pipeline_defaults(mode).
  std::optional<double> partner_tol;
  std::optional<double> dedupe_fidelity;
  std::optional<double> group_tol;
  std::optional<double> max_cross_overlap;
  std::optional<bool> complete_missing;
  int runs = 3;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool negate_h = false;
  std::string out;
  std::string plan;

  RunConfig();
  void validate() const;
  // key=value lines recorded as CSV header comments
  std::vector<std::string> describe() const;
};

// Applies recognized keys; unknown keys raise a line-anchored parse error.
void apply_config(const config::File& file, RunConfig& cfg);

int cmd_spectrum(const RunConfig& cfg, const std::string& scan_out, std::ostream& out);

int cmd_qite(const RunConfig& cfg, const std::string& initial, const std::vector<MeasureMode>& modes,
             std::ostream& out);

struct EvolveOptions {
  std::vector<std::pair<std::string, std::string>> transitions;
  std::vector<std::string> occupations;
  std::vector<int> sites;  // empty with sites_all = false means every site
  bool sites_all = false;
  std::vector<std::string> magnetizations;
  TimeGrid grid;
  std::string spectrum_file;
};

int cmd_evolve(const RunConfig& cfg, const EvolveOptions& opts, std::ostream& out);

int cmd_oracle(const RunConfig& cfg, std::ostream& out);

// Runs `body`, mapping exceptions to exit codes and printing them to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace isingql::app
