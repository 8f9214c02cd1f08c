#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "strippress/gibbs.hpp"
#include "strippress/models.hpp"
#include "strippress/transfer.hpp"

namespace strippress {

struct RunConfig {
  Model model;
  PeriodicRow bottom = PeriodicRow::constant(0);
  PeriodicRow top = PeriodicRow::constant(0);
  int n_min = 1;
  int n_max = 2;  // needs n_max >= n_min + 1 for at least one difference
  double rel_tol = 1e-12;
  double p_c_bound = kDefaultPcBound;
  bool force = false;      // run despite a failed gate
  int force_period = 0;    // 0: lcm of the row periods
  BuildLimits limits;
  std::string checkpoint_path;  // empty: no checkpointing
  std::string label = "pressure";
};

struct RateFit {
  double rate = 0;       // R in gap ~ Q exp(-R n)
  double prefactor = 0;  // Q
  double r_squared = 0;  // quality of the log-linear fit
};

struct PressureRow {
  int n = 0;
  long columns = 0;  // after trimming
  double log_lambda = 0;
  double lambda_lo = 0, lambda_hi = 0;
  std::optional<double> diff;  // (1/p)(log lambda_{n+1} - log lambda_n)
  double identity_residual = 0;
  double wall_ms = 0;
  int removed_columns = 0;  // trim diagnostics; not part of the CSV schema
};

struct PressureRun {
  std::string label = "pressure";
  int period = 1;
  std::vector<PressureRow> rows;
  double estimate = 0;                  // last difference
  std::optional<double> error_bar;      // 2x the last successive gap; heuristic
  std::optional<RateFit> rate_fit;
  std::optional<int> trim_stable_from;  // smallest n whose trim removed nothing
  ApplicabilityReport gate;
  std::vector<std::string> notes;
};

// Full pipeline: applicability gate, strip sweep over n on the period-p
// recoded shift with constant recoded rows, eigenvalue enclosures, the
// difference sequence and its empirical rate. Raises GateError when the
// hypotheses are not certified and force is off.
PressureRun run_pressure(const RunConfig& cfg);

// Same sweep with the interaction zeroed; the estimate is the topological
// entropy of the shift.
PressureRun run_entropy(RunConfig cfg);

// Least squares of log |diff_{n+1} - diff_n| against n. Absent (with a note)
// when fewer than three diffs exist or some gap is exactly zero.
std::optional<RateFit> fit_rate(const std::vector<std::pair<int, double>>& diffs,
                                std::string* note = nullptr);

// CSV with `# key=value` header lines carrying the gate report and summary;
// 17 significant digits, so parsing reproduces every field exactly.
void write_csv(const PressureRun& run, std::ostream& os);
PressureRun read_csv(std::istream& is);

std::string render_run(const PressureRun& run);

}  // namespace strippress
