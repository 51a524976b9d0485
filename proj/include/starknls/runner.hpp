#pragma once

#include "starknls/config.hpp"
#include "starknls/propagator.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace starknls {

struct GuardSummary {
  double max_boundary_mass = 0.0;
  double max_spectral_tail = 0.0;
  void absorb(const Trajectory& traj);
};

struct RunReport {
  Trajectory traj;
  GuardSummary guards;
};

struct CompareReport {
  std::vector<double> times;
  std::vector<double> discrepancy;  // relative L2, stark pulled back vs free
  double max_discrepancy = 0.0;
  Trajectory stark;
  Trajectory free_run;
  GuardSummary guards;
  bool guard_failure = false;
  std::string guard_detail;
};

struct LemmaCheck {
  std::string name;
  double value = 0.0;      // measured residual (or ratio)
  double threshold = 0.0;  // pass bound; for ratio checks, [lo, hi] below
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
  bool is_ratio = false;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  GuardSummary guards;
  bool all_pass() const;
};

struct BlowupRun {
  std::string label;  // stark_fwd, stark_bwd, free_fwd, free_bwd
  Trajectory traj;
  bool triggered = false;
  double t_trigger = 0.0;
  std::array<double, 2> peak{0.0, 0.0};
};

struct BlowupReport {
  std::vector<BlowupRun> runs;  // order: stark_fwd, free_fwd, stark_bwd, free_bwd
  double energy_sign = 0.0;
  bool criterion_met = false;  // energy_sign < 0
  GuardSummary guards;
  // per direction: |t_trigger(stark) - t_trigger(free)|, predicted and
  // measured peak offsets (free peak - stark peak vs t_trigger^2 E / 2)
  struct Pairing {
    bool both_triggered = false;
    double trigger_gap = 0.0;
    std::array<double, 2> predicted_offset{0.0, 0.0};
    std::array<double, 2> measured_offset{0.0, 0.0};
  };
  Pairing forward, backward;
};

struct ScatterReport {
  ScatteringSeries series;
  bool trend_pass = false;  // Cauchy distances strictly decreasing for t >= 1
  int trend_samples = 0;
  bool below_threshold = false;
  double sigma_threshold = 0.0;
  GuardSummary guards;
  Trajectory traj;
};

RunReport run_single_report(const ExperimentConfig& cfg);
CompareReport run_compare_report(const ExperimentConfig& cfg);
LemmaReport run_lemma_check_report(const ExperimentConfig& cfg);
BlowupReport run_blowup_report(const ExperimentConfig& cfg);
ScatterReport run_scatter_report(const ExperimentConfig& cfg);

// CLI entry points: execute the experiment, write outputs under out_dir,
// print a report, and return the process exit code (0 pass, 1 tolerance or
// identity failure, 2 guard/config error).
int run_single(const ExperimentConfig& cfg, const std::string& out_dir, bool quiet, std::ostream& log);
int run_compare(const ExperimentConfig& cfg, const std::string& out_dir, bool quiet, std::ostream& log);
int run_lemma_check(const ExperimentConfig& cfg, const std::string& out_dir, bool quiet, std::ostream& log);
int run_blowup(const ExperimentConfig& cfg, const std::string& out_dir, bool quiet, std::ostream& log);
int run_scatter(const ExperimentConfig& cfg, const std::string& out_dir, bool quiet, std::ostream& log);

/// Diagnostics CSV with the documented column order, 17 significant digits.
void write_diagnostics_csv(const std::string& path, int dim,
                           const std::vector<DiagnosticsRecord>& records);
std::string format_double17(double v);

}  // namespace starknls
