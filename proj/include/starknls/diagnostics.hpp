#pragma once

#include "starknls/problem.hpp"
#include "starknls/transform.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace starknls {

/// Every monitored quantity at one sample instant.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;       // ||u||_L2^2
  double grad_norm = 0.0;  // ||grad u||_L2
  double lr_norm_2s2 = 0.0;  // ||u||_{L^{2 sigma + 2}}
  double natural_energy = 0.0;
  double shifted_energy = 0.0;
  double pc_quantity = 0.0;
  double je_norm = 0.0;  // ||J_E(t) u||_L2
  std::array<double, 2> momentum_invariant{0.0, 0.0};
  double boundary_mass = 0.0;
  double spectral_tail = 0.0;
  std::array<double, 2> peak_location{0.0, 0.0};
  std::optional<double> sigma_norm;  // only while contained
};

/// Gradient-norm threshold monitor; the trigger time is linearly
/// interpolated in the ratio between the two records bracketing the
/// crossing.
struct BlowupMonitor {
  double grad_threshold_factor = 20.0;
  bool triggered = false;
  double t_trigger = 0.0;
  std::array<double, 2> peak_at_trigger{0.0, 0.0};

  // tracking state
  bool primed = false;
  double grad_reference = 0.0;
  double last_t = 0.0;
  double last_ratio = 0.0;
  int run_direction = 0;
};

/// delta(r) = n (1/2 - 1/r), r >= 2.
double delta_r(int n, double r);

/// ||u||_{L^r} |t|^{delta} / (||u||_{L^2}^{1-delta} ||J_E u||_{L^2}^{delta}).
double dispersive_ratio(const Field& u, const StarkFrame& fr, double r);

/// (1/2)||J_E(t) u||^2 + lambda t^2/(sigma+1) ||u||_{2s+2}^{2s+2}.
double pc_quantity(const Field& u, const StarkFrame& fr, const Problem& p);

DiagnosticsRecord record(const Field& u, double t, const Problem& p);

/// Returns the updated monitor; records must arrive in run order.
BlowupMonitor update_blowup_monitor(BlowupMonitor m, const DiagnosticsRecord& rec);

struct Trajectory;  // propagator.hpp

/// Centered finite difference of pc_quantity minus the pseudo-conformal law
/// source term, at interior sample times; (t, residual) pairs.
std::vector<std::pair<double, double>> pc_law_residual(const Trajectory& traj);

struct ScatteringSeries {
  std::vector<double> times;
  std::vector<double> cauchy;    // ||w(t_{j+1}) - w(t_j)||_Sigma
  std::vector<double> to_proxy;  // ||w(t_j) - w(t_last)||_Sigma
};

/// w(t) = U(-t) u(t) via the exact linear Stark propagator; requires the
/// trajectory to have kept snapshots.
ScatteringSeries scattering_residual(const Trajectory& traj, const Problem& p);

}  // namespace starknls
