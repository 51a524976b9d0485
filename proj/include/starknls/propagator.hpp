#pragma once

#include "starknls/diagnostics.hpp"

#include <functional>
#include <string>
#include <vector>

namespace starknls {

/// Strang splitting step size. At run start the per-step kinetic phase
/// rotation must satisfy dt * eps * max|k|^2 / 2 < pi.
struct StepScheme {
  double dt = 1e-3;
};

/// Exact kinetic flow over dt: spectral multiplier exp(-i eps |k|^2 dt / 2).
Field linear_free_propagate(const Field& f, double dt, double eps);

/// Exact linear Stark evolution from t0 to t1 by composition: pull back to
/// the free frame at t0, free-propagate, push forward at t1. Unitary.
Field linear_stark_propagate(const Field& f, double t0, double t1, const Problem& p);

/// mu (K_gamma * |f|^2) by spectral convolution; the kernel is |x|^{-gamma}
/// restricted to the box with the one-cell cutoff K(0) = dx^{-gamma}.
Field hartree_potential(const Field& f, double mu, double gamma);

/// Exact potential/nonlinear sub-flow: multiply by
/// exp(-i dt (E.x [stark] + lambda |f|^{2 sigma} + hartree) / eps).
Field nonlinear_phase_step(const Field& f, double dt, const Problem& p);

/// nonlinear_phase_step(dt/2) -> linear_free_propagate(dt) ->
/// nonlinear_phase_step(dt/2). The Stark potential is the sampled E.x on the
/// centered box; validity rests on the containment guards.
Field strang_step(const Field& f, double dt, const Problem& p);

enum class StopReason { completed, blowup_triggered, guard_boundary, guard_spectral, non_finite };
const char* to_string(StopReason r);

struct Trajectory {
  Problem problem;
  int dim = 1;
  std::vector<double> times;
  std::vector<DiagnosticsRecord> records;
  std::vector<Field> snapshots;  // aligned with times when kept
  StopReason stop = StopReason::completed;
  double stop_time = 0.0;
  BlowupMonitor monitor;
};

struct RunOptions {
  int sample_every = 1;
  bool keep_snapshots = false;
  Guards guards{};
  bool abort_on_trigger = true;
  std::function<void(const Field&, const DiagnosticsRecord&)> observer;
};

/// Steps from t0 to T (either direction), sampling diagnostics every
/// sample_every steps; aborts early on monitor trigger, guard violation, or
/// non-finite data, recording the stop reason. Throws GuardError if the
/// step-size bound or the wavenumber headroom margin
/// (k_occupied + |E| |T - t0| / eps <= 0.8 k_Nyquist) fails up front.
Trajectory propagate(const Field& f0, double t0, double T, const StepScheme& scheme,
                     const Problem& p, const RunOptions& opts = {});

}  // namespace starknls
