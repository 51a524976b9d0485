#include "starknls/propagator.hpp"

#include "fft.hpp"
#include "starknls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace starknls {

namespace {

Complex unit_phase(double angle) { return Complex{std::cos(angle), std::sin(angle)}; }

void require_grid(const Field& f, const char* who) {
  if (!f.grid || f.values.size() != f.grid->size())
    throw std::invalid_argument(std::string(who) + ": invalid field");
}

std::size_t axis_index(const Grid& g, int axis, std::size_t idx) {
  const std::size_t n1 = g.dim() == 2 ? static_cast<std::size_t>(g.points(1)) : 1;
  return (axis == 0) ? idx / n1 : idx % n1;
}

// |x|^{-gamma} sampled at wrapped displacements, K(0) = dx^{-gamma}.
std::vector<Complex> hartree_kernel(const Grid& g, double gamma) {
  if (g.dim() == 2 && g.spacing(0) != g.spacing(1))
    throw std::invalid_argument("hartree_potential: requires equal spacing on both axes");
  std::vector<Complex> kernel(g.size());
  const double dx = g.spacing(0);
  for (std::size_t idx = 0; idx < kernel.size(); ++idx) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t ia = axis_index(g, a, idx);
      const int n = g.points(a);
      const long m = (static_cast<long>(ia) <= n / 2) ? static_cast<long>(ia)
                                                      : static_cast<long>(ia) - n;
      const double r = static_cast<double>(m) * g.spacing(a);
      r2 += r * r;
    }
    const double r = std::sqrt(r2);
    kernel[idx] = Complex{(r == 0.0) ? std::pow(dx, -gamma) : std::pow(r, -gamma), 0.0};
  }
  return kernel;
}

// mu (K * |f|^2) via the convolution theorem with the precomputed raw DFT
// of the kernel; writes the real potential into `out`.
void hartree_apply(const Field& f, double mu, const std::vector<Complex>& kernel_hat,
                   std::vector<double>& out, std::vector<Complex>& work_a,
                   std::vector<Complex>& work_b) {
  const Grid& g = *f.grid;
  work_a.resize(g.size());
  work_b.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) work_a[i] = Complex{std::norm(f.values[i]), 0.0};
  g.plan().forward(work_a.data(), work_b.data());
  for (std::size_t i = 0; i < g.size(); ++i) work_b[i] *= kernel_hat[i];
  g.plan().backward(work_b.data(), work_a.data());
  const double scale = mu * g.cell_volume() / static_cast<double>(g.size());
  out.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = work_a[i].real() * scale;
}

// Working state for a run: cached kinetic multiplier, sampled potential,
// kernel spectrum.
struct Stepper {
  const Grid& g;
  const Problem& p;
  double dt;
  std::vector<Complex> kinetic;
  std::vector<double> potential;     // E.x, empty if no field
  std::vector<Complex> kernel_hat;   // raw DFT of hartree kernel, empty if none
  std::vector<Complex> work_a, work_b;
  std::vector<double> hartree_vals;

  Stepper(const Grid& grid, const Problem& prob, double step) : g(grid), p(prob), dt(step) {
    kinetic.resize(g.size());
    const std::size_t n1 = g.dim() == 2 ? static_cast<std::size_t>(g.points(1)) : 1;
    for (std::size_t idx = 0; idx < kinetic.size(); ++idx) {
      double k2 = 0.0;
      for (int a = 0; a < g.dim(); ++a) {
        const std::size_t ia = (a == 0) ? idx / n1 : idx % n1;
        const double k = g.wavenumbers(a)[ia];
        k2 += k * k;
      }
      kinetic[idx] = unit_phase(-0.5 * p.epsilon * k2 * dt);
    }
    if (p.has_field()) {
      const auto e = p.effective_field();
      potential.resize(g.size());
      for (std::size_t idx = 0; idx < potential.size(); ++idx) {
        double ex = 0.0;
        for (int a = 0; a < g.dim(); ++a)
          ex += e[static_cast<std::size_t>(a)] * g.coordinates(a)[axis_index(g, a, idx)];
        potential[idx] = ex;
      }
    }
    if (p.hartree && p.hartree->mu != 0.0) {
      auto kernel = hartree_kernel(g, p.hartree->gamma);
      kernel_hat.resize(g.size());
      g.plan().forward(kernel.data(), kernel_hat.data());
    }
    work_a.resize(g.size());
    work_b.resize(g.size());
  }

  void phase_half(Field& u, double h) {
    const bool with_v = !potential.empty();
    const bool with_h = !kernel_hat.empty();
    if (with_h) hartree_apply(u, p.hartree->mu, kernel_hat, hartree_vals, work_a, work_b);
    const double inv_eps = 1.0 / p.epsilon;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      double pot = p.lambda * detail::pow_abs2(std::norm(u.values[i]), p.sigma);
      if (with_v) pot += potential[i];
      if (with_h) pot += hartree_vals[i];
      u.values[i] *= unit_phase(-h * pot * inv_eps);
    }
  }

  void kinetic_full(Field& u) {
    g.plan().forward(u.values.data(), work_a.data());
    for (std::size_t i = 0; i < work_a.size(); ++i) work_a[i] *= kinetic[i];
    g.plan().backward(work_a.data(), u.values.data());
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& z : u.values) z *= scale;
  }

  void step(Field& u) {
    phase_half(u, 0.5 * dt);
    kinetic_full(u);
    phase_half(u, 0.5 * dt);
  }
};

// Smallest K per axis such that spectral mass at |k| > K is at or below
// tail_eps of the total.
std::array<double, 2> occupied_wavenumber(const Field& f, double tail_eps) {
  const Grid& g = *f.grid;
  std::vector<Complex> hat(g.size());
  g.plan().forward(f.values.data(), hat.data());
  std::array<double, 2> occ{0.0, 0.0};
  for (int a = 0; a < g.dim(); ++a) {
    const int n = g.points(a);
    std::vector<double> level(static_cast<std::size_t>(n / 2 + 1), 0.0);
    double total = 0.0;
    for (std::size_t idx = 0; idx < hat.size(); ++idx) {
      const std::size_t ia = axis_index(g, a, idx);
      const long m = (static_cast<long>(ia) < n / 2) ? static_cast<long>(ia)
                                                     : std::labs(static_cast<long>(ia) - n);
      const double w = std::norm(hat[idx]);
      level[static_cast<std::size_t>(m)] += w;
      total += w;
    }
    double tail = 0.0;
    int l_occ = 0;
    for (int l = n / 2; l >= 0; --l) {
      tail += level[static_cast<std::size_t>(l)];
      if (tail > tail_eps * total) {
        l_occ = l;
        break;
      }
    }
    occ[static_cast<std::size_t>(a)] = l_occ * 2.0 * std::numbers::pi / g.length(a);
  }
  return occ;
}

}  // namespace

Field linear_free_propagate(const Field& f, double dt, double eps) {
  require_grid(f, "linear_free_propagate");
  const Grid& g = *f.grid;
  std::vector<Complex> hat(g.size());
  g.plan().forward(f.values.data(), hat.data());
  const std::size_t n1 = g.dim() == 2 ? static_cast<std::size_t>(g.points(1)) : 1;
  for (std::size_t idx = 0; idx < hat.size(); ++idx) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t ia = (a == 0) ? idx / n1 : idx % n1;
      const double k = g.wavenumbers(a)[ia];
      k2 += k * k;
    }
    hat[idx] *= unit_phase(-0.5 * eps * k2 * dt);
  }
  Field out(f.grid, std::vector<Complex>(g.size()),
            f.time_tag ? std::optional<double>(*f.time_tag + dt) : std::nullopt);
  g.plan().backward(hat.data(), out.values.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& z : out.values) z *= scale;
  return out;
}

Field linear_stark_propagate(const Field& f, double t0, double t1, const Problem& p) {
  require_grid(f, "linear_stark_propagate");
  Field v = ah_inverse(f, StarkFrame::at(t0, p));
  v = linear_free_propagate(v, t1 - t0, p.epsilon);
  Field u = ah_forward(v, StarkFrame::at(t1, p));
  u.time_tag = t1;
  return u;
}

Field hartree_potential(const Field& f, double mu, double gamma) {
  require_grid(f, "hartree_potential");
  const Grid& g = *f.grid;
  if (!(gamma > 0.0) || !(gamma < static_cast<double>(g.dim())))
    throw std::invalid_argument("hartree_potential: gamma must lie in (0, n)");
  Field out(f.grid, Complex{0.0, 0.0}, f.time_tag);
  if (mu == 0.0) return out;
  auto kernel = hartree_kernel(g, gamma);
  std::vector<Complex> kernel_hat(g.size());
  g.plan().forward(kernel.data(), kernel_hat.data());
  std::vector<double> vals;
  std::vector<Complex> wa, wb;
  hartree_apply(f, mu, kernel_hat, vals, wa, wb);
  for (std::size_t i = 0; i < vals.size(); ++i) out.values[i] = Complex{vals[i], 0.0};
  return out;
}

Field nonlinear_phase_step(const Field& f, double dt, const Problem& p) {
  require_grid(f, "nonlinear_phase_step");
  Stepper s(*f.grid, p, dt);
  Field out = f;
  s.phase_half(out, dt);
  return out;
}

Field strang_step(const Field& f, double dt, const Problem& p) {
  require_grid(f, "strang_step");
  Stepper s(*f.grid, p, dt);
  Field out = f;
  s.step(out);
  if (out.time_tag) *out.time_tag += dt;
  return out;
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::completed: return "completed";
    case StopReason::blowup_triggered: return "blowup_triggered";
    case StopReason::guard_boundary: return "guard_boundary";
    case StopReason::guard_spectral: return "guard_spectral";
    case StopReason::non_finite: return "non_finite";
  }
  return "unknown";
}

Trajectory propagate(const Field& f0, double t0, double T, const StepScheme& scheme,
                     const Problem& p, const RunOptions& opts) {
  require_grid(f0, "propagate");
  const Grid& g = *f0.grid;
  p.validate(g.dim());
  if (!(scheme.dt > 0.0)) throw std::invalid_argument("propagate: dt must be positive");
  if (opts.sample_every < 1) throw std::invalid_argument("propagate: sample_every must be >= 1");

  Trajectory traj;
  traj.problem = p;
  traj.dim = g.dim();
  traj.monitor.grad_threshold_factor = opts.guards.grad_threshold_factor;

  auto sample = [&](const Field& u, double t) -> bool {
    DiagnosticsRecord rec = record(u, t, p);
    traj.times.push_back(t);
    traj.records.push_back(rec);
    if (opts.keep_snapshots) traj.snapshots.push_back(u);
    if (opts.observer) opts.observer(u, rec);
    if (!std::isfinite(rec.mass) || !std::isfinite(rec.grad_norm)) {
      traj.stop = StopReason::non_finite;
      traj.stop_time = t;
      return false;
    }
    traj.monitor = update_blowup_monitor(traj.monitor, rec);
    if (traj.monitor.triggered && opts.abort_on_trigger) {
      traj.stop = StopReason::blowup_triggered;
      traj.stop_time = traj.monitor.t_trigger;
      return false;
    }
    if (rec.boundary_mass > opts.guards.boundary_mass_max) {
      traj.stop = StopReason::guard_boundary;
      traj.stop_time = t;
      return false;
    }
    if (rec.spectral_tail > opts.guards.spectral_tail_max) {
      traj.stop = StopReason::guard_spectral;
      traj.stop_time = t;
      return false;
    }
    return true;
  };

  if (T == t0) {
    Field u = f0;
    u.time_tag = t0;
    sample(u, t0);
    traj.stop_time = t0;
    return traj;
  }

  const double span = std::abs(T - t0);
  const long n_steps = std::max(1L, std::lround(span / scheme.dt));
  const double dt = (T - t0) / static_cast<double>(n_steps);

  // accuracy guard: per-step kinetic phase rotation must stay below pi
  if (std::abs(dt) * p.epsilon * g.max_k_squared() / 2.0 >= std::numbers::pi)
    throw GuardError("propagate: dt violates the phase-rotation bound dt*eps*kmax^2/2 < pi");

  // wavenumber headroom: the field drift tE/eps must keep the spectrum
  // inside 0.8 of Nyquist
  const auto e = p.effective_field();
  const auto occ = occupied_wavenumber(f0, opts.guards.spectral_tail_max);
  for (int a = 0; a < g.dim(); ++a) {
    const double drift = std::abs(e[static_cast<std::size_t>(a)]) * span / p.epsilon;
    if (occ[static_cast<std::size_t>(a)] + drift > 0.8 * g.nyquist(a))
      throw GuardError("propagate: wavenumber margin exceeded on axis " + std::to_string(a) +
                       "; enlarge N or shorten the horizon");
  }

  Field u = f0;
  u.time_tag = t0;
  if (!sample(u, t0)) return traj;

  Stepper stepper(g, p, dt);
  for (long i = 1; i <= n_steps; ++i) {
    stepper.step(u);
    const double t = t0 + static_cast<double>(i) * dt;
    u.time_tag = t;
    const Complex probe = u.values[0];
    if (!std::isfinite(probe.real()) || !std::isfinite(probe.imag())) {
      traj.stop = StopReason::non_finite;
      traj.stop_time = t;
      return traj;
    }
    if (i % static_cast<long>(opts.sample_every) == 0 || i == n_steps) {
      if (!sample(u, t)) return traj;
    }
  }
  traj.stop = StopReason::completed;
  traj.stop_time = T;
  return traj;
}

}  // namespace starknls
