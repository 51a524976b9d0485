#include "starknls/diagnostics.hpp"

#include "starknls/errors.hpp"
#include "starknls/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starknls {

double delta_r(int n, double r) {
  if (n != 1 && n != 2) throw std::invalid_argument("delta_r: n must be 1 or 2");
  if (!(r >= 2.0)) throw std::invalid_argument("delta_r: r must be >= 2");
  return n * (0.5 - 1.0 / r);
}

double dispersive_ratio(const Field& u, const StarkFrame& fr, double r) {
  if (fr.t == 0.0) throw std::invalid_argument("dispersive_ratio: t must be nonzero");
  const double l2 = l2_norm(u);
  if (l2 == 0.0) throw std::invalid_argument("dispersive_ratio: zero field");
  const double delta = delta_r(u.grid->dim(), r);
  const auto je = j_e_direct(u, fr);
  double je2 = 0.0;
  for (const auto& comp : je) je2 += mass(comp);
  const double je_norm = std::sqrt(je2);
  return lp_norm(u, r) * std::pow(std::abs(fr.t), delta) /
         (std::pow(l2, 1.0 - delta) * std::pow(je_norm, delta));
}

double pc_quantity(const Field& u, const StarkFrame& fr, const Problem& p) {
  const auto je = j_e_direct(u, fr);
  double je2 = 0.0;
  for (const auto& comp : je) je2 += mass(comp);
  const double q = 2.0 * p.sigma + 2.0;
  const double lr = lp_norm(u, q);
  return 0.5 * je2 + p.lambda * fr.t * fr.t / (p.sigma + 1.0) * std::pow(lr, q);
}

DiagnosticsRecord record(const Field& u, double t, const Problem& p) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.mass = mass(u);

  const Grid& g = *u.grid;
  const StarkFrame fr = StarkFrame::at(t, p);
  const auto e = fr.field_strength;
  const double eps = p.epsilon;

  auto grads = spectral_gradient(u);
  double gn2 = 0.0;
  for (const auto& comp : grads) gn2 += mass(comp);
  rec.grad_norm = std::sqrt(gn2);

  const double q = 2.0 * p.sigma + 2.0;
  rec.lr_norm_2s2 = lp_norm(u, q);
  const double lr_q = std::pow(rec.lr_norm_2s2, q);

  const std::size_t n1 = g.dim() == 2 ? static_cast<std::size_t>(g.points(1)) : 1;
  double je2 = 0.0;
  double shifted2 = 0.0;
  double potential_term = 0.0;
  double xw2 = 0.0;
  std::array<double, 2> momentum{0.0, 0.0};
  for (std::size_t idx = 0; idx < u.values.size(); ++idx) {
    const Complex z = u.values[idx];
    const double abs2 = std::norm(z);
    double ex = 0.0;
    double x2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t ia = (a == 0) ? idx / n1 : idx % n1;
      const double x = g.coordinates(a)[ia];
      const double ea = e[static_cast<std::size_t>(a)];
      ex += ea * x;
      x2 += x * x;
      const Complex du = grads[static_cast<std::size_t>(a)].values[idx];
      const Complex je = (x / eps - 0.5 * t * t * ea / eps) * z + Complex{0.0, t} * du;
      const Complex sm = t * ea * z - Complex{0.0, 1.0} * du;
      je2 += std::norm(je);
      shifted2 += std::norm(sm);
      momentum[static_cast<std::size_t>(a)] += (std::conj(z) * je).real();
    }
    potential_term += ex * abs2;
    xw2 += x2 * abs2;
  }
  const double vol = g.cell_volume();
  je2 *= vol;
  shifted2 *= vol;
  potential_term *= vol;
  xw2 *= vol;
  momentum[0] *= vol;
  momentum[1] *= vol;

  const double nl = p.lambda / (p.sigma + 1.0) * lr_q;
  rec.natural_energy = 0.5 * gn2 + nl + potential_term;
  rec.shifted_energy = 0.5 * shifted2 + nl;
  rec.pc_quantity = 0.5 * je2 + p.lambda * t * t / (p.sigma + 1.0) * lr_q;
  rec.je_norm = std::sqrt(je2);
  rec.momentum_invariant = momentum;
  rec.boundary_mass = boundary_mass(u);
  rec.spectral_tail = spectral_tail(u);
  rec.peak_location = peak_location(u);
  if (rec.boundary_mass <= 1e-8)
    rec.sigma_norm = std::sqrt(rec.mass + gn2 + xw2);
  return rec;
}

BlowupMonitor update_blowup_monitor(BlowupMonitor m, const DiagnosticsRecord& rec) {
  if (!m.primed) {
    m.primed = true;
    m.grad_reference = rec.grad_norm;
    m.last_t = rec.t;
    m.last_ratio = m.grad_reference > 0.0 ? 1.0 : 0.0;
    return m;
  }
  if (rec.t == m.last_t)
    throw std::invalid_argument("update_blowup_monitor: duplicate record time");
  const int dir = rec.t > m.last_t ? 1 : -1;
  if (m.run_direction == 0)
    m.run_direction = dir;
  else if (dir != m.run_direction)
    throw std::invalid_argument("update_blowup_monitor: records out of time order");

  if (m.grad_reference > 0.0) {
    const double ratio = rec.grad_norm / m.grad_reference;
    if (!m.triggered && ratio >= m.grad_threshold_factor) {
      m.triggered = true;
      double frac = 1.0;
      if (ratio > m.last_ratio)
        frac = (m.grad_threshold_factor - m.last_ratio) / (ratio - m.last_ratio);
      frac = std::clamp(frac, 0.0, 1.0);
      m.t_trigger = m.last_t + frac * (rec.t - m.last_t);
      m.peak_at_trigger = rec.peak_location;
    }
    m.last_ratio = ratio;
  }
  m.last_t = rec.t;
  return m;
}

std::vector<std::pair<double, double>> pc_law_residual(const Trajectory& traj) {
  const auto& times = traj.times;
  const auto& recs = traj.records;
  if (recs.size() < 3)
    throw std::invalid_argument("pc_law_residual: need at least 3 samples");
  const double dt = times[1] - times[0];
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    if (std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * std::abs(dt))
      throw std::invalid_argument("pc_law_residual: sample cadence not uniform");
  }
  const Problem& p = traj.problem;
  const double n = static_cast<double>(traj.dim);
  const double q = 2.0 * p.sigma + 2.0;
  std::vector<std::pair<double, double>> out;
  out.reserve(recs.size() - 2);
  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    const double fd = (recs[i + 1].pc_quantity - recs[i - 1].pc_quantity) / (2.0 * dt);
    const double rhs = p.lambda * times[i] / (p.sigma + 1.0) * (2.0 - n * p.sigma) *
                       std::pow(recs[i].lr_norm_2s2, q);
    out.emplace_back(times[i], fd - rhs);
  }
  return out;
}

ScatteringSeries scattering_residual(const Trajectory& traj, const Problem& p) {
  if (traj.snapshots.empty() || traj.snapshots.size() != traj.times.size())
    throw std::invalid_argument("scattering_residual: trajectory must keep snapshots");
  ScatteringSeries out;
  std::vector<Field> ws;
  for (std::size_t j = 0; j < traj.snapshots.size(); ++j) {
    Field w = linear_stark_propagate(traj.snapshots[j], traj.times[j], 0.0, p);
    // a guard failure ends the series; the partial series is still useful
    try {
      (void)sigma_norm(w);
    } catch (const GuardError&) {
      break;
    }
    ws.push_back(std::move(w));
    out.times.push_back(traj.times[j]);
  }
  if (ws.empty()) return out;
  for (std::size_t j = 0; j + 1 < ws.size(); ++j)
    out.cauchy.push_back(sigma_distance(ws[j + 1], ws[j]));
  const Field& proxy = ws.back();
  for (std::size_t j = 0; j < ws.size(); ++j)
    out.to_proxy.push_back(sigma_distance(ws[j], proxy));
  return out;
}

}  // namespace starknls
