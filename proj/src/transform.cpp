#include "starknls/transform.hpp"

#include "starknls/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace starknls {

namespace {

Complex unit_phase(double angle) { return Complex{std::cos(angle), std::sin(angle)}; }

void require_grid(const Field& f, const char* who) {
  if (!f.grid || f.values.size() != f.grid->size())
    throw std::invalid_argument(std::string(who) + ": invalid field");
}

struct CellWalk {
  const Grid& g;
  std::size_t n1;
  explicit CellWalk(const Grid& grid)
      : g(grid), n1(grid.dim() == 2 ? static_cast<std::size_t>(grid.points(1)) : 1) {}
  double coord(int axis, std::size_t idx) const {
    const std::size_t ia = (axis == 0) ? idx / n1 : idx % n1;
    return g.coordinates(axis)[ia];
  }
};

}  // namespace

StarkFrame StarkFrame::at(double t, const Problem& p) {
  return StarkFrame{t, p.effective_field(), p.epsilon};
}

double StarkFrame::field_norm2() const {
  return field_strength[0] * field_strength[0] + field_strength[1] * field_strength[1];
}

std::vector<double> phase_phi_values(const StarkFrame& fr, const Grid& g) {
  if (fr.t == 0.0) throw std::invalid_argument("phase_phi: t must be nonzero");
  const double t = fr.t;
  const double e2 = fr.field_norm2();
  const CellWalk walk(g);
  std::vector<double> phi(g.size());
  for (std::size_t idx = 0; idx < phi.size(); ++idx) {
    double x2 = 0.0;
    double ex = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double x = walk.coord(a, idx);
      x2 += x * x;
      ex += fr.field_strength[static_cast<std::size_t>(a)] * x;
    }
    phi[idx] = x2 / (2.0 * t) - 0.5 * t * ex - t * t * t / 24.0 * e2;
  }
  return phi;
}

Field phase_phi(const StarkFrame& fr, const GridPtr& g) {
  if (!g) throw std::invalid_argument("phase_phi: missing grid");
  const auto phi = phase_phi_values(fr, *g);
  Field out(g, std::vector<Complex>(phi.size()), fr.t);
  for (std::size_t i = 0; i < phi.size(); ++i) out.values[i] = Complex{phi[i], 0.0};
  return out;
}

namespace {

double eikonal_residual_impl(const StarkFrame& fr, const Grid& g, double grad_offset) {
  if (fr.t == 0.0) throw std::invalid_argument("eikonal_residual: t must be nonzero");
  const double t = fr.t;
  const double e2 = fr.field_norm2();
  const CellWalk walk(g);
  double worst = 0.0;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    bool inner = true;
    double x2 = 0.0;
    double ex = 0.0;
    double grad2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double x = walk.coord(a, idx);
      if (std::abs(x) > 0.4 * g.length(a) * (1.0 + 1e-14)) {
        inner = false;
        break;
      }
      x2 += x * x;
      ex += fr.field_strength[static_cast<std::size_t>(a)] * x;
      const double dphi = x / t - 0.5 * t * fr.field_strength[static_cast<std::size_t>(a)] + grad_offset;
      grad2 += dphi * dphi;
    }
    if (!inner) continue;
    const double dt_phi = -x2 / (2.0 * t * t) - 0.5 * ex - t * t / 8.0 * e2;
    const double res = dt_phi + 0.5 * grad2 + ex;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace

double eikonal_residual(const StarkFrame& fr, const GridPtr& g) {
  if (!g) throw std::invalid_argument("eikonal_residual: missing grid");
  return eikonal_residual_impl(fr, *g, 0.0);
}

double detail::eikonal_residual_perturbed(const StarkFrame& fr, const GridPtr& g) {
  if (!g) throw std::invalid_argument("eikonal_residual: missing grid");
  return eikonal_residual_impl(fr, *g, 1.0);
}

// The forward map is phase-multiply after translate (u = M T v); the inverse
// peels the same factors in reverse order (v = T^-1 M^-1 u), which keeps the
// discrete composition an exact operator inverse. Pointwise the inverse
// equals u(x - t^2 E/2) exp(i (t E.x - t^3 |E|^2/3)/eps).
Field ah_forward(const Field& v, const StarkFrame& fr) {
  require_grid(v, "ah_forward");
  const double t = fr.t;
  if (t == 0.0 || fr.field_norm2() == 0.0) {
    Field out = v;
    out.time_tag = fr.t;
    return out;
  }
  const Grid& g = *v.grid;
  std::array<double, 2> shift{0.0, 0.0};
  for (int a = 0; a < g.dim(); ++a)
    shift[static_cast<std::size_t>(a)] = 0.5 * t * t * fr.field_strength[static_cast<std::size_t>(a)];
  Field out = spectral_translate(v, shift);
  const double cubic = t * t * t / 6.0 * fr.field_norm2();
  const CellWalk walk(g);
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    double ex = 0.0;
    for (int a = 0; a < g.dim(); ++a)
      ex += fr.field_strength[static_cast<std::size_t>(a)] * walk.coord(a, idx);
    out.values[idx] *= unit_phase(-(t * ex + cubic) / fr.epsilon);
  }
  out.time_tag = fr.t;
  return out;
}

Field ah_inverse(const Field& u, const StarkFrame& fr) {
  require_grid(u, "ah_inverse");
  const double t = fr.t;
  if (t == 0.0 || fr.field_norm2() == 0.0) {
    Field out = u;
    out.time_tag = fr.t;
    return out;
  }
  const Grid& g = *u.grid;
  Field w = u;
  const double cubic = t * t * t / 6.0 * fr.field_norm2();
  const CellWalk walk(g);
  for (std::size_t idx = 0; idx < w.values.size(); ++idx) {
    double ex = 0.0;
    for (int a = 0; a < g.dim(); ++a)
      ex += fr.field_strength[static_cast<std::size_t>(a)] * walk.coord(a, idx);
    w.values[idx] *= unit_phase((t * ex + cubic) / fr.epsilon);
  }
  std::array<double, 2> shift{0.0, 0.0};
  for (int a = 0; a < g.dim(); ++a)
    shift[static_cast<std::size_t>(a)] = -0.5 * t * t * fr.field_strength[static_cast<std::size_t>(a)];
  Field out = spectral_translate(w, shift);
  out.time_tag = fr.t;
  return out;
}

std::vector<Field> j_e_direct(const Field& u, const StarkFrame& fr) {
  require_grid(u, "j_e_direct");
  const Grid& g = *u.grid;
  const double t = fr.t;
  const double eps = fr.epsilon;
  auto grads = spectral_gradient(u);
  const CellWalk walk(g);
  for (int a = 0; a < g.dim(); ++a) {
    const double ea = fr.field_strength[static_cast<std::size_t>(a)];
    auto& out = grads[static_cast<std::size_t>(a)];
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
      const double x = walk.coord(a, idx);
      out.values[idx] = (x / eps - 0.5 * t * t * ea / eps) * u.values[idx] +
                        Complex{0.0, t} * out.values[idx];
    }
    out.time_tag = fr.t;
  }
  return grads;
}

std::vector<Field> detail::j_e_conjugated_with_phase(const Field& u, double t, double eps,
                                                     const std::vector<double>& phi) {
  if (t == 0.0) throw std::invalid_argument("j_e_conjugated: t must be nonzero");
  if (phi.size() != u.values.size())
    throw std::invalid_argument("j_e_conjugated: phase table size mismatch");
  Field prod = u;
  for (std::size_t idx = 0; idx < prod.values.size(); ++idx)
    prod.values[idx] *= unit_phase(-phi[idx] / eps);
  auto grads = spectral_gradient(prod);
  for (auto& comp : grads) {
    for (std::size_t idx = 0; idx < comp.values.size(); ++idx)
      comp.values[idx] *= Complex{0.0, t} * unit_phase(phi[idx] / eps);
  }
  return grads;
}

std::vector<Field> j_e_conjugated(const Field& u, const StarkFrame& fr, double tail_guard) {
  require_grid(u, "j_e_conjugated");
  if (fr.t == 0.0) throw std::invalid_argument("j_e_conjugated: t must be nonzero");
  const auto phi = phase_phi_values(fr, *u.grid);
  Field prod = u;
  for (std::size_t idx = 0; idx < prod.values.size(); ++idx)
    prod.values[idx] *= unit_phase(-phi[idx] / fr.epsilon);
  const double tail = spectral_tail(prod);
  if (tail > tail_guard)
    throw GuardError("j_e_conjugated: conjugated product spectral tail " +
                     std::to_string(tail) + " over threshold");
  return detail::j_e_conjugated_with_phase(u, fr.t, fr.epsilon, phi);
}

std::vector<Field> shifted_momentum(const Field& u, const StarkFrame& fr) {
  require_grid(u, "shifted_momentum");
  auto grads = spectral_gradient(u);
  for (int a = 0; a < u.grid->dim(); ++a) {
    const double tea = fr.t * fr.field_strength[static_cast<std::size_t>(a)];
    auto& out = grads[static_cast<std::size_t>(a)];
    for (std::size_t idx = 0; idx < out.values.size(); ++idx)
      out.values[idx] = tea * u.values[idx] - Complex{0.0, 1.0} * out.values[idx];
    out.time_tag = fr.t;
  }
  return grads;
}

double gauge_chain_rule_residual(const Field& w, const StarkFrame& fr, double lambda,
                                 double sigma) {
  require_grid(w, "gauge_chain_rule_residual");
  if (fr.t == 0.0) throw std::invalid_argument("gauge_chain_rule_residual: t must be nonzero");

  Field fw = w;
  for (std::size_t idx = 0; idx < fw.values.size(); ++idx) {
    const double a2 = std::norm(w.values[idx]);
    fw.values[idx] = lambda * detail::pow_abs2(a2, sigma) * w.values[idx];
  }
  const auto lhs = j_e_direct(fw, fr);
  const auto jw = j_e_direct(w, fr);

  double acc = 0.0;
  for (int a = 0; a < w.grid->dim(); ++a) {
    const auto& l = lhs[static_cast<std::size_t>(a)];
    const auto& j = jw[static_cast<std::size_t>(a)];
    for (std::size_t idx = 0; idx < l.values.size(); ++idx) {
      const Complex z = w.values[idx];
      const double a2 = std::norm(z);
      Complex rhs{0.0, 0.0};
      if (a2 >= 1e-28) {  // |w| >= 1e-14
        const double dz = lambda * (sigma + 1.0) * detail::pow_abs2(a2, sigma);
        const Complex dzb = lambda * sigma * z * z * detail::pow_abs2(a2, sigma - 1.0);
        rhs = dz * j.values[idx] - dzb * std::conj(j.values[idx]);
      }
      acc += std::norm(l.values[idx] - rhs);
    }
  }
  return std::sqrt(acc * w.grid->cell_volume());
}

namespace {

double sigma_norm_unguarded(const Field& u) {
  const Grid& g = *u.grid;
  const CellWalk walk(g);
  double xw = 0.0;
  for (std::size_t idx = 0; idx < u.values.size(); ++idx) {
    double x2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double x = walk.coord(a, idx);
      x2 += x * x;
    }
    xw += x2 * std::norm(u.values[idx]);
  }
  xw *= g.cell_volume();
  const double gn = grad_norm(u);
  return std::sqrt(mass(u) + gn * gn + xw);
}

}  // namespace

double sigma_norm(const Field& u, double boundary_guard) {
  require_grid(u, "sigma_norm");
  const double bm = boundary_mass(u);
  if (bm > boundary_guard)
    throw GuardError("sigma_norm: boundary mass " + std::to_string(bm) +
                     " over threshold; x-weighted norm unreliable");
  return sigma_norm_unguarded(u);
}

// The guard applies to the operands, not their difference: the difference of
// two contained states can be pure roundoff spread across the box.
double sigma_distance(const Field& a, const Field& b, double boundary_guard) {
  if (!a.grid || !b.grid || !a.grid->same_layout(*b.grid))
    throw std::invalid_argument("sigma_distance: operands live on different grids");
  const double bm = std::max(boundary_mass(a), boundary_mass(b));
  if (bm > boundary_guard)
    throw GuardError("sigma_distance: operand boundary mass " + std::to_string(bm) +
                     " over threshold");
  Field diff = a;
  for (std::size_t idx = 0; idx < diff.values.size(); ++idx)
    diff.values[idx] -= b.values[idx];
  return sigma_norm_unguarded(diff);
}

}  // namespace starknls
