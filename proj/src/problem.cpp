#include "starknls/problem.hpp"

#include "starknls/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace starknls {

std::array<double, 2> Problem::effective_field() const {
  if (!stark_on) return {0.0, 0.0};
  return field_strength;
}

bool Problem::has_field() const {
  const auto e = effective_field();
  return e[0] != 0.0 || e[1] != 0.0;
}

double Problem::field_norm2() const {
  const auto e = effective_field();
  return e[0] * e[0] + e[1] * e[1];
}

Problem Problem::free_counterpart() const {
  Problem q = *this;
  q.stark_on = false;
  return q;
}

void Problem::validate(int dim) const {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw std::invalid_argument("Problem: epsilon must lie in (0, 1]");
  if (!(sigma > 0.0)) throw std::invalid_argument("Problem: sigma must be positive");
  if (!std::isfinite(lambda)) throw std::invalid_argument("Problem: lambda must be finite");
  for (int a = 0; a < dim; ++a) {
    if (!std::isfinite(field_strength[static_cast<std::size_t>(a)]))
      throw std::invalid_argument("Problem: E must be finite");
  }
  if (hartree) {
    if (!(hartree->gamma > 0.0) || !(hartree->gamma < static_cast<double>(dim)))
      throw std::invalid_argument("Problem: hartree gamma must lie in (0, n)");
    if (!std::isfinite(hartree->mu))
      throw std::invalid_argument("Problem: hartree mu must be finite");
  }
}

Field realize_initial_data(const InitialData& d, const GridPtr& g, double eps,
                           const Guards& guards) {
  if (!g) throw std::invalid_argument("realize_initial_data: missing grid");
  if (d.kind == InitialData::Kind::custom) {
    if (!d.custom) throw std::invalid_argument("realize_initial_data: custom kind without field");
    Field f = *d.custom;
    if (!f.grid || !f.grid->same_layout(*g))
      throw std::invalid_argument("realize_initial_data: custom field grid mismatch");
    validate(f);
    f.time_tag = 0.0;
    const double bm = boundary_mass(f);
    if (bm > guards.boundary_mass_max)
      throw GuardError("realize_initial_data: boundary mass " + std::to_string(bm) + " over threshold");
    const double st = spectral_tail(f);
    if (st > guards.spectral_tail_max)
      throw GuardError("realize_initial_data: spectral tail " + std::to_string(st) + " over threshold");
    return f;
  }

  if (!(d.width > 0.0)) throw std::invalid_argument("realize_initial_data: width must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("realize_initial_data: eps must be positive");

  const Grid& grid = *g;
  Field f(g, Complex{0.0, 0.0}, 0.0);
  const std::size_t n1 = grid.dim() == 2 ? static_cast<std::size_t>(grid.points(1)) : 1;
  for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
    const std::size_t i0 = idx / n1;
    const std::size_t i1 = idx % n1;
    double r2 = 0.0;
    double px = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const std::size_t ia = (a == 0) ? i0 : i1;
      const double x = grid.coordinates(a)[ia];
      const double dxc = x - d.center[static_cast<std::size_t>(a)];
      r2 += dxc * dxc;
      px += d.phase_slope[static_cast<std::size_t>(a)] * x;
    }
    double amp = 0.0;
    switch (d.kind) {
      case InitialData::Kind::gaussian:
      case InitialData::Kind::gaussian_boosted:
        amp = d.amplitude * std::exp(-r2 / (2.0 * d.width * d.width));
        break;
      case InitialData::Kind::soliton_like:
        amp = d.amplitude / std::cosh(std::sqrt(r2) / d.width);
        break;
      case InitialData::Kind::custom:
        break;  // handled above
    }
    const double phase = px / eps;
    f.values[idx] = amp * Complex{std::cos(phase), std::sin(phase)};
  }

  if (d.amplitude != 0.0) {
    const double bm = boundary_mass(f);
    if (bm > guards.boundary_mass_max)
      throw GuardError("realize_initial_data: boundary mass " + std::to_string(bm) + " over threshold");
    const double st = spectral_tail(f);
    if (st > guards.spectral_tail_max)
      throw GuardError("realize_initial_data: spectral tail " + std::to_string(st) + " over threshold");
  }
  return f;
}

double blowup_energy_sign(const Field& u0, const Problem& p) {
  const double gn = grad_norm(u0);
  const double q = 2.0 * p.sigma + 2.0;
  const double lr = lp_norm(u0, q);
  return 0.5 * gn * gn + p.lambda / (p.sigma + 1.0) * std::pow(lr, q);
}

double scattering_sigma_threshold(int n) {
  if (n != 1 && n != 2)
    throw std::invalid_argument("scattering_sigma_threshold: n must be 1 or 2");
  const double nn = static_cast<double>(n);
  return (2.0 - nn + std::sqrt(nn * nn + 12.0 * nn + 4.0)) / (4.0 * nn);
}

}  // namespace starknls
