#include "starknls/field.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starknls {

namespace {

void require_match(const Field& f) {
  if (!f.grid) throw std::invalid_argument("Field: missing grid");
  if (f.values.size() != f.grid->size())
    throw std::invalid_argument("Field: values length does not match grid size");
}

void require_same_grid(const Field& a, const Field& b) {
  require_match(a);
  require_match(b);
  if (!a.grid->same_layout(*b.grid))
    throw std::invalid_argument("Field: operands live on different grids");
}

// Row-major with the last axis fastest: idx = i0 * n1 + i1.
struct IndexSplit {
  std::size_t n1;
  explicit IndexSplit(const Grid& g)
      : n1(g.dim() == 2 ? static_cast<std::size_t>(g.points(1)) : 1) {}
  std::size_t i0(std::size_t idx) const { return idx / n1; }
  std::size_t i1(std::size_t idx) const { return idx % n1; }
};

}  // namespace

bool all_finite(const Field& f) {
  for (const auto& z : f.values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void validate(const Field& f) {
  require_match(f);
  if (!all_finite(f)) throw std::invalid_argument("Field: non-finite samples");
}

double mass(const Field& f) {
  require_match(f);
  double s = 0.0;
  for (const auto& z : f.values) s += std::norm(z);
  return s * f.grid->cell_volume();
}

double l2_norm(const Field& f) { return std::sqrt(mass(f)); }

double lp_norm(const Field& f, double p) {
  require_match(f);
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
  double s = 0.0;
  for (const auto& z : f.values) s += detail::pow_abs2(std::norm(z), 0.5 * p);
  return std::pow(s * f.grid->cell_volume(), 1.0 / p);
}

Complex inner(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
  return s * a.grid->cell_volume();
}

double l2_distance(const Field& a, const Field& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(s * a.grid->cell_volume());
}

double max_abs(const Field& f) {
  require_match(f);
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

Field forward_dft(const Field& f) {
  require_match(f);
  Field out(f.grid, std::vector<Complex>(f.size()), f.time_tag);
  f.grid->plan().forward(f.values.data(), out.values.data());
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.grid->size()));
  for (auto& z : out.values) z *= scale;
  return out;
}

Field inverse_dft(const Field& f) {
  require_match(f);
  Field out(f.grid, std::vector<Complex>(f.size()), f.time_tag);
  f.grid->plan().backward(f.values.data(), out.values.data());
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.grid->size()));
  for (auto& z : out.values) z *= scale;
  return out;
}

std::vector<Field> spectral_gradient(const Field& f) {
  require_match(f);
  const Grid& g = *f.grid;
  std::vector<Complex> hat(f.size());
  g.plan().forward(f.values.data(), hat.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  const IndexSplit split(g);

  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(g.dim()));
  std::vector<Complex> tmp(f.size());
  for (int a = 0; a < g.dim(); ++a) {
    const auto& k = g.wavenumbers(a);
    const std::size_t nyq = static_cast<std::size_t>(g.points(a)) / 2;
    for (std::size_t idx = 0; idx < hat.size(); ++idx) {
      const std::size_t ia = (a == 0) ? split.i0(idx) : split.i1(idx);
      tmp[idx] = (ia == nyq) ? Complex{0.0, 0.0}
                             : hat[idx] * Complex{0.0, k[ia]};
    }
    Field d(f.grid, std::vector<Complex>(f.size()), f.time_tag);
    g.plan().backward(tmp.data(), d.values.data());
    for (auto& z : d.values) z *= scale;
    out.push_back(std::move(d));
  }
  return out;
}

double grad_norm(const Field& f) {
  require_match(f);
  const Grid& g = *f.grid;
  std::vector<Complex> hat(f.size());
  g.plan().forward(f.values.data(), hat.data());
  const IndexSplit split(g);
  double s = 0.0;
  for (std::size_t idx = 0; idx < hat.size(); ++idx) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t ia = (a == 0) ? split.i0(idx) : split.i1(idx);
      if (ia == static_cast<std::size_t>(g.points(a)) / 2) continue;  // Nyquist zeroed
      const double k = g.wavenumbers(a)[ia];
      k2 += k * k;
    }
    s += k2 * std::norm(hat[idx]);
  }
  // unitary spectrum carries an extra 1/size relative to the raw transform
  return std::sqrt(s * g.cell_volume() / static_cast<double>(g.size()));
}

Field spectral_translate(const Field& f, std::array<double, 2> offset) {
  require_match(f);
  const Grid& g = *f.grid;
  for (int a = 0; a < g.dim(); ++a) {
    if (!std::isfinite(offset[static_cast<std::size_t>(a)]))
      throw std::invalid_argument("spectral_translate: offset must be finite");
  }
  std::vector<Complex> hat(f.size());
  g.plan().forward(f.values.data(), hat.data());
  const IndexSplit split(g);
  for (std::size_t idx = 0; idx < hat.size(); ++idx) {
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t ia = (a == 0) ? split.i0(idx) : split.i1(idx);
      phase += g.wavenumbers(a)[ia] * offset[static_cast<std::size_t>(a)];
    }
    hat[idx] *= Complex{std::cos(phase), std::sin(phase)};
  }
  Field out(f.grid, std::vector<Complex>(f.size()), f.time_tag);
  g.plan().backward(hat.data(), out.values.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& z : out.values) z *= scale;
  return out;
}

double spectral_tail(const Field& f) {
  require_match(f);
  const Grid& g = *f.grid;
  std::vector<Complex> hat(f.size());
  g.plan().forward(f.values.data(), hat.data());
  const IndexSplit split(g);
  double total = 0.0;
  double outer = 0.0;
  for (std::size_t idx = 0; idx < hat.size(); ++idx) {
    const double m = std::norm(hat[idx]);
    total += m;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t ia = (a == 0) ? split.i0(idx) : split.i1(idx);
      const double cutoff = 0.875 * g.nyquist(a) * (1.0 - 1e-12);
      if (std::abs(g.wavenumbers(a)[ia]) >= cutoff) {
        outer += m;
        break;
      }
    }
  }
  return total > 0.0 ? outer / total : 0.0;
}

double boundary_mass(const Field& f) {
  require_match(f);
  const Grid& g = *f.grid;
  const IndexSplit split(g);
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
    const double m = std::norm(f.values[idx]);
    total += m;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t ia = (a == 0) ? split.i0(idx) : split.i1(idx);
      const double limit = 0.4 * g.length(a) * (1.0 + 1e-14);
      if (std::abs(g.coordinates(a)[ia]) > limit) {
        outside += m;
        break;
      }
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

std::array<double, 2> peak_location(const Field& f) {
  require_match(f);
  const Grid& g = *f.grid;
  const IndexSplit split(g);
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
    const double m = std::norm(f.values[idx]);
    if (m > best_val) {
      best_val = m;
      best = idx;
    }
  }

  std::array<std::size_t, 2> ia{split.i0(best), split.i1(best)};
  std::array<double, 2> peak{0.0, 0.0};
  for (int a = 0; a < g.dim(); ++a) {
    const int n = g.points(a);
    const std::size_t i = ia[static_cast<std::size_t>(a)];
    const std::size_t prev = (i + static_cast<std::size_t>(n) - 1) % static_cast<std::size_t>(n);
    const std::size_t next = (i + 1) % static_cast<std::size_t>(n);
    auto at = [&](std::size_t j) {
      std::array<std::size_t, 2> id = ia;
      id[static_cast<std::size_t>(a)] = j;
      const std::size_t idx = (g.dim() == 2) ? id[0] * static_cast<std::size_t>(g.points(1)) + id[1] : id[0];
      return std::norm(f.values[idx]);
    };
    const double fm = at(prev), f0 = at(i), fp = at(next);
    const double denom = fp - 2.0 * f0 + fm;
    double delta = 0.0;
    if (std::abs(denom) > 1e-30 * std::max({fm, f0, fp, 1e-300})) {
      delta = 0.5 * (fm - fp) / denom;
      delta = std::clamp(delta, -0.5, 0.5);
    }
    peak[static_cast<std::size_t>(a)] =
        g.coordinates(a)[i] + delta * g.spacing(a);
  }
  return peak;
}

}  // namespace starknls
