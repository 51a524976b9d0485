#pragma once

#include "starknls/field.hpp"

#include <array>
#include <optional>

namespace starknls {

struct HartreeTerm {
  double mu = 0.0;
  double gamma = 0.5;  // kernel exponent, 0 < gamma < n
};

/// Physical configuration: which equation is solved and with what
/// coefficients. stark_on selects the linear potential E.x; with E = 0 (or
/// stark_on = false) every operation degenerates to the potential-free
/// equation exactly.
struct Problem {
  double epsilon = 1.0;  // in (0, 1]
  double lambda = 0.0;   // < 0 focusing, > 0 repulsive
  double sigma = 1.0;    // nonlinearity power, > 0
  std::array<double, 2> field_strength{0.0, 0.0};
  std::optional<HartreeTerm> hartree;
  bool stark_on = false;

  std::array<double, 2> effective_field() const;
  bool has_field() const;
  double field_norm2() const;  // |E|^2 of the effective field
  Problem free_counterpart() const;
  void validate(int dim) const;  // throws std::invalid_argument
};

struct Guards {
  double boundary_mass_max = 1e-8;
  double spectral_tail_max = 1e-8;
  double grad_threshold_factor = 20.0;
};

struct InitialData {
  enum class Kind { gaussian, gaussian_boosted, soliton_like, custom };
  Kind kind = Kind::gaussian;
  double amplitude = 1.0;
  std::array<double, 2> center{0.0, 0.0};
  double width = 1.0;
  std::array<double, 2> phase_slope{0.0, 0.0};  // p in exp(i p.x / eps)
  std::optional<Field> custom;
};

/// Samples the closed form on g with time_tag = 0. Containment guard
/// failure (boundary mass or spectral tail over threshold) is a hard error.
Field realize_initial_data(const InitialData& d, const GridPtr& g, double eps,
                           const Guards& guards = {});

/// (1/2)||grad u0||^2 + lambda/(sigma+1) ||u0||_{2s+2}^{2s+2}; negative
/// values meet the finite-time blow-up criterion (lambda < 0, sigma >= 2/n).
double blowup_energy_sign(const Field& u0, const Problem& p);

/// (2 - n + sqrt(n^2 + 12n + 4)) / (4n) for n in {1, 2}.
double scattering_sigma_threshold(int n);

}  // namespace starknls
