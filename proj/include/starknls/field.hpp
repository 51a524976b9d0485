#pragma once

#include "starknls/grid.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace starknls {

using Complex = std::complex<double>;

/// Complex-valued samples on a Grid at one time instant. Operations treat
/// Fields as immutable values and return new ones.
struct Field {
  GridPtr grid;
  std::vector<Complex> values;
  std::optional<double> time_tag;

  Field() = default;
  explicit Field(GridPtr g, Complex fill = Complex{0.0, 0.0},
                 std::optional<double> t = std::nullopt)
      : grid(std::move(g)), values(grid ? grid->size() : 0, fill), time_tag(t) {}
  Field(GridPtr g, std::vector<Complex> v, std::optional<double> t = std::nullopt)
      : grid(std::move(g)), values(std::move(v)), time_tag(t) {}

  std::size_t size() const { return values.size(); }
};

bool all_finite(const Field& f);
/// Throws std::invalid_argument on grid/size mismatch or non-finite entries.
void validate(const Field& f);

// Integrals use the rectangle rule, sum * dx^n.
double mass(const Field& f);  // ||f||_L2^2
double l2_norm(const Field& f);
double lp_norm(const Field& f, double p);
Complex inner(const Field& a, const Field& b);  // integral conj(a) b
double l2_distance(const Field& a, const Field& b);
double max_abs(const Field& f);

// Unitary-normalized transform pair.
Field forward_dft(const Field& f);
Field inverse_dft(const Field& f);

/// Per-axis spectral derivative, Nyquist mode zeroed.
std::vector<Field> spectral_gradient(const Field& f);
/// ||grad f||_L2 from the spectrum, same Nyquist convention.
double grad_norm(const Field& f);
/// g(x) = f(x + offset), periodic, exact for band-limited f.
Field spectral_translate(const Field& f, std::array<double, 2> offset);
/// Fraction of spectral L2 mass in the outer 1/8 of wavenumbers per axis.
double spectral_tail(const Field& f);
/// Fraction of mass outside the central 80% of the box (union over axes).
double boundary_mass(const Field& f);
/// argmax of |f|^2 with per-axis parabolic refinement of the discrete peak.
std::array<double, 2> peak_location(const Field& f);

namespace detail {

inline double pow_abs2(double a2, double sigma) {
  if (sigma == 1.0) return a2;
  if (sigma == 2.0) return a2 * a2;
  if (sigma == 0.5) return std::sqrt(a2);
  return std::pow(a2, sigma);
}

}  // namespace detail

}  // namespace starknls
