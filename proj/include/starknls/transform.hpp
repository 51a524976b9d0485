#pragma once

#include "starknls/field.hpp"
#include "starknls/problem.hpp"

#include <array>
#include <vector>

namespace starknls {

/// The (t, E, eps) triple parameterizing the moving-frame transform and the
/// J_E operator.
struct StarkFrame {
  double t = 0.0;
  std::array<double, 2> field_strength{0.0, 0.0};
  double epsilon = 1.0;

  static StarkFrame at(double t, const Problem& p);
  double field_norm2() const;
};

/// phi(t, x) = |x|^2/(2t) - (t/2) E.x - (t^3/24)|E|^2, t != 0.
Field phase_phi(const StarkFrame& fr, const GridPtr& g);
std::vector<double> phase_phi_values(const StarkFrame& fr, const Grid& g);

/// Max-norm over the inner 80% of the box of
/// d_t phi + |grad phi|^2 / 2 + E.x, all derivatives from the closed form.
double eikonal_residual(const StarkFrame& fr, const GridPtr& g);

/// Free-frame state -> Stark-frame state: translate by +t^2 E/2, then
/// multiply by exp(-i (t E.x + t^3 |E|^2 / 6)/eps).
Field ah_forward(const Field& v, const StarkFrame& fr);
/// Exact inverse of ah_forward: divide the phase out first, then translate
/// by -t^2 E/2. Pointwise this equals u(x - t^2 E/2) exp(i (t E.x - t^3 |E|^2 / 3)/eps).
Field ah_inverse(const Field& u, const StarkFrame& fr);

/// J_E(t) u, component a: (x_a/eps) u + i t d_a u - (t^2/(2 eps)) E_a u.
std::vector<Field> j_e_direct(const Field& u, const StarkFrame& fr);
/// Conjugated form i t e^{i phi/eps} grad(e^{-i phi/eps} u), t != 0. The
/// conjugated product must stay band-limited; checked against tail_guard.
std::vector<Field> j_e_conjugated(const Field& u, const StarkFrame& fr,
                                  double tail_guard = 1e-8);
/// (t E - i grad) u, componentwise.
std::vector<Field> shifted_momentum(const Field& u, const StarkFrame& fr);

/// L2 norm of J_E F(w) - [dF/dz J_E w - dF/dzbar conj(J_E w)] for
/// F(z) = lambda |z|^{2 sigma} z, both sides via j_e_direct.
double gauge_chain_rule_residual(const Field& w, const StarkFrame& fr,
                                 double lambda, double sigma);

/// sqrt(||u||^2 + ||grad u||^2 + ||x u||^2); containment-guarded.
double sigma_norm(const Field& u, double boundary_guard = 1e-8);
double sigma_distance(const Field& a, const Field& b, double boundary_guard = 1e-8);

namespace detail {
/// Test hook: conjugated J_E with an externally supplied phase table.
std::vector<Field> j_e_conjugated_with_phase(const Field& u, double t, double eps,
                                             const std::vector<double>& phi);
/// Test hook: eikonal residual with the phase gradient offset by +1 per axis
/// (the phi + x negative control).
double eikonal_residual_perturbed(const StarkFrame& fr, const GridPtr& g);
}  // namespace detail

}  // namespace starknls
