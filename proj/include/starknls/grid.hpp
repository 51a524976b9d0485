#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace starknls {

namespace detail {
class FftPlan;
}

/// Uniform periodic grid on the centered box [-L/2, L/2)^n, n = 1 or 2.
/// Coordinates are x_j = -L/2 + j*dx; wavenumbers follow standard DFT
/// ordering, k_m = 2*pi*m/L with m in {0, ..., N/2-1, -N/2, ..., -1}.
/// N must be a power of two, N >= 8. Storage is row-major with the last
/// axis fastest.
class Grid {
 public:
  Grid(int dim, std::array<int, 2> points, std::array<double, 2> lengths);
  Grid(int dim, int points, double length);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const { return dim_; }
  int points(int axis) const { return points_[static_cast<std::size_t>(axis)]; }
  double length(int axis) const { return lengths_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  double cell_volume() const { return cell_volume_; }
  std::size_t size() const { return size_; }

  const std::vector<double>& coordinates(int axis) const { return coords_[static_cast<std::size_t>(axis)]; }
  const std::vector<double>& wavenumbers(int axis) const { return waves_[static_cast<std::size_t>(axis)]; }
  /// Largest wavenumber magnitude representable on an axis, pi/dx.
  double nyquist(int axis) const;
  /// max over modes of |k|^2 (sum of per-axis Nyquist^2).
  double max_k_squared() const;

  bool same_layout(const Grid& other) const;

  const detail::FftPlan& plan() const { return *plan_; }

 private:
  int dim_;
  std::array<int, 2> points_{1, 1};
  std::array<double, 2> lengths_{0.0, 0.0};
  std::array<double, 2> spacing_{0.0, 0.0};
  double cell_volume_ = 0.0;
  std::size_t size_ = 0;
  std::array<std::vector<double>, 2> coords_;
  std::array<std::vector<double>, 2> waves_;
  std::unique_ptr<detail::FftPlan> plan_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int dim, std::array<int, 2> points, std::array<double, 2> lengths);
GridPtr make_grid(int dim, int points, double length);

}  // namespace starknls
