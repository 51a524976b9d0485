#include "starknls/grid.hpp"

#include "fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace starknls {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, std::array<int, 2> points, std::array<double, 2> lengths)
    : dim_(dim), points_(points), lengths_(lengths) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("Grid: dimension must be 1 or 2");
  size_ = 1;
  cell_volume_ = 1.0;
  for (int a = 0; a < dim_; ++a) {
    const int n = points_[static_cast<std::size_t>(a)];
    const double len = lengths_[static_cast<std::size_t>(a)];
    if (!power_of_two(n) || n < 8)
      throw std::invalid_argument("Grid: N must be a power of two >= 8, got " + std::to_string(n));
    if (!(len > 0.0) || !std::isfinite(len))
      throw std::invalid_argument("Grid: L must be positive and finite");
    const double dx = len / n;
    spacing_[static_cast<std::size_t>(a)] = dx;
    size_ *= static_cast<std::size_t>(n);
    cell_volume_ *= dx;

    auto& xs = coords_[static_cast<std::size_t>(a)];
    auto& ks = waves_[static_cast<std::size_t>(a)];
    xs.resize(static_cast<std::size_t>(n));
    ks.resize(static_cast<std::size_t>(n));
    const double dk = 2.0 * std::numbers::pi / len;
    for (int j = 0; j < n; ++j) {
      xs[static_cast<std::size_t>(j)] = -0.5 * len + j * dx;
      const int m = (j < n / 2) ? j : j - n;
      ks[static_cast<std::size_t>(j)] = dk * m;
    }
  }
  plan_ = std::make_unique<detail::FftPlan>(dim_, points_);
}

Grid::Grid(int dim, int points, double length)
    : Grid(dim, std::array<int, 2>{points, points}, std::array<double, 2>{length, length}) {}

Grid::~Grid() = default;

double Grid::nyquist(int axis) const {
  return std::numbers::pi / spacing(axis);
}

double Grid::max_k_squared() const {
  double k2 = 0.0;
  for (int a = 0; a < dim_; ++a) k2 += nyquist(a) * nyquist(a);
  return k2;
}

bool Grid::same_layout(const Grid& other) const {
  if (dim_ != other.dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (points(a) != other.points(a)) return false;
    if (length(a) != other.length(a)) return false;
  }
  return true;
}

GridPtr make_grid(int dim, std::array<int, 2> points, std::array<double, 2> lengths) {
  return std::make_shared<const Grid>(dim, points, lengths);
}

GridPtr make_grid(int dim, int points, double length) {
  return std::make_shared<const Grid>(dim, points, length);
}

}  // namespace starknls
