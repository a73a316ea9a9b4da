#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace revcoll {

enum class SpaceKind { torus_grid, atomic_circle, reflected_interval };

const char* to_string(SpaceKind kind) noexcept;

inline constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into [-pi, pi).
double normalize_angle(double angle) noexcept;

// Geodesic distance on the circle of length 2*pi.
double arc_distance(double a, double b) noexcept;

// A finite state space with a metric and an involution. Immutable once built;
// use the factory functions below.
class StateSpace {
 public:
  SpaceKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return coords_.size(); }

  // Angle in [-pi, pi) for circle spaces, position in [-1, 1] for the interval.
  double coordinate(std::size_t i) const { return coords_.at(i); }
  std::span<const double> coordinates() const noexcept { return coords_; }

  std::size_t reverse(std::size_t i) const { return involution_.at(i); }
  std::span<const std::size_t> involution() const noexcept { return involution_; }

  double distance(std::size_t i, std::size_t j) const;

  bool is_circle() const noexcept { return kind_ != SpaceKind::reflected_interval; }

  // Half the number of points for torus grids, 0 otherwise.
  std::size_t grid_n() const noexcept { return grid_n_; }

  // Index of the point at `coord` (within `tol`, measured with the space's metric).
  std::optional<std::size_t> find(double coord, double tol = 1e-12) const;

  // Indices sorted by coordinate (angular order for circles).
  std::vector<std::size_t> sorted_order() const;

  bool operator==(const StateSpace& other) const = default;

  friend StateSpace torus_grid(std::size_t n);
  friend StateSpace atomic_circle(std::span<const double> angles);
  friend StateSpace reflected_interval(std::span<const double> points);

 private:
  StateSpace(SpaceKind kind, std::vector<double> coords, std::vector<std::size_t> involution,
             std::size_t grid_n);

  SpaceKind kind_;
  std::vector<double> coords_;
  std::vector<std::size_t> involution_;
  std::size_t grid_n_ = 0;
};

// 2n points phi_k = (k - n) pi / n, involution k -> (k + n) mod 2n.
StateSpace torus_grid(std::size_t n);

// Input angles followed by the antipodes not already present.
StateSpace atomic_circle(std::span<const double> angles);

// Points closed under x -> -x, sorted ascending.
StateSpace reflected_interval(std::span<const double> points);

}  // namespace revcoll
