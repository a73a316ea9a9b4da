#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "revcoll/space.hpp"

namespace revcoll {

using SpacePtr = std::shared_ptr<const StateSpace>;

// Nonnegative weights over the points of a space. Point masses are
// value * cell_weight: cell_weight is 1 for atomic data and pi/n for densities
// sampled on torus_grid(n).
class DiscreteMeasure {
 public:
  DiscreteMeasure(SpacePtr space, std::vector<double> values, double cell_weight = 1.0);

  // Grid densities f_k on torus_grid(n); masses are f_k * pi / n.
  static DiscreteMeasure grid_density(SpacePtr space, std::vector<double> densities);

  const StateSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  double value(std::size_t i) const { return values_.at(i); }
  double cell_weight() const noexcept { return cell_weight_; }

  double mass(std::size_t i) const { return values_.at(i) * cell_weight_; }
  std::vector<double> masses() const;
  double total_mass() const noexcept;
  double mass_on(std::span<const std::size_t> indices) const;

  // Points with mass above 1e-12 * total mass.
  std::vector<std::size_t> support() const;

  // Same space and cell weight, new values.
  DiscreteMeasure with_values(std::vector<double> values) const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
  double cell_weight_;
};

inline constexpr double kSupportRelTol = 1e-12;

struct Atom {
  double angle;
  double mass;
};

// h with f = (1 + h) mu, stored over every point of the space (zero off the
// support of mu).
struct OddCoordinate {
  std::vector<std::size_t> support;
  std::vector<double> values;

  double operator[](std::size_t i) const { return values[i]; }
};

DiscreteMeasure symmetric_part(const DiscreteMeasure& f);

OddCoordinate odd_coordinate(const DiscreteMeasure& f, const DiscreteMeasure& mu);

DiscreteMeasure reconstruct(const OddCoordinate& h, const DiscreteMeasure& mu);

// Checks |h| <= 1 + tol and h(rev x) = -h(x) on the support; false on violation.
bool is_valid_odd(const OddCoordinate& h, const StateSpace& space, double tol = 1e-9);

// sup over sets A of |f(A) - g(A)|.
double tv_distance(const DiscreteMeasure& f, const DiscreteMeasure& g);

// Exact W1 on the circle of length 2 pi.
double wasserstein1_circle(const DiscreteMeasure& f, const DiscreteMeasure& g);
double wasserstein1_circle(std::span<const Atom> f, std::span<const Atom> g);

std::vector<Atom> to_atoms(const DiscreteMeasure& f);

}  // namespace revcoll
