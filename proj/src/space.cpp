#include "revcoll/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "revcoll/error.hpp"

namespace revcoll {

namespace {

constexpr double kClosureTol = 1e-12;

}  // namespace

const char* to_string(SpaceKind kind) noexcept {
  switch (kind) {
    case SpaceKind::torus_grid: return "torus_grid";
    case SpaceKind::atomic_circle: return "atomic_circle";
    case SpaceKind::reflected_interval: return "reflected_interval";
  }
  return "unknown";
}

double normalize_angle(double angle) noexcept {
  double a = std::fmod(angle + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  a -= kPi;
  // fmod can land exactly on +pi after the shift
  if (a >= kPi) a -= 2.0 * kPi;
  return a;
}

double arc_distance(double a, double b) noexcept {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

StateSpace::StateSpace(SpaceKind kind, std::vector<double> coords,
                       std::vector<std::size_t> involution, std::size_t grid_n)
    : kind_(kind), coords_(std::move(coords)), involution_(std::move(involution)), grid_n_(grid_n) {}

double StateSpace::distance(std::size_t i, std::size_t j) const {
  if (kind_ == SpaceKind::torus_grid) {
    // exact index arithmetic keeps d(x, x_rev) == pi bit-for-bit
    const std::size_t m = coords_.size();
    const std::size_t di = i > j ? i - j : j - i;
    if (i >= m || j >= m) fail(ErrorCode::invalid_argument, "point index out of range");
    const std::size_t steps = std::min(di, m - di);
    return static_cast<double>(steps) * kPi / static_cast<double>(grid_n_);
  }
  const double a = coords_.at(i);
  const double b = coords_.at(j);
  if (kind_ == SpaceKind::reflected_interval) return std::abs(a - b);
  return arc_distance(a, b);
}

std::optional<std::size_t> StateSpace::find(double coord, double tol) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double d = is_circle() ? arc_distance(coords_[i], coord) : std::abs(coords_[i] - coord);
    if (d <= tol) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> StateSpace::sorted_order() const {
  std::vector<std::size_t> order(coords_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return coords_[a] < coords_[b]; });
  return order;
}

StateSpace torus_grid(std::size_t n) {
  if (n < 2) fail(ErrorCode::invalid_argument, "torus_grid requires n >= 2, got " + std::to_string(n));
  const std::size_t m = 2 * n;
  std::vector<double> coords(m);
  std::vector<std::size_t> inv(m);
  for (std::size_t k = 0; k < m; ++k) {
    coords[k] = (static_cast<double>(k) - static_cast<double>(n)) * kPi / static_cast<double>(n);
    inv[k] = (k + n) % m;
  }
  return StateSpace(SpaceKind::torus_grid, std::move(coords), std::move(inv), n);
}

StateSpace atomic_circle(std::span<const double> angles) {
  std::vector<double> coords;
  coords.reserve(2 * angles.size());
  for (double a : angles) {
    const double x = normalize_angle(a);
    for (double c : coords) {
      if (arc_distance(c, x) <= kClosureTol)
        fail(ErrorCode::invalid_argument, "duplicate angle " + std::to_string(a) + " in atomic_circle");
    }
    coords.push_back(x);
  }
  const std::size_t given = coords.size();
  std::vector<std::size_t> inv(given, 0);
  for (std::size_t i = 0; i < given; ++i) {
    const double rev = normalize_angle(coords[i] + kPi);
    std::size_t j = coords.size();
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (arc_distance(coords[k], rev) <= kClosureTol) {
        j = k;
        break;
      }
    }
    if (j == coords.size()) {
      coords.push_back(rev);
      inv.push_back(i);
    }
    inv[i] = j;
  }
  return StateSpace(SpaceKind::atomic_circle, std::move(coords), std::move(inv), 0);
}

StateSpace reflected_interval(std::span<const double> points) {
  std::vector<double> coords;
  for (double p : points) {
    if (!(p >= -1.0 && p <= 1.0))
      fail(ErrorCode::invalid_argument, "reflected_interval point " + std::to_string(p) + " outside [-1,1]");
    for (double q : {p, -p}) {
      const double x = q == 0.0 ? 0.0 : q;  // fold -0.0
      bool present = false;
      for (double c : coords) present = present || std::abs(c - x) <= kClosureTol;
      if (!present) coords.push_back(x);
    }
  }
  std::sort(coords.begin(), coords.end());
  // sorted and closed under negation, so the mirror index is the reversal
  const std::size_t m = coords.size();
  std::vector<std::size_t> inv(m);
  for (std::size_t i = 0; i < m; ++i) inv[i] = m - 1 - i;
  return StateSpace(SpaceKind::reflected_interval, std::move(coords), std::move(inv), 0);
}

}  // namespace revcoll
