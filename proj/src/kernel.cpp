#include "revcoll/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "revcoll/error.hpp"

namespace revcoll {

namespace {

constexpr double kSymmetryTol = 1e-12;
// Distances within this of the threshold count as equal (entry 0), so that
// atoms placed exactly pi - alpha apart are not split by rounding.
constexpr double kThresholdTol = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

const char* to_string(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::indicator: return "indicator";
    case KernelKind::smooth: return "smooth";
    case KernelKind::gap: return "gap";
    case KernelKind::custom: return "custom";
  }
  return "unknown";
}

CollisionKernel::CollisionKernel(KernelKind kind, std::size_t n, std::vector<double> table)
    : kind_(kind), n_(n), table_(std::move(table)), alpha_(kNaN), ramp_(kNaN) {
  for (double v : table_) bound_ = std::max(bound_, v);
}

void CollisionKernel::validate(const StateSpace& space) const {
  if (space.size() != n_)
    fail(ErrorCode::dimension_mismatch, "kernel table is " + std::to_string(n_) + "x" +
                                            std::to_string(n_) + " but space has " +
                                            std::to_string(space.size()) + " points");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = (*this)(i, j);
      if (!(v >= 0.0) || !std::isfinite(v))
        fail(ErrorCode::negative_entry, "b(" + std::to_string(i) + "," + std::to_string(j) +
                                            ") = " + std::to_string(v));
      if (std::abs(v - (*this)(j, i)) > kSymmetryTol)
        fail(ErrorCode::symmetry_violation,
             "b(x,x*) != b(x*,x) at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (std::abs(v - (*this)(space.reverse(i), space.reverse(j))) > kSymmetryTol)
        fail(ErrorCode::symmetry_violation, "b(x,x*) != b(rev x, rev x*) at (" + std::to_string(i) +
                                                "," + std::to_string(j) + ")");
    }
  }
}

CollisionKernel indicator_kernel(const StateSpace& space, double alpha) {
  if (!space.is_circle()) fail(ErrorCode::invalid_argument, "indicator kernel needs a circle space");
  if (!(alpha > 0.0 && alpha < kPi))
    fail(ErrorCode::invalid_argument, "indicator kernel alpha must lie in (0, pi), got " + std::to_string(alpha));
  const std::size_t n = space.size();
  const double threshold = kPi - alpha;
  std::vector<double> table(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = space.distance(i, j) > threshold + kThresholdTol ? 1.0 : 0.0;
  CollisionKernel k(KernelKind::indicator, n, std::move(table));
  k.bound_ = 1.0;
  k.alpha_ = alpha;
  k.validate(space);
  return k;
}

CollisionKernel smooth_kernel(const StateSpace& space, double alpha, double ramp) {
  if (!space.is_circle()) fail(ErrorCode::invalid_argument, "smooth kernel needs a circle space");
  if (!(ramp > 0.0 && ramp < alpha && alpha < kPi))
    fail(ErrorCode::invalid_argument, "smooth kernel requires 0 < ramp < alpha < pi");
  const std::size_t n = space.size();
  const double threshold = kPi - alpha;
  std::vector<double> table(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table[i * n + j] = std::clamp((space.distance(i, j) - threshold) / ramp, 0.0, 1.0);
  CollisionKernel k(KernelKind::smooth, n, std::move(table));
  k.bound_ = 1.0;
  k.lipschitz_ = 1.0 / ramp;
  k.alpha_ = alpha;
  k.ramp_ = ramp;
  k.validate(space);
  return k;
}

CollisionKernel gap_kernel(const StateSpace& space) {
  if (space.kind() != SpaceKind::reflected_interval)
    fail(ErrorCode::invalid_argument, "gap kernel needs a reflected_interval space");
  const std::size_t n = space.size();
  std::vector<double> table(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double excess = space.distance(i, j) - 1.0;
      table[i * n + j] = excess > kThresholdTol ? excess : 0.0;
    }
  CollisionKernel k(KernelKind::gap, n, std::move(table));
  k.bound_ = 1.0;
  k.lipschitz_ = 1.0;
  k.validate(space);
  return k;
}

CollisionKernel custom_kernel(const StateSpace& space, const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n != space.size())
    fail(ErrorCode::dimension_mismatch, "custom kernel has " + std::to_string(n) + " rows, space has " +
                                            std::to_string(space.size()) + " points");
  std::vector<double> table;
  table.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) fail(ErrorCode::dimension_mismatch, "custom kernel rows must have length " + std::to_string(n));
    table.insert(table.end(), r.begin(), r.end());
  }
  CollisionKernel k(KernelKind::custom, n, std::move(table));
  k.validate(space);
  return k;
}

}  // namespace revcoll
