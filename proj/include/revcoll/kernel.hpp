#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "revcoll/space.hpp"

namespace revcoll {

enum class KernelKind { indicator, smooth, gap, custom };

const char* to_string(KernelKind kind) noexcept;

// Dense, validated collision-rate table b(x, x*) over a StateSpace.
//
// Every instance satisfies b(x, x*) = b(x*, x) = b(rev x, rev x*) and b >= 0
// (checked at construction with an absolute tolerance of 1e-12).
class CollisionKernel {
 public:
  std::size_t size() const noexcept { return n_; }
  KernelKind kind() const noexcept { return kind_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return table_[i * n_ + j]; }
  const double* row(std::size_t i) const noexcept { return table_.data() + i * n_; }

  // Upper bound M on b.
  double bound() const noexcept { return bound_; }
  // Lipschitz coefficient when the kernel came from a Lipschitz formula.
  std::optional<double> lipschitz() const noexcept { return lipschitz_; }

  // Construction parameters, NaN when unused.
  double alpha() const noexcept { return alpha_; }
  double ramp() const noexcept { return ramp_; }

  friend CollisionKernel indicator_kernel(const StateSpace&, double);
  friend CollisionKernel smooth_kernel(const StateSpace&, double, double);
  friend CollisionKernel gap_kernel(const StateSpace&);
  friend CollisionKernel custom_kernel(const StateSpace&, const std::vector<std::vector<double>>&);

 private:
  CollisionKernel(KernelKind kind, std::size_t n, std::vector<double> table);
  void validate(const StateSpace& space) const;

  KernelKind kind_;
  std::size_t n_;
  std::vector<double> table_;
  double bound_ = 0.0;
  std::optional<double> lipschitz_;
  double alpha_;
  double ramp_;
};

// 1 where d(x, x*) > pi - alpha (strict), else 0. Circle spaces only.
CollisionKernel indicator_kernel(const StateSpace& space, double alpha);

// clamp((d - (pi - alpha)) / ramp, 0, 1); Lipschitz with coefficient 1/ramp.
CollisionKernel smooth_kernel(const StateSpace& space, double alpha, double ramp);

// max(|x - x*| - 1, 0) on a reflected interval.
CollisionKernel gap_kernel(const StateSpace& space);

CollisionKernel custom_kernel(const StateSpace& space, const std::vector<std::vector<double>>& table);

}  // namespace revcoll
