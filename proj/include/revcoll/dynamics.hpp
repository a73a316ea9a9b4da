#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "revcoll/kernel.hpp"
#include "revcoll/measure.hpp"

namespace revcoll {

// Rate of change of the stored values under the reversal collision operator:
//   d v_x/dt = w * sum_{x*} b(x, x*) (v_{rev x} v_{rev x*} - v_x v_{x*}),
// with w the cell weight. For grid densities this is the pi/n quadrature sum;
// for atoms (w = 1) it is the exact point-mass dynamics.
std::vector<double> collision_rate(const DiscreteMeasure& f, const CollisionKernel& b);

// Q_REV^n on torus_grid(n) densities f_0..f_{2n-1}.
std::vector<double> grid_collision_operator(std::span<const double> f, const CollisionKernel& b,
                                            std::size_t n);

// (A h)(x) = -2 sum_{x*} b(x, x*) (h(x) + h(x*)) mu(x*) restricted to supp(mu).
class LinearGenerator {
 public:
  const DiscreteMeasure& mu() const noexcept { return mu_; }
  std::span<const std::size_t> support() const noexcept { return support_; }
  std::size_t dim() const noexcept { return support_.size(); }

  // Support-indexed operator and absorption gamma(x) = 2 sum b(x, x*) mu(x*).
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  const Eigen::VectorXd& gamma() const noexcept { return gamma_; }
  // Off-diagonal part of the action: (K h)(x) = 2 sum b(x, x*) mu(x*) h(x*).
  const Eigen::MatrixXd& gain() const noexcept { return gain_; }

  // Full-length h in, full-length rate out.
  std::vector<double> apply(std::span<const double> h) const;

  Eigen::VectorXd restrict(std::span<const double> h) const;
  std::vector<double> extend(const Eigen::VectorXd& h_support) const;

  friend LinearGenerator build_generator(const DiscreteMeasure& mu, const CollisionKernel& b);

 private:
  explicit LinearGenerator(DiscreteMeasure mu) : mu_(std::move(mu)) {}

  DiscreteMeasure mu_;
  std::vector<std::size_t> support_;
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd gain_;
  Eigen::VectorXd gamma_;
};

LinearGenerator build_generator(const DiscreteMeasure& mu, const CollisionKernel& b);

// The generator acting on odd functions, written in one representative per
// involution orbit (first occurrence in index order; fixed points dropped
// since h vanishes there).
struct OddReduction {
  std::vector<std::size_t> representatives;
  Eigen::MatrixXd matrix;
};

OddReduction odd_reduction(const LinearGenerator& A);

// Eigenvalues in ascending order. A is self-adjoint in L2(mu), so the
// spectrum is real; computed on the symmetrized form.
Eigen::VectorXd generator_spectrum(const LinearGenerator& A);
Eigen::VectorXd odd_spectrum(const LinearGenerator& A);

// Coefficients c_0..c_n (monic, c_0 = 1) of det(xi I - M), highest degree first.
std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& M);

struct Trajectory {
  DiscreteMeasure mu;
  std::vector<double> times;
  std::vector<DiscreteMeasure> states;

  std::size_t size() const noexcept { return times.size(); }
  // h of snapshot k relative to mu (no symmetric-part check).
  OddCoordinate odd(std::size_t k) const;
};

// f / mu - 1 on supp(mu) without requiring mu to be the symmetric part of f.
OddCoordinate relative_odd(const DiscreteMeasure& f, const DiscreteMeasure& mu);

enum class HMethod { rk4, expm, picard };

const char* to_string(HMethod m) noexcept;

struct HOptions {
  double dt = 0.01;              // rk4 / picard internal step
  double bound_tol = 1e-9;       // |h| <= 1 + bound_tol
  double picard_tol = 1e-12;
  std::size_t picard_max_iter = 10'000;
  std::size_t expm_max_dim = 64;
};

// Integrates dh/dt = A h from h0 and reports the state at every t_grid entry
// (t_grid increasing, starting at 0).
Trajectory integrate_h(const OddCoordinate& h0, const LinearGenerator& A, std::span<const double> t_grid,
                       HMethod method, const HOptions& options = {});

// Explicit Euler on the nonlinear operator, snapshots every `snapshot_every`
// steps (plus the initial and final states).
Trajectory euler_simulate(const DiscreteMeasure& f0, const CollisionKernel& b, double dt, std::size_t steps,
                          std::size_t snapshot_every = 1);

// f_I -> mu, h_I, generator, then integrate_h.
Trajectory simulate_h(const DiscreteMeasure& f_initial, const CollisionKernel& b, std::span<const double> t_grid,
                      HMethod method, const HOptions& options = {});

std::vector<double> uniform_times(double t_end, std::size_t intervals);

}  // namespace revcoll
