#include "revcoll/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "revcoll/error.hpp"

namespace revcoll {

namespace {

// Computes the rate for x and writes its negation at rev x: the two entries
// are exact negatives of each other, so the symmetric part and the total
// mass are preserved by an Euler step up to the rounding of the update.
void collision_rate_impl(std::span<const double> v, std::span<const std::size_t> rev, const CollisionKernel& b,
                         double w, std::span<double> out) {
  const std::size_t n = v.size();
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t rx = rev[x];
    if (rx < x) continue;
    if (rx == x) {
      out[x] = 0.0;
      continue;
    }
    const double* row = b.row(x);
    double gain = 0.0;
    double loss = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      const double by = row[y];
      if (by == 0.0) continue;
      gain += by * v[rev[y]];
      loss += by * v[y];
    }
    const double r = w * (v[rx] * gain - v[x] * loss);
    out[x] = r;
    out[rx] = -r;
  }
}

double phi_weight_full(double a) {
  // (1 - e^{-a}) / a
  if (a < 1e-8) return 1.0 - 0.5 * a;
  return -std::expm1(-a) / a;
}

double phi_weight_ramp(double a) {
  // (a - 1 + e^{-a}) / a^2
  if (a < 1e-4) return 0.5 - a / 6.0 + a * a / 24.0;
  return (a + std::expm1(-a)) / (a * a);
}

void check_bounds(const Eigen::VectorXd& h, double tol, double t, const char* method) {
  const double m = h.size() ? h.cwiseAbs().maxCoeff() : 0.0;
  if (m > 1.0 + tol)
    fail(ErrorCode::step_size, std::string(method) + ": |h| = " + std::to_string(m) + " exceeds 1 at t = " +
                                   std::to_string(t));
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& M, const Eigen::VectorXd& weights) {
  const Eigen::VectorXd s = weights.cwiseSqrt();
  Eigen::MatrixXd S = s.asDiagonal() * M * s.cwiseInverse().asDiagonal();
  return 0.5 * (S + S.transpose());
}

}  // namespace

std::vector<double> collision_rate(const DiscreteMeasure& f, const CollisionKernel& b) {
  if (b.size() != f.size()) fail(ErrorCode::dimension_mismatch, "kernel and measure sizes differ");
  std::vector<double> out(f.size(), 0.0);
  collision_rate_impl(f.values(), f.space().involution(), b, f.cell_weight(), out);
  return out;
}

std::vector<double> grid_collision_operator(std::span<const double> f, const CollisionKernel& b, std::size_t n) {
  if (f.size() != 2 * n || b.size() != 2 * n)
    fail(ErrorCode::dimension_mismatch, "grid operator needs 2n densities and a 2n x 2n kernel");
  std::vector<std::size_t> rev(2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k) rev[k] = (k + n) % (2 * n);
  std::vector<double> out(2 * n, 0.0);
  collision_rate_impl(f, rev, b, kPi / static_cast<double>(n), out);
  return out;
}

std::vector<double> LinearGenerator::apply(std::span<const double> h) const {
  const Eigen::VectorXd r = matrix_ * restrict(h);
  return extend(r);
}

Eigen::VectorXd LinearGenerator::restrict(std::span<const double> h) const {
  if (h.size() != mu_.size()) fail(ErrorCode::dimension_mismatch, "h has the wrong length");
  Eigen::VectorXd out(support_.size());
  for (std::size_t p = 0; p < support_.size(); ++p) out[p] = h[support_[p]];
  return out;
}

std::vector<double> LinearGenerator::extend(const Eigen::VectorXd& hs) const {
  std::vector<double> out(mu_.size(), 0.0);
  for (std::size_t p = 0; p < support_.size(); ++p) out[support_[p]] = hs[p];
  return out;
}

LinearGenerator build_generator(const DiscreteMeasure& mu, const CollisionKernel& b) {
  if (b.size() != mu.size()) fail(ErrorCode::dimension_mismatch, "kernel and measure sizes differ");
  LinearGenerator A(mu);
  A.support_ = mu.support();
  const std::size_t K = A.support_.size();
  if (K == 0) fail(ErrorCode::invalid_argument, "generator of a measure with empty support");
  A.gain_.resize(K, K);
  for (std::size_t p = 0; p < K; ++p)
    for (std::size_t q = 0; q < K; ++q)
      A.gain_(p, q) = 2.0 * b(A.support_[p], A.support_[q]) * mu.mass(A.support_[q]);
  A.gamma_ = A.gain_.rowwise().sum();
  A.matrix_ = -A.gain_;
  A.matrix_.diagonal() -= A.gamma_;
  return A;
}

OddReduction odd_reduction(const LinearGenerator& A) {
  const StateSpace& space = A.mu().space();
  const auto support = A.support();
  std::vector<std::size_t> pos(space.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t p = 0; p < support.size(); ++p) pos[support[p]] = p;
  OddReduction red;
  std::vector<bool> taken(space.size(), false);
  for (std::size_t x : support) {
    if (taken[x] || space.reverse(x) == x) continue;
    taken[x] = taken[space.reverse(x)] = true;
    red.representatives.push_back(x);
  }
  const std::size_t r = red.representatives.size();
  red.matrix.resize(r, r);
  const Eigen::MatrixXd& M = A.matrix();
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t pi = pos[red.representatives[i]];
    for (std::size_t j = 0; j < r; ++j) {
      const std::size_t xj = red.representatives[j];
      red.matrix(i, j) = M(pi, pos[xj]) - M(pi, pos[space.reverse(xj)]);
    }
  }
  return red;
}

Eigen::VectorXd generator_spectrum(const LinearGenerator& A) {
  Eigen::VectorXd w(A.dim());
  for (std::size_t p = 0; p < A.dim(); ++p) w[p] = A.mu().mass(A.support()[p]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(A.matrix(), w), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Eigen::VectorXd odd_spectrum(const LinearGenerator& A) {
  const OddReduction red = odd_reduction(A);
  if (red.representatives.empty()) return {};
  Eigen::VectorXd w(red.representatives.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = A.mu().mass(red.representatives[i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(red.matrix, w), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& M) {
  // Faddeev-LeVerrier
  const Eigen::Index n = M.rows();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Eigen::MatrixXd Mk = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Mk = M * Mk + c[k - 1] * I;
    c[k] = -(M * Mk).trace() / static_cast<double>(k);
  }
  return c;
}

OddCoordinate relative_odd(const DiscreteMeasure& f, const DiscreteMeasure& mu) {
  OddCoordinate h;
  h.support = mu.support();
  h.values.assign(mu.size(), 0.0);
  for (std::size_t i : h.support) h.values[i] = f.mass(i) / mu.mass(i) - 1.0;
  return h;
}

OddCoordinate Trajectory::odd(std::size_t k) const { return relative_odd(states.at(k), mu); }

const char* to_string(HMethod m) noexcept {
  switch (m) {
    case HMethod::rk4: return "rk4";
    case HMethod::expm: return "expm";
    case HMethod::picard: return "picard";
  }
  return "unknown";
}

namespace {

DiscreteMeasure to_measure(const LinearGenerator& A, const Eigen::VectorXd& h) {
  const DiscreteMeasure& mu = A.mu();
  std::vector<double> v(mu.size(), 0.0);
  for (std::size_t p = 0; p < A.dim(); ++p) {
    const std::size_t x = A.support()[p];
    v[x] = (1.0 + h[p]) * mu.value(x);
  }
  return mu.with_values(std::move(v));
}

std::vector<Eigen::VectorXd> run_rk4(const Eigen::VectorXd& h0, const Eigen::MatrixXd& M,
                                     std::span<const double> t_grid, const HOptions& opt) {
  std::vector<Eigen::VectorXd> out{h0};
  Eigen::VectorXd h = h0;
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double span = t_grid[k] - t_grid[k - 1];
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / opt.dt - 1e-9)));
    const double dt = span / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
      const Eigen::VectorXd k1 = M * h;
      const Eigen::VectorXd k2 = M * (h + 0.5 * dt * k1);
      const Eigen::VectorXd k3 = M * (h + 0.5 * dt * k2);
      const Eigen::VectorXd k4 = M * (h + dt * k3);
      h += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      check_bounds(h, opt.bound_tol, t_grid[k - 1] + static_cast<double>(s + 1) * dt, "rk4");
    }
    out.push_back(h);
  }
  return out;
}

std::vector<Eigen::VectorXd> run_expm(const Eigen::VectorXd& h0, const LinearGenerator& A,
                                      std::span<const double> t_grid, const HOptions& opt) {
  if (A.dim() > opt.expm_max_dim)
    fail(ErrorCode::invalid_argument, "expm is limited to " + std::to_string(opt.expm_max_dim) +
                                          " support points, got " + std::to_string(A.dim()));
  Eigen::VectorXd w(A.dim());
  for (std::size_t p = 0; p < A.dim(); ++p) w[p] = A.mu().mass(A.support()[p]);
  const Eigen::VectorXd s = w.cwiseSqrt();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(A.matrix(), w));
  const Eigen::MatrixXd& V = es.eigenvectors();
  const Eigen::VectorXd coeff = V.transpose() * s.cwiseProduct(h0);
  std::vector<Eigen::VectorXd> out;
  for (double t : t_grid) {
    const Eigen::VectorXd decay = (es.eigenvalues() * t).array().exp();
    Eigen::VectorXd h = (V * decay.cwiseProduct(coeff)).cwiseQuotient(s);
    check_bounds(h, opt.bound_tol, t, "expm");
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Eigen::VectorXd> run_picard(const Eigen::VectorXd& h0, const LinearGenerator& A,
                                        std::span<const double> t_grid, const HOptions& opt) {
  // internal grid refining every output interval to step <= dt
  std::vector<double> nodes{t_grid[0]};
  std::vector<std::size_t> output_node{0};
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double span = t_grid[k] - t_grid[k - 1];
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / opt.dt - 1e-9)));
    for (std::size_t s = 1; s <= steps; ++s)
      nodes.push_back(t_grid[k - 1] + span * static_cast<double>(s) / static_cast<double>(steps));
    nodes.back() = t_grid[k];
    output_node.push_back(nodes.size() - 1);
  }
  const std::size_t N = nodes.size();
  const Eigen::VectorXd& gamma = A.gamma();
  const Eigen::MatrixXd& K = A.gain();
  const Eigen::Index d = h0.size();

  // mild form: h(t) = e^{-gamma t} h_I - int_0^t e^{gamma (s - t)} (K h)(s) ds,
  // with K h interpolated linearly between nodes and integrated exactly.
  std::vector<Eigen::VectorXd> h(N, h0);
  std::vector<Eigen::VectorXd> wl(N), wr(N);
  for (std::size_t n = 1; n < N; ++n) {
    const double dt = nodes[n] - nodes[n - 1];
    wl[n].resize(d);
    wr[n].resize(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double a = gamma[i] * dt;
      const double full = dt * phi_weight_full(a);
      const double ramp = dt * phi_weight_ramp(a);
      wl[n][i] = full - ramp;
      wr[n][i] = ramp;
    }
  }
  std::vector<Eigen::VectorXd> g(N);
  double prev_change = std::numeric_limits<double>::infinity();
  std::size_t growth = 0;
  for (std::size_t iter = 0;; ++iter) {
    if (iter >= opt.picard_max_iter) fail(ErrorCode::internal_error, "Picard iteration did not converge");
    for (std::size_t n = 0; n < N; ++n) g[n] = K * h[n];
    double change = 0.0;
    Eigen::VectorXd integral = Eigen::VectorXd::Zero(d);
    for (std::size_t n = 1; n < N; ++n) {
      const double dt = nodes[n] - nodes[n - 1];
      const Eigen::VectorXd decay = (-gamma * dt).array().exp();
      integral = decay.cwiseProduct(integral) + wl[n].cwiseProduct(g[n - 1]) + wr[n].cwiseProduct(g[n]);
      const Eigen::VectorXd next = (-gamma * nodes[n]).array().exp().matrix().cwiseProduct(h0) - integral;
      change = std::max(change, (next - h[n]).cwiseAbs().maxCoeff());
      h[n] = next;
    }
    if (change < opt.picard_tol) break;
    // Volterra iterations converge superlinearly; sustained growth means divergence
    growth = change > prev_change ? growth + 1 : 0;
    if (growth > 50) fail(ErrorCode::internal_error, "Picard iteration is diverging");
    prev_change = change;
  }
  std::vector<Eigen::VectorXd> out;
  for (std::size_t idx : output_node) {
    check_bounds(h[idx], opt.bound_tol, nodes[idx], "picard");
    out.push_back(h[idx]);
  }
  return out;
}

}  // namespace

Trajectory integrate_h(const OddCoordinate& h0, const LinearGenerator& A, std::span<const double> t_grid,
                       HMethod method, const HOptions& options) {
  if (t_grid.empty() || t_grid[0] != 0.0) fail(ErrorCode::invalid_argument, "t_grid must start at 0");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) fail(ErrorCode::invalid_argument, "t_grid must be strictly increasing");
  if (!(options.dt > 0.0)) fail(ErrorCode::invalid_argument, "dt must be positive");
  if (h0.values.size() != A.mu().size()) fail(ErrorCode::dimension_mismatch, "h0 has the wrong length");
  const Eigen::VectorXd start = A.restrict(h0.values);
  if (start.size() && start.cwiseAbs().maxCoeff() > 1.0 + options.bound_tol)
    fail(ErrorCode::invalid_argument, "h0 outside [-1, 1]");

  std::vector<Eigen::VectorXd> hs;
  switch (method) {
    case HMethod::rk4: hs = run_rk4(start, A.matrix(), t_grid, options); break;
    case HMethod::expm: hs = run_expm(start, A, t_grid, options); break;
    case HMethod::picard: hs = run_picard(start, A, t_grid, options); break;
  }
  Trajectory traj{A.mu(), std::vector<double>(t_grid.begin(), t_grid.end()), {}};
  traj.states.reserve(hs.size());
  for (const auto& h : hs) traj.states.push_back(to_measure(A, h));
  return traj;
}

Trajectory euler_simulate(const DiscreteMeasure& f0, const CollisionKernel& b, double dt, std::size_t steps,
                          std::size_t snapshot_every) {
  if (!(dt > 0.0)) fail(ErrorCode::invalid_argument, "dt must be positive");
  if (snapshot_every == 0) fail(ErrorCode::invalid_argument, "snapshot_every must be positive");
  if (b.size() != f0.size()) fail(ErrorCode::dimension_mismatch, "kernel and measure sizes differ");
  const double mass = f0.total_mass();
  if (dt * 2.0 * b.bound() * mass > 1.0)
    fail(ErrorCode::step_size, "dt * 2 M mass = " + std::to_string(dt * 2.0 * b.bound() * mass) + " exceeds 1");

  Trajectory traj{symmetric_part(f0), {0.0}, {f0}};
  std::vector<double> v(f0.values().begin(), f0.values().end());
  std::vector<double> rate(v.size(), 0.0);
  const auto rev = f0.space().involution();
  for (std::size_t m = 1; m <= steps; ++m) {
    collision_rate_impl(v, rev, b, f0.cell_weight(), rate);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] += dt * rate[i];
      if (v[i] < -1e-12)
        fail(ErrorCode::negativity_abort, "density " + std::to_string(v[i]) + " at point " + std::to_string(i) +
                                              " after step " + std::to_string(m));
    }
    if (m % snapshot_every == 0 || m == steps) {
      traj.times.push_back(static_cast<double>(m) * dt);
      traj.states.push_back(f0.with_values(v));
    }
  }
  return traj;
}

Trajectory simulate_h(const DiscreteMeasure& f_initial, const CollisionKernel& b, std::span<const double> t_grid,
                      HMethod method, const HOptions& options) {
  const DiscreteMeasure mu = symmetric_part(f_initial);
  const OddCoordinate h0 = odd_coordinate(f_initial, mu);
  return integrate_h(h0, build_generator(mu, b), t_grid, method, options);
}

std::vector<double> uniform_times(double t_end, std::size_t intervals) {
  if (intervals == 0 || !(t_end > 0.0)) fail(ErrorCode::invalid_argument, "uniform_times needs t_end > 0");
  std::vector<double> t(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k)
    t[k] = t_end * static_cast<double>(k) / static_cast<double>(intervals);
  return t;
}

}  // namespace revcoll
