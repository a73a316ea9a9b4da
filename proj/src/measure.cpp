#include "revcoll/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "revcoll/error.hpp"

namespace revcoll {

namespace {

constexpr double kNegTol = 1e-12;
constexpr double kProbabilityTol = 1e-10;

void require_same_space(const DiscreteMeasure& f, const DiscreteMeasure& g) {
  if (&f.space() != &g.space() && !(f.space() == g.space()))
    fail(ErrorCode::invalid_argument, "measures live on different spaces");
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(SpacePtr space, std::vector<double> values, double cell_weight)
    : space_(std::move(space)), values_(std::move(values)), cell_weight_(cell_weight) {
  if (!space_) fail(ErrorCode::invalid_argument, "measure without a space");
  if (values_.size() != space_->size())
    fail(ErrorCode::dimension_mismatch, "measure has " + std::to_string(values_.size()) +
                                            " values for a space of " + std::to_string(space_->size()));
  if (!(cell_weight_ > 0.0)) fail(ErrorCode::invalid_argument, "cell weight must be positive");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < -kNegTol)
      fail(ErrorCode::invalid_argument, "measure weight at point " + std::to_string(i) + " is " +
                                            std::to_string(values_[i]));
  }
}

DiscreteMeasure DiscreteMeasure::grid_density(SpacePtr space, std::vector<double> densities) {
  if (!space || space->kind() != SpaceKind::torus_grid)
    fail(ErrorCode::invalid_argument, "grid densities need a torus_grid space");
  const double w = kPi / static_cast<double>(space->grid_n());
  return DiscreteMeasure(std::move(space), std::move(densities), w);
}

std::vector<double> DiscreteMeasure::masses() const {
  std::vector<double> m(values_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = values_[i] * cell_weight_;
  return m;
}

double DiscreteMeasure::total_mass() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) * cell_weight_;
}

double DiscreteMeasure::mass_on(std::span<const std::size_t> indices) const {
  double s = 0.0;
  for (std::size_t i : indices) s += values_.at(i);
  return s * cell_weight_;
}

std::vector<std::size_t> DiscreteMeasure::support() const {
  const double floor = kSupportRelTol * total_mass();
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (mass(i) > floor) s.push_back(i);
  return s;
}

DiscreteMeasure DiscreteMeasure::with_values(std::vector<double> values) const {
  return DiscreteMeasure(space_, std::move(values), cell_weight_);
}

DiscreteMeasure symmetric_part(const DiscreteMeasure& f) {
  const StateSpace& s = f.space();
  std::vector<double> mu(f.size());
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = 0.5 * (f.value(i) + f.value(s.reverse(i)));
  return f.with_values(std::move(mu));
}

OddCoordinate odd_coordinate(const DiscreteMeasure& f, const DiscreteMeasure& mu) {
  require_same_space(f, mu);
  const DiscreteMeasure sym = symmetric_part(f);
  const double scale = std::max(f.total_mass(), 1e-300);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(sym.mass(i) - mu.mass(i)) > 1e-12 * scale)
      fail(ErrorCode::invalid_argument,
           "mu is not the symmetric part of f at point " + std::to_string(i));
  }
  OddCoordinate h;
  h.support = mu.support();
  h.values.assign(f.size(), 0.0);
  for (std::size_t i : h.support) h.values[i] = f.mass(i) / mu.mass(i) - 1.0;
  return h;
}

DiscreteMeasure reconstruct(const OddCoordinate& h, const DiscreteMeasure& mu) {
  if (h.values.size() != mu.size()) fail(ErrorCode::dimension_mismatch, "h and mu sizes differ");
  std::vector<double> v(mu.size(), 0.0);
  for (std::size_t i : h.support) {
    if (!(std::abs(h.values[i]) <= 1.0 + 1e-12))
      fail(ErrorCode::invalid_argument, "h(" + std::to_string(i) + ") = " + std::to_string(h.values[i]) +
                                            " outside [-1, 1]");
    v[i] = (1.0 + h.values[i]) * mu.value(i);
  }
  return mu.with_values(std::move(v));
}

bool is_valid_odd(const OddCoordinate& h, const StateSpace& space, double tol) {
  for (std::size_t i : h.support) {
    if (!(std::abs(h.values[i]) <= 1.0 + tol)) return false;
    if (std::abs(h.values[i] + h.values[space.reverse(i)]) > tol) return false;
  }
  return true;
}

double tv_distance(const DiscreteMeasure& f, const DiscreteMeasure& g) {
  require_same_space(f, g);
  double pos = 0.0;
  double neg = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f.mass(i) - g.mass(i);
    (d > 0.0 ? pos : neg) += std::abs(d);
  }
  return std::max(pos, neg);
}

std::vector<Atom> to_atoms(const DiscreteMeasure& f) {
  if (!f.space().is_circle()) fail(ErrorCode::invalid_argument, "atoms require a circle space");
  std::vector<Atom> atoms;
  atoms.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) atoms.push_back({f.space().coordinate(i), f.mass(i)});
  return atoms;
}

double wasserstein1_circle(const DiscreteMeasure& f, const DiscreteMeasure& g) {
  require_same_space(f, g);
  if (!f.space().is_circle()) fail(ErrorCode::invalid_argument, "wasserstein1_circle needs a circle space");
  const auto a = to_atoms(f);
  const auto b = to_atoms(g);
  return wasserstein1_circle(a, b);
}

double wasserstein1_circle(std::span<const Atom> f, std::span<const Atom> g) {
  double mf = 0.0;
  double mg = 0.0;
  for (const Atom& a : f) mf += a.mass;
  for (const Atom& a : g) mg += a.mass;
  if (std::abs(mf - 1.0) > kProbabilityTol || std::abs(mg - 1.0) > kProbabilityTol)
    fail(ErrorCode::invalid_argument, "wasserstein1_circle needs probability measures");

  struct Signed {
    double angle;
    double weight;
  };
  std::vector<Signed> pts;
  pts.reserve(f.size() + g.size());
  for (const Atom& a : f) pts.push_back({normalize_angle(a.angle), a.mass});
  for (const Atom& a : g) pts.push_back({normalize_angle(a.angle), -a.mass});
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const Signed& x, const Signed& y) { return x.angle < y.angle; });

  // c_k = cumulative signed mass after point k; delta_k = arc to the next point.
  const std::size_t m = pts.size();
  std::vector<std::pair<double, double>> cd(m);
  double c = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    c += pts[k].weight;
    const double next = k + 1 < m ? pts[k + 1].angle : pts[0].angle + 2.0 * kPi;
    cd[k] = {c, next - pts[k].angle};
  }

  // t minimizing sum |c_k - t| delta_k is the delta-weighted median of c.
  std::vector<std::pair<double, double>> sorted = cd;
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (const auto& p : sorted) total += p.second;
  double acc = 0.0;
  double median = sorted.back().first;
  for (const auto& p : sorted) {
    acc += p.second;
    if (acc >= 0.5 * total) {
      median = p.first;
      break;
    }
  }
  double w1 = 0.0;
  for (const auto& [ck, dk] : cd) w1 += std::abs(ck - median) * dk;
  return w1;
}

}  // namespace revcoll
