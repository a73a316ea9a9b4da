#include "revcoll/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revcoll/error.hpp"

namespace revcoll {

namespace {

constexpr std::size_t kPairFormMax = 1024;

double half_square_sum(const OddCoordinate& h, const DiscreteMeasure& mu, std::span<const std::size_t> pts,
                       double shift) {
  double s = 0.0;
  for (std::size_t x : pts) {
    const double d = h[x] - shift;
    s += d * d * mu.mass(x);
  }
  return 0.5 * s;
}

}  // namespace

double entropy(const OddCoordinate& h, const DiscreteMeasure& mu) {
  const double H = half_square_sum(h, mu, h.support, 0.0);
  if (h.support.size() <= kPairFormMax && std::abs(mu.total_mass() - 1.0) <= 1e-10) {
    const double alt = entropy_pair_form(h, mu);
    if (std::abs(alt - H) > 1e-12 * (1.0 + H))
      fail(ErrorCode::internal_error, "entropy forms disagree: " + std::to_string(H) + " vs " + std::to_string(alt));
  }
  return H;
}

double entropy_pair_form(const OddCoordinate& h, const DiscreteMeasure& mu) {
  double s = 0.0;
  for (std::size_t x : h.support)
    for (std::size_t y : h.support) {
      const double d = h[x] - h[y];
      s += d * d * mu.mass(x) * mu.mass(y);
    }
  return 0.25 * s;
}

double dissipation(const OddCoordinate& h, const DiscreteMeasure& mu, const CollisionKernel& b) {
  double s = 0.0;
  for (std::size_t x : h.support) {
    double row = 0.0;
    for (std::size_t y : h.support) {
      const double w = b(x, y);
      if (w == 0.0) continue;
      const double d = h[x] + h[y];
      row += w * d * d * mu.mass(y);
    }
    s += row * mu.mass(x);
  }
  return s;
}

double component_entropy(const OddCoordinate& h, const DiscreteMeasure& mu, std::span<const std::size_t> T,
                         std::span<const std::size_t> T_star, double eta) {
  if (T_star.empty()) fail(ErrorCode::invalid_argument, "component entropy needs a nonempty partner set");
  const double HT = half_square_sum(h, mu, T, eta) + half_square_sum(h, mu, T_star, -eta);
  const double rho = mu.mass_on(T);
  const double rho_s = mu.mass_on(T_star);
  double cross = 0.0;
  for (std::size_t x : T)
    for (std::size_t y : T_star) {
      const double d = h[x] + h[y];
      cross += d * d * mu.mass(x) * mu.mass(y);
    }
  const double lhs = 2.0 * std::min(rho, rho_s) * HT;
  if (lhs > cross + 1e-10 * (1.0 + cross))
    fail(ErrorCode::internal_error,
         "component entropy inequality violated: " + std::to_string(lhs) + " > " + std::to_string(cross));
  return HT;
}

double component_entropy_expanded(const OddCoordinate& h, const DiscreteMeasure& mu, std::span<const std::size_t> T,
                                  std::span<const std::size_t> T_star, double eta) {
  const double rho = mu.mass_on(T);
  const double rho_s = mu.mass_on(T_star);
  return half_square_sum(h, mu, T, 0.0) + half_square_sum(h, mu, T_star, 0.0) - 0.5 * (rho + rho_s) * eta * eta;
}

double component_dissipation(const OddCoordinate& h, const DiscreteMeasure& mu, const CollisionKernel& b,
                             std::span<const std::size_t> T, std::span<const std::size_t> T_star) {
  double s = 0.0;
  for (std::size_t x : T)
    for (std::size_t y : T_star) {
      const double w = b(x, y);
      if (w == 0.0) continue;
      const double d = h[x] + h[y];
      s += w * d * d * mu.mass(x) * mu.mass(y);
    }
  return 2.0 * s;
}

DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) fail(ErrorCode::dimension_mismatch, "fit_decay_rate: times and values differ in length");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] > kEntropyFloor && std::isfinite(values[i])) keep.push_back(i);
  if (keep.size() < 10)
    fail(ErrorCode::insufficient_data,
         "fit_decay_rate needs at least 10 samples above 1e-14, got " + std::to_string(keep.size()));
  const std::size_t first = keep.size() / 2;
  const std::size_t n = keep.size() - first;
  double st = 0.0, sy = 0.0;
  for (std::size_t k = first; k < keep.size(); ++k) {
    st += times[keep[k]];
    sy += std::log(values[keep[k]]);
  }
  const double tm = st / static_cast<double>(n);
  const double ym = sy / static_cast<double>(n);
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t k = first; k < keep.size(); ++k) {
    const double dt = times[keep[k]] - tm;
    const double dy = std::log(values[keep[k]]) - ym;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (!(stt > 0.0)) fail(ErrorCode::insufficient_data, "fit_decay_rate: degenerate time window");
  const double slope = sty / stt;
  const double r2 = syy > 0.0 ? (sty * sty) / (stt * syy) : 1.0;
  return {-slope, r2, times[keep[first]], times[keep.back()], n};
}

double stability_coefficient(double t, double lambda, double M, double L) {
  if (t < 0.0 || lambda < 0.0 || M < 0.0 || L < 0.0)
    fail(ErrorCode::invalid_argument, "stability_coefficient needs nonnegative arguments");
  return 1.0 + (M + 5.0 * lambda * L) * t + 2.0 * t * t * lambda * M * L;
}

double stability_bound(double t, double lambda, double M, double L, double w1_initial) {
  return std::exp(lambda * L * t) * stability_coefficient(t, lambda, M, L) * w1_initial;
}

std::vector<std::size_t> upper_half(const StateSpace& space) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    bool in = false;
    switch (space.kind()) {
      case SpaceKind::torus_grid: in = i >= space.grid_n(); break;
      case SpaceKind::atomic_circle: in = space.coordinate(i) >= 0.0; break;
      case SpaceKind::reflected_interval: in = space.coordinate(i) > 0.0; break;
    }
    if (in) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> lower_half(const StateSpace& space) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    bool in = false;
    switch (space.kind()) {
      case SpaceKind::torus_grid: in = i < space.grid_n(); break;
      case SpaceKind::atomic_circle: in = space.coordinate(i) < 0.0; break;
      case SpaceKind::reflected_interval: in = space.coordinate(i) < 0.0; break;
    }
    if (in) out.push_back(i);
  }
  return out;
}

std::vector<ComponentPair> component_pairs(const EquilibriumPrediction& prediction) {
  std::vector<ComponentPair> out;
  const auto& g = prediction.graph;
  for (std::size_t id = 0; id < g.component_count(); ++id) {
    const std::size_t p = g.component(id).partner;
    if (p == kNoComponent || p < id) continue;
    out.push_back({id, p, prediction.components.at(id).eta});
  }
  return out;
}

std::vector<double> DiagnosticsSeries::times() const {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.t);
  return v;
}

std::vector<double> DiagnosticsSeries::column_H() const {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.H);
  return v;
}

std::vector<double> DiagnosticsSeries::column_H_rel() const {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.H_rel);
  return v;
}

DiagnosticsSeries compute_diagnostics(const Trajectory& traj, const CollisionKernel& b,
                                      const EquilibriumPrediction& prediction, const DiagnosticsOptions& options) {
  DiagnosticsSeries out;
  out.pairs = component_pairs(prediction);
  const DiscreteMeasure& mu = traj.mu;
  const auto up = upper_half(mu.space());
  const auto lo = lower_half(mu.space());
  const OddCoordinate h_inf = relative_odd(prediction.f_infty, mu);
  const bool want_w1 = options.wasserstein && mu.space().is_circle();
  const auto& g = prediction.graph;

  for (std::size_t k = 0; k < traj.size(); ++k) {
    const DiscreteMeasure& f = traj.states[k];
    const OddCoordinate h = traj.odd(k);
    DiagnosticsRow row;
    row.t = traj.times[k];
    row.mass_total = f.total_mass();
    row.mass_upper = f.mass_on(up);
    row.mass_lower = f.mass_on(lo);
    row.H = entropy(h, mu);
    row.D = dissipation(h, mu, b);
    double rel = 0.0;
    for (std::size_t x : h.support) {
      const double d = h[x] - h_inf[x];
      rel += d * d * mu.mass(x);
    }
    row.H_rel = 0.5 * rel;
    row.tv_to_finfty = tv_distance(f, prediction.f_infty);
    for (const auto& p : out.pairs) {
      const auto& T = g.component(p.component).points;
      const auto& Ts = g.component(p.partner).points;
      row.H_T.push_back(component_entropy(h, mu, T, Ts, p.eta));
      row.D_T.push_back(component_dissipation(h, mu, b, T, Ts));
    }
    if (want_w1) row.w1_to_finfty = wasserstein1_circle(f, prediction.f_infty);
    out.rows.push_back(std::move(row));
  }
  return out;
}

ConservedReport conserved_report(const Trajectory& traj, const EquilibriumPrediction& prediction) {
  if (traj.size() == 0) fail(ErrorCode::invalid_argument, "conserved_report needs a nonempty trajectory");
  ConservedReport rep;
  const DiscreteMeasure& mu = traj.mu;
  const auto& g = prediction.graph;
  const auto up = upper_half(mu.space());
  const auto lo = lower_half(mu.space());

  auto is_union = [&](const std::vector<std::size_t>& set) {
    std::vector<char> in(mu.size(), 0);
    for (std::size_t x : set) in[x] = 1;
    for (const auto& c : g.components()) {
      const char first = in[c.points.front()];
      for (std::size_t x : c.points)
        if (in[x] != first) return false;
    }
    return true;
  };
  rep.halves_are_component_unions = is_union(up) && is_union(lo);

  std::vector<std::size_t> with_partner;
  for (std::size_t id = 0; id < g.component_count(); ++id)
    if (g.component(id).partner != kNoComponent) with_partner.push_back(id);

  const DiscreteMeasure& f0 = traj.states.front();
  const double m0 = f0.total_mass(), u0 = f0.mass_on(up), l0 = f0.mass_on(lo);
  const OddCoordinate h0 = traj.odd(0);
  std::vector<double> eta0;
  for (std::size_t id : with_partner) eta0.push_back(eta_from_h(id, g, h0, mu));
  double H_prev = entropy(h0, mu);

  for (std::size_t k = 0; k < traj.size(); ++k) {
    const DiscreteMeasure& f = traj.states[k];
    rep.mass_total_drift = std::max(rep.mass_total_drift, std::abs(f.total_mass() - m0));
    if (rep.halves_are_component_unions) {
      rep.mass_upper_drift = std::max(rep.mass_upper_drift, std::abs(f.mass_on(up) - u0));
      rep.mass_lower_drift = std::max(rep.mass_lower_drift, std::abs(f.mass_on(lo) - l0));
    }
    const OddCoordinate h = traj.odd(k);
    for (std::size_t j = 0; j < with_partner.size(); ++j)
      rep.eta_drift = std::max(rep.eta_drift, std::abs(eta_from_h(with_partner[j], g, h, mu) - eta0[j]));
    const DiscreteMeasure sym = symmetric_part(f);
    for (std::size_t x = 0; x < mu.size(); ++x)
      rep.symmetric_part_drift = std::max(rep.symmetric_part_drift, std::abs(sym.mass(x) - mu.mass(x)));
    if (k > 0) {
      const double H = entropy(h, mu);
      rep.max_entropy_increase = std::max(rep.max_entropy_increase, H - H_prev);
      H_prev = H;
    }
  }
  return rep;
}

}  // namespace revcoll
