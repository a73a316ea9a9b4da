#include "revcoll/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revcoll/dynamics.hpp"
#include "revcoll/error.hpp"

namespace revcoll {

namespace {

// T u rev(T_*) as a sorted point list (the two are equal or disjoint).
std::vector<std::size_t> plus_set(std::size_t id, const InteractionGraph& graph) {
  const Component& t = graph.component(id);
  if (t.partner == kNoComponent) fail(ErrorCode::invalid_argument, "eta needs a nonempty partner set");
  const std::size_t pr = graph.component(t.partner).reversed;
  std::vector<std::size_t> pts = t.points;
  if (pr != id) {
    const auto& extra = graph.component(pr).points;
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end());
  }
  return pts;
}

}  // namespace

double eta(std::size_t id, const InteractionGraph& graph, const DiscreteMeasure& f_initial, const DiscreteMeasure& mu) {
  const auto pts = plus_set(id, graph);
  const double mass_mu = mu.mass_on(pts);
  if (!(mass_mu > 0.0)) fail(ErrorCode::internal_error, "zero mu-mass on T u rev T_*");
  const double by_mass = f_initial.mass_on(pts) / mass_mu - 1.0;

  const Component& t = graph.component(id);
  const auto& ts = graph.component(t.partner).points;
  const OddCoordinate h = relative_odd(f_initial, mu);
  double rho = 0.0, rho_s = 0.0, int_t = 0.0, int_s = 0.0;
  for (std::size_t x : t.points) {
    rho += mu.mass(x);
    int_t += h[x] * mu.mass(x);
  }
  for (std::size_t x : ts) {
    rho_s += mu.mass(x);
    int_s += h[x] * mu.mass(x);
  }
  const double by_average = (int_t - int_s) / (rho + rho_s);
  if (std::abs(by_mass - by_average) > 1e-12)
    fail(ErrorCode::internal_error, "eta formulas disagree: " + std::to_string(by_mass) + " vs " +
                                        std::to_string(by_average));
  return by_mass;
}

double eta_from_h(std::size_t id, const InteractionGraph& graph, const OddCoordinate& h, const DiscreteMeasure& mu) {
  const Component& t = graph.component(id);
  if (t.partner == kNoComponent) fail(ErrorCode::invalid_argument, "eta needs a nonempty partner set");
  double rho = 0.0, num = 0.0;
  for (std::size_t x : t.points) {
    rho += mu.mass(x);
    num += h[x] * mu.mass(x);
  }
  for (std::size_t x : graph.component(t.partner).points) {
    rho += mu.mass(x);
    num -= h[x] * mu.mass(x);
  }
  return num / rho;
}

EquilibriumPrediction predict_equilibrium(const DiscreteMeasure& f_initial, const CollisionKernel& b) {
  if (std::abs(f_initial.total_mass() - 1.0) > 1e-10)
    fail(ErrorCode::invalid_argument, "predict_equilibrium needs a probability measure, mass = " +
                                          std::to_string(f_initial.total_mass()));
  DiscreteMeasure mu = symmetric_part(f_initial);
  InteractionGraph graph = build_graph(mu, b);

  std::vector<ComponentRecord> records(graph.component_count());
  std::vector<double> f_inf(mu.size(), 0.0);
  // one eta per orbit; the others follow from eta(T_*) = eta(rev T) = -eta(T)
  for (const auto& orbit : graph.orbits()) {
    const std::size_t base = orbit.front();
    const Component& t = graph.component(base);
    if (t.partner == kNoComponent) {
      records[base] = {base, CaseTag::isolated, 0.0, mu.mass_on(t.points), 0.0};
      for (std::size_t x : t.points) f_inf[x] = f_initial.value(x);
      continue;
    }
    double e = eta(base, graph, f_initial, mu);
    if (t.tag == CaseTag::pair_iii || t.tag == CaseTag::pair_iv || t.tag == CaseTag::single_v) e = 0.0;
    const std::size_t p = t.partner;
    const std::size_t r = t.reversed;
    const std::size_t pr = graph.component(p).reversed;
    for (const auto& [id, sign] : {std::pair{base, 1.0}, {pr, 1.0}, {p, -1.0}, {r, -1.0}}) {
      const Component& c = graph.component(id);
      records[id] = {id, c.tag, sign * e, mu.mass_on(c.points), mu.mass_on(graph.component(c.partner).points)};
      for (std::size_t x : c.points) f_inf[x] = (1.0 + sign * e) * mu.value(x);
    }
  }
  DiscreteMeasure f_infty = mu.with_values(std::move(f_inf));
  return {std::move(mu), std::move(graph), std::move(f_infty), std::move(records)};
}

double verify_steady(const DiscreteMeasure& f, const CollisionKernel& b) {
  const auto rate = collision_rate(f, b);
  double m = 0.0;
  for (double r : rate) m = std::max(m, std::abs(r));
  return m;
}

}  // namespace revcoll
