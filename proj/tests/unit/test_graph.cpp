#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>

#include "oracles.hpp"
#include "revcoll/config.hpp"
#include "revcoll/dynamics.hpp"
#include "revcoll/equilibrium.hpp"
#include "revcoll/graph.hpp"
#include "revcoll/scenarios.hpp"
#include "test_util.hpp"

using namespace revcoll;

namespace {

// Grid density equal to 1 on the points where keep(phi) holds.
DiscreteMeasure grid_indicator(std::size_t n, bool (*keep)(double)) {
  auto s = std::make_shared<StateSpace>(torus_grid(n));
  std::vector<double> v(s->size(), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (keep(s->coordinate(k))) v[k] = 1.0;
  auto f = DiscreteMeasure::grid_density(s, v);
  const double m = f.total_mass();
  for (double& x : v) x /= m;
  return DiscreteMeasure::grid_density(s, v);
}

bool two_arcs(double phi) {
  const double a = std::abs(phi);
  return a > kPi / 4 && a < 3 * kPi / 4;
}

std::set<std::size_t> as_set(std::span<const std::size_t> v) { return {v.begin(), v.end()}; }

std::set<std::size_t> reversed(const StateSpace& s, const std::set<std::size_t>& a) {
  std::set<std::size_t> r;
  for (auto i : a) r.insert(s.reverse(i));
  return r;
}

}  // namespace

TEST_CASE("full-support torus has a single case (v) component") {
  const auto mu = grid_indicator(20, [](double) { return true; });
  const auto b = indicator_kernel(mu.space(), kPi / 2);
  const auto g = build_graph(mu, b);
  REQUIRE(g.component_count() == 1);
  CHECK(g.component(0).tag == CaseTag::single_v);
  CHECK(g.component(0).partner == 0);
  CHECK(g.component(0).points.size() == 40);
  CHECK_FALSE(gap_interval_exists(mu, kPi / 2));
}

TEST_CASE("two arcs give the two components of case (ii)") {
  const auto mu = grid_indicator(40, two_arcs);
  const auto b = indicator_kernel(mu.space(), kPi / 2);
  const auto g = build_graph(mu, b);
  REQUIRE(g.component_count() == 2);
  for (std::size_t c = 0; c < 2; ++c) {
    const auto& comp = g.component(c);
    CHECK(comp.tag == CaseTag::pair_ii);
    CHECK(comp.partner == 1 - c);
    CHECK(comp.reversed == 1 - c);
    const bool upper = mu.space().coordinate(comp.points.front()) > 0;
    for (auto p : comp.points) CHECK((mu.space().coordinate(p) > 0) == upper);
  }
  CHECK(gap_interval_exists(mu, kPi / 2));
  CHECK(gap_interval_exists(mu, kPi / 2 - 0.01));
  CHECK_FALSE(gap_interval_exists(mu, kPi / 2 + 0.2));

  const auto cfg = scenario_config("fig4");
  const auto ex = resolve(cfg);
  const auto pred = predict_equilibrium(ex.initial, ex.kernel);
  CHECK(pred.graph.component_count() == 2);
}

TEST_CASE("four atoms at quarter turns are separate") {
  const double phi = 0.3;
  const double ang[] = {phi, phi + kPi / 2};
  auto s = std::make_shared<StateSpace>(atomic_circle(ang));
  const DiscreteMeasure mu(s, {0.25, 0.25, 0.25, 0.25});
  const auto g = build_graph(mu, indicator_kernel(*s, kPi / 2));
  REQUIRE(g.component_count() == 4);
  for (const auto& c : g.components()) {
    CHECK(c.points.size() == 1);
    CHECK(c.tag == CaseTag::pair_ii);
    CHECK(g.component(c.partner).points[0] == s->reverse(c.points[0]));
  }
  CHECK_FALSE(g.adjacent(0, 1));
  CHECK(g.collision_partners(0, s->reverse(0)));
  CHECK(g.orbits().size() == 2);
}

TEST_CASE("gap kernel on the interval splits at the origin") {
  const auto ex = resolve(scenario_config("gap_interval"));
  const auto mu = symmetric_part(ex.initial);
  const auto g = build_graph(mu, ex.kernel);
  REQUIRE(g.component_count() == 3);
  const auto& s = mu.space();
  const std::size_t zero = *s.find(0.0);
  const auto& mid = g.component(g.component_of(zero));
  CHECK(mid.points.size() == 1);
  CHECK(mid.tag == CaseTag::isolated);
  CHECK(mid.partner == kNoComponent);
  for (const auto& c : g.components()) {
    if (c.points.size() == 1) continue;
    CHECK(c.points.size() == 10);
    CHECK(c.tag == CaseTag::pair_ii);
    const bool pos = s.coordinate(c.points[0]) > 0;
    for (auto p : c.points) CHECK((s.coordinate(p) > 0) == pos);
  }
}

TEST_CASE("component count bound") {
  CHECK(component_count_bound(kPi / 2) == 4);
  CHECK(component_count_bound(kPi / 3) == 6);
  CHECK(component_count_bound(0.9 * kPi) == 2);
  CHECK_ERROR_CODE(component_count_bound(0.0), ErrorCode::invalid_argument);
  CHECK_ERROR_CODE(component_count_bound(kPi), ErrorCode::invalid_argument);
}

TEST_CASE("gap interval scan") {
  const auto full = grid_indicator(60, [](double) { return true; });
  CHECK_FALSE(gap_interval_exists(full, 0.1));
  // a hole slightly shorter than alpha, including the grid spacing
  const auto holed = grid_indicator(60, [](double p) { return !(p > 0.0 && p < 0.8); });
  CHECK_FALSE(gap_interval_exists(holed, 1.0));
  CHECK(gap_interval_exists(holed, 0.8));
  const auto one = DiscreteMeasure(std::make_shared<StateSpace>(atomic_circle(std::vector<double>{0.0})), {0.5, 0.5});
  CHECK(gap_interval_exists(one, kPi - 1e-6));
  const double p[] = {0.5};
  const auto iv = std::make_shared<StateSpace>(reflected_interval(p));
  CHECK_ERROR_CODE(gap_interval_exists(DiscreteMeasure(iv, {0.5, 0.5}), 1.0), ErrorCode::invalid_argument);
}

TEST_CASE("build_graph rejects asymmetric measures") {
  auto s = std::make_shared<StateSpace>(atomic_circle(std::vector<double>{0.0}));
  CHECK_ERROR_CODE(build_graph(DiscreteMeasure(s, {0.7, 0.3}), indicator_kernel(*s, 1.0)), ErrorCode::invalid_argument);
}

TEST_CASE("component structure on random instances") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto mu = symmetric_part(random_atomic(rng, 1 + trial % 8, 0.3));
    const auto& s = mu.space();
    const double alpha = 0.05 + (kPi - 0.1) * U(rng);
    const auto b = indicator_kernel(s, alpha);
    const auto g = build_graph(mu, b);
    const auto n = g.component_count();

    std::size_t covered = 0;
    for (auto x : g.support()) {
      REQUIRE(g.component_of(x) != kNoComponent);
      ++covered;
    }
    std::size_t total = 0;
    for (const auto& c : g.components()) total += c.points.size();
    CHECK(total == covered);

    CHECK(n <= static_cast<std::size_t>(component_count_bound(alpha)));
    if (n > 1) CHECK(n % 2 == 0);
    CHECK((n > 1) == gap_interval_exists(mu, alpha));

    for (std::size_t id = 0; id < n; ++id) {
      const auto& c = g.component(id);
      // every reversal is antipodal, so b(x, rev x) = 1 on circles
      CHECK((c.tag == CaseTag::pair_ii || c.tag == CaseTag::single_v));
      CHECK(c.partner == c.reversed);
      const auto T = as_set(c.points);
      CHECK(as_set(g.component(c.reversed).points) == reversed(s, T));
      std::set<std::size_t> star;
      for (auto x : c.points)
        for (auto y : g.support())
          if (b(x, y) > 0) star.insert(y);
      CHECK(as_set(g.component(c.partner).points) == star);
      CHECK(g.component(c.partner).partner == id);
      CHECK(g.component(c.partner).reversed == g.component(c.reversed).partner);
    }
    for (auto x : g.support())
      for (auto y : g.support())
        if (s.distance(x, y) < alpha) CHECK(g.adjacent(x, y));
  }
}

TEST_CASE("bottleneck beta matches the threshold sweep") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::size_t compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto mu = symmetric_part(random_atomic(rng, 1 + trial % 6, 0.2));
    const double alpha = 0.2 + (kPi - 0.3) * U(rng);
    const auto b = smooth_kernel(mu.space(), alpha, alpha * (0.1 + 0.8 * U(rng)));
    const auto g = build_graph(mu, b);
    for (const auto& c : g.components()) {
      if (c.partner == kNoComponent) continue;
      const auto& star = g.component(c.partner).points;
      CHECK(bottleneck_beta(c.points, star, b) == doctest::Approx(oracle::beta_sweep(c.points, star, b)).epsilon(1e-14));
      ++compared;
    }
  }
  CHECK(compared > 200);
  const auto mu = three_dirac_mu(1.0 / 6, 1.0 / 6, 1.0 / 6);
  const auto b = indicator_kernel(mu.space(), kPi / 2);
  const auto g = build_graph(mu, b);
  REQUIRE(g.component_count() == 1);
  CHECK(bottleneck_beta(g.component(0).points, g.component(0).points, b) == 1.0);
  CHECK_ERROR_CODE(bottleneck_beta({}, g.component(0).points, b), ErrorCode::invalid_argument);
}

TEST_CASE("rate lower bound examples") {
  // two antipodal atoms of mass 1/2: C = 1, lambda = 4 min(rho, rho_*) / C
  auto s = std::make_shared<StateSpace>(atomic_circle(std::vector<double>{0.0}));
  const DiscreteMeasure mu(s, {0.5, 0.5});
  const auto b = indicator_kernel(*s, kPi / 2);
  const std::size_t T[] = {0}, Ts[] = {1};
  const auto r = rate_lower_bound(T, Ts, mu, b);
  CHECK(r.beta == 1.0);
  CHECK(r.rho == 0.5);
  CHECK(r.rho_star == 0.5);
  CHECK(r.covering_constant == doctest::Approx(1.0));
  CHECK(r.lambda == doctest::Approx(2.0));
  CHECK_ERROR_CODE(rate_lower_bound(T, {}, mu, b), ErrorCode::invalid_argument);

  const auto m3 = three_dirac_mu(1.0 / 6, 1.0 / 6, 1.0 / 6);
  const auto b3 = indicator_kernel(m3.space(), kPi / 2);
  const auto g3 = build_graph(m3, b3);
  const auto r3 = rate_lower_bound(g3.component(0).points, g3.component(0).points, m3, b3);
  CHECK(r3.lambda > 0.0);
  CHECK(r3.lambda <= 1.0 / 3);
  const auto spec = odd_spectrum(build_generator(m3, b3));
  CHECK(spec.maxCoeff() == doctest::Approx(-1.0 / 3).epsilon(1e-12));
}

TEST_CASE("rate bound never exceeds the entropy decay rate of the slowest mode") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = symmetric_part(random_atomic(rng, 1 + trial % 5, 0.1));
    const double alpha = 0.2 + (kPi - 0.3) * U(rng);
    const auto b = U(rng) < 0.5 ? indicator_kernel(mu.space(), alpha)
                                : smooth_kernel(mu.space(), alpha, alpha * (0.1 + 0.8 * U(rng)));
    const auto g = build_graph(mu, b);
    const auto spec = odd_spectrum(build_generator(mu, b));
    // nonzero odd modes only; H decays at twice the eigenvalue
    double slowest = INFINITY;
    for (Eigen::Index k = 0; k < spec.size(); ++k)
      if (spec[k] < -1e-10) slowest = std::min(slowest, -spec[k]);
    if (!std::isfinite(slowest)) continue;
    // the slowest mode lives on some component, whose bound is at least the minimum
    double lam = INFINITY;
    for (const auto& c : g.components()) {
      if (c.partner == kNoComponent) continue;
      const auto r = rate_lower_bound(c.points, g.component(c.partner).points, mu, b);
      CHECK(r.lambda > 0.0);
      lam = std::min(lam, r.lambda);
    }
    CHECK(lam <= 2 * slowest * (1 + 1e-9));
  }
}
