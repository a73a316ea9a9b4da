#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>

#include "oracles.hpp"
#include "revcoll/diagnostics.hpp"
#include "revcoll/dynamics.hpp"
#include "revcoll/equilibrium.hpp"
#include "revcoll/error.hpp"
#include "revcoll/graph.hpp"
#include "revcoll/runner.hpp"
#include "revcoll/scenarios.hpp"

namespace acceptance {

using namespace revcoll;

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[240];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Context {
  std::uint64_t seed;
  std::map<std::string, std::shared_ptr<RunResult>> runs;
  std::map<std::string, double> run_seconds;

  const RunResult& run(const std::string& spec) {
    auto it = runs.find(spec);
    if (it != runs.end()) return *it->second;
    const auto t0 = Clock::now();
    auto res = std::make_shared<RunResult>(execute(scenario_from_spec(spec)));
    run_seconds[spec] = seconds_since(t0);
    return *runs.emplace(spec, res).first->second;
  }
};

struct Check {
  CriterionResult& r;
  void operator()(bool ok, const std::string& what) {
    r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    r.pass = r.pass && ok;
  }
};

// ---------------------------------------------------------------------------

void exact_solution(Context&, CriterionResult& r) {
  Check check{r};
  const auto t0 = Clock::now();
  const ExperimentConfig c = scenario_config("epsilon_family", {{"eps", 0.1}});
  const ResolvedExperiment ex = resolve(c);
  const std::vector<double> times{0.0, 0.5, 1.0, 5.0};
  const auto& space = *ex.space;
  const double eps = 0.1;
  const std::size_t idx[4] = {*space.find(0.0), *space.find(kPi / 2 + eps), *space.find(kPi),
                              *space.find(-kPi / 2 + eps)};
  auto max_err = [&](const Trajectory& tr) {
    double e = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const auto exact = oracle::epsilon_family_exact(tr.times[k]);
      for (int a = 0; a < 4; ++a) e = std::max(e, std::abs(tr.states[k].mass(idx[a]) - exact[a]));
    }
    return e;
  };
  const double e_expm = max_err(simulate_h(ex.initial, ex.kernel, times, HMethod::expm));
  HOptions opt;
  opt.dt = 0.01;
  const double e_rk4 = max_err(simulate_h(ex.initial, ex.kernel, times, HMethod::rk4, opt));
  const double secs = seconds_since(t0);
  check(e_expm <= 1e-10, fmt("expm max per-atom error %.3e <= 1e-10 at t in {0.5, 1, 5}", e_expm));
  check(e_rk4 <= 1e-7, fmt("rk4 (dt = 0.01) max per-atom error %.3e <= 1e-7", e_rk4));
  check(secs < 1.0, fmt("runtime %.3f s < 1 s", secs));
}

LinearGenerator three_dirac_generator(double a, double b, double g) {
  const ExperimentConfig c = scenario_config("three_dirac", {{"alpha", a}, {"beta", b}, {"gamma", g}});
  const ResolvedExperiment ex = resolve(c);
  return build_generator(symmetric_part(ex.initial), ex.kernel);
}

void spectral(Context& ctx, CriterionResult& r) {
  Check check{r};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(ctx.seed);
  std::exponential_distribution<double> ex(1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    // uniform point of the open simplex a + b + c = 1/2
    const double u = ex(rng), v = ex(rng), w = ex(rng);
    const double s = 2.0 * (u + v + w);
    const double a = u / s, b = v / s, g = 0.5 - a - b;
    const auto red = odd_reduction(three_dirac_generator(a, b, g));
    const auto got = characteristic_polynomial(red.matrix);
    const double sum2 = a * a + b * b + g * g + 2 * (a * b + a * g + b * g);
    const double want[4] = {1.0, 2.0, 4.0 * sum2, 32.0 * a * b * g};
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(got.at(k) - want[k]));
  }
  check(worst <= 1e-12, fmt("max coefficient error %.3e <= 1e-12 over 100 random (alpha, beta, gamma)", worst));
  const double a = 1e-3, b = (0.5 - a) / 2;
  const auto spec = odd_spectrum(three_dirac_generator(a, b, b));
  const double slowest = spec.maxCoeff();
  const double target = -32.0 * a * b * b;
  const double rel = std::abs(slowest - target) / std::abs(target);
  check(rel <= 0.05, fmt("alpha = 1e-3: slowest eigenvalue %.6e vs -32 alpha beta gamma = %.6e, rel. error %.3e <= 5%%",
                         slowest, target, rel));
  const double secs = seconds_since(t0);
  check(secs < 1.0, fmt("runtime %.3f s < 1 s", secs));
}

double max_abs_diff(const DiscreteMeasure& f, const DiscreteMeasure& g) {
  double d = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f.mass(i) - g.mass(i)));
  return d;
}

void figures(Context& ctx, CriterionResult& r) {
  Check check{r};
  double total = 0.0;
  for (const char* name : {"fig1", "fig3"}) {
    const RunResult& res = ctx.run(name);
    total += ctx.run_seconds[name];
    const auto& last = res.series->rows.back();
    check(res.prediction.graph.component_count() == 1 && max_abs_diff(res.prediction.f_infty, res.prediction.mu) == 0.0,
          std::string(name) + ": one component, f_inf = mu");
    check(last.tv_to_finfty < 1e-3,
          std::string(name) + fmt(": tv_to_finfty(t = %g) = %.3e < 1e-3", last.t, last.tv_to_finfty));
  }
  {
    const RunResult& res = ctx.run("fig1");
    const auto& first = res.series->rows.front();
    const auto& last = res.series->rows.back();
    const double dev = std::max(std::abs(last.mass_upper - 0.5), std::abs(last.mass_lower - 0.5));
    check(dev <= 1e-3, fmt("fig1: half-torus masses %.6f / %.6f initially, %.3e from 1/2 at the end (<= 1e-3)",
                           first.mass_upper, first.mass_lower, dev));
  }
  {
    const RunResult& res = ctx.run("fig4");
    total += ctx.run_seconds["fig4"];
    const auto& pred = res.prediction;
    const auto& g = pred.graph;
    const auto& space = pred.mu.space();
    const auto up = upper_half(space);
    const double rho_up = res.resolved.initial.mass_on(up);
    double err = 0.0;
    bool etas_nonzero = true;
    for (std::size_t i : g.support()) {
      const double rho = space.coordinate(i) > 0 ? rho_up : 1.0 - rho_up;
      err = std::max(err, std::abs(pred.f_infty.mass(i) - 2.0 * rho * pred.mu.mass(i)));
    }
    for (const auto& rec : pred.components) etas_nonzero = etas_nonzero && std::abs(rec.eta) > 0.1;
    check(g.component_count() == 2 && etas_nonzero,
          fmt("fig4: two components with eta = %+.6f, %+.6f", pred.components.at(0).eta, pred.components.at(1).eta));
    check(err <= 1e-14, fmt("fig4: f_inf = 2 rho_pm mu on each component (max deviation %.3e)", err));
    const auto& last = res.series->rows.back();
    check(last.tv_to_finfty < 1e-3, fmt("fig4: tv_to_finfty(t = %g) = %.3e < 1e-3", last.t, last.tv_to_finfty));
    const auto& c = *res.conserved;
    const double drift = std::max(c.mass_upper_drift, c.mass_lower_drift);
    check(c.halves_are_component_unions && drift <= 1e-10,
          fmt("fig4: half-torus mass drift %.3e <= 1e-10", drift));
  }
  check(total < 60.0, fmt("runtime of the three figure runs %.2f s < 60 s", total));
}

const std::vector<std::string>& all_scenarios() {
  static const std::vector<std::string> s = {"fig1",        "fig3",         "fig4",
                                             "epsilon_family", "three_dirac",  "four_atoms",
                                             "gap_interval", "truncated_components"};
  return s;
}

void conservation(Context& ctx, CriterionResult& r) {
  Check check{r};
  for (const auto& name : all_scenarios()) {
    const RunResult& res = ctx.run(name);
    const auto& c = *res.conserved;
    const bool euler = res.config.integrator.method == Method::euler;
    const double sym_tol = euler ? 1e-10 : 1e-12;
    const bool ok = c.mass_total_drift <= 1e-12 && c.symmetric_part_drift <= sym_tol && c.eta_drift <= 1e-10;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-21s [%s] mass %.2e, symmetric part %.2e (<= %.0e), eta %.2e", name.c_str(),
                  to_string(res.config.integrator.method), c.mass_total_drift, c.symmetric_part_drift, sym_tol,
                  c.eta_drift);
    check(ok, buf);
  }
}

struct AtomicInstance {
  DiscreteMeasure f;
  CollisionKernel b;
};

double min_bound(const EquilibriumPrediction& pred, const CollisionKernel& b) {
  double lam = INFINITY;
  for (const auto& p : component_pairs(pred)) {
    const auto& g = pred.graph;
    // pairs already at equilibrium carry no decay to compare against
    lam = std::min(lam, rate_lower_bound(g.component(p.component).points, g.component(p.partner).points, pred.mu, b)
                            .lambda);
  }
  return lam;
}

void entropy_suite(Context& ctx, CriterionResult& r) {
  Check check{r};
  double worst_increase = -INFINITY;
  std::string worst_name;
  for (const auto& name : all_scenarios()) {
    const RunResult& res = ctx.run(name);
    for (std::size_t k = 1; k < res.series->rows.size(); ++k) {
      const double inc = res.series->rows[k].H - res.series->rows[k - 1].H;
      if (inc > worst_increase) {
        worst_increase = inc;
        worst_name = name;
      }
    }
  }
  check(worst_increase <= 1e-9,
        fmt("H nonincreasing on all scenarios: largest step increase %.3e <= 1e-9", worst_increase) + " (" +
            worst_name + ")");

  for (const char* name : {"fig1", "fig3", "fig4", "epsilon_family", "three_dirac"}) {
    const RunResult& res = ctx.run(name);
    if (!res.fit) {
      check(false, std::string(name) + ": no fit (" + res.fit_note + ")");
      continue;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-15s log(H - H_inf) fit on t in [%g, %g]: rate %.6g, r^2 = %.6f >= 0.99", name,
                  res.fit->t_begin, res.fit->t_end, res.fit->lambda, res.fit->r_squared);
    check(res.fit->r_squared >= 0.99, buf);
  }

  // fitted rate versus the covering bound on atomic instances
  std::vector<std::pair<std::string, AtomicInstance>> inst;
  for (const char* name : {"epsilon_family", "three_dirac", "three_dirac(1e-1)"}) {
    const ExperimentConfig c = scenario_from_spec(name);
    ResolvedExperiment ex = resolve(c);
    inst.push_back({name, {ex.initial, ex.kernel}});
  }
  std::mt19937_64 rng(ctx.seed + 5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  while (inst.size() < 3 + 40) {
    const int m = 1 + static_cast<int>(U(rng) * 5);
    std::vector<double> angles, masses;
    for (int i = 0; i < m; ++i) {
      angles.push_back(-kPi + 2 * kPi * U(rng));
      masses.push_back(0.1 + U(rng));
    }
    double s = 0.0;
    for (double x : masses) s += x;
    for (double& x : masses) x /= s;
    std::shared_ptr<const StateSpace> space;
    try {
      space = std::make_shared<StateSpace>(atomic_circle(angles));
    } catch (const Error&) {
      continue;
    }
    masses.resize(space->size(), 0.0);
    const double alpha = 0.3 + U(rng) * 2.5;
    const bool smooth = U(rng) < 0.5;
    CollisionKernel b = smooth ? smooth_kernel(*space, alpha, alpha * (0.1 + 0.8 * U(rng))) : indicator_kernel(*space, alpha);
    inst.push_back({"random #" + std::to_string(inst.size() - 2), {DiscreteMeasure(space, masses), std::move(b)}});
  }
  std::size_t compared = 0, good = 0;
  std::string first_bad;
  double min_ratio = INFINITY;
  for (const auto& [name, in] : inst) {
    const auto pred = predict_equilibrium(in.f, in.b);
    const double bound = min_bound(pred, in.b);
    if (!std::isfinite(bound)) continue;
    const auto A = build_generator(pred.mu, in.b);
    // horizon long enough to leave the fastest modes behind
    const double t_end = std::min(400.0, std::max(10.0, 20.0 / std::max(bound, 1e-3)));
    const auto tr = integrate_h(relative_odd(in.f, pred.mu), A, uniform_times(t_end, 400), HMethod::expm);
    const auto series = compute_diagnostics(tr, in.b, pred);
    DecayFit fit{};
    try {
      fit = fit_decay_rate(series.times(), series.column_H_rel());
    } catch (const Error&) {
      continue;  // already at equilibrium
    }
    ++compared;
    const double ratio = fit.lambda / bound;
    min_ratio = std::min(min_ratio, ratio);
    if (fit.lambda >= bound * (1 - 1e-9))
      ++good;
    else if (first_bad.empty())
      first_bad = name + fmt(": fitted %.6g < bound %.6g", fit.lambda, bound);
  }
  check(compared >= 20 && good == compared,
        fmt("fitted rate >= covering lower bound on %g of %g atomic instances (min ratio fitted/bound %.4g)",
            static_cast<double>(good), static_cast<double>(compared), min_ratio) +
            (first_bad.empty() ? "" : "; " + first_bad));
}

struct GraphStats {
  std::size_t instances = 0, count_bound = 0, even = 0, duals = 0, cases = 0, gap = 0;
};

void graph_suite(Context& ctx, CriterionResult& r) {
  Check check{r};
  std::mt19937_64 rng(ctx.seed + 6);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  GraphStats st;
  std::size_t multi = 0;
  while (st.instances < 1000) {
    const int m = 1 + static_cast<int>(U(rng) * 8);
    std::vector<double> angles, masses;
    for (int i = 0; i < m; ++i) {
      angles.push_back(-kPi + 2 * kPi * U(rng));
      masses.push_back(0.05 + U(rng));
    }
    std::shared_ptr<const StateSpace> space;
    try {
      space = std::make_shared<StateSpace>(atomic_circle(angles));
    } catch (const Error&) {
      continue;
    }
    double s = 0.0;
    for (double x : masses) s += x;
    for (double& x : masses) x /= s;
    masses.resize(space->size(), 0.0);
    const double alpha = 0.05 + U(rng) * (kPi - 0.1);
    const auto b = indicator_kernel(*space, alpha);
    const DiscreteMeasure mu = symmetric_part(DiscreteMeasure(space, masses));
    const auto g = build_graph(mu, b);
    ++st.instances;
    const std::size_t n = g.component_count();
    if (n > 1) ++multi;
    if (static_cast<int>(n) <= component_count_bound(alpha)) ++st.count_bound;
    if (n <= 1 || n % 2 == 0) ++st.even;
    bool duals = true, cases = true;
    for (std::size_t id = 0; id < n; ++id) {
      const auto& c = g.component(id);
      if (c.partner == kNoComponent) {
        cases = false;
        continue;
      }
      const auto& p = g.component(c.partner);
      duals = duals && p.partner == id && g.component(p.reversed).points == g.component(g.component(c.reversed).partner).points;
      cases = cases && (c.tag == CaseTag::pair_ii || c.tag == CaseTag::single_v);
    }
    if (duals) ++st.duals;
    if (cases) ++st.cases;
    if (gap_interval_exists(mu, alpha) == (n > 1)) ++st.gap;
  }
  const double N = static_cast<double>(st.instances);
  check(st.count_bound == st.instances, fmt("component count <= 2 floor(pi/alpha): %g / %g", st.count_bound, N));
  check(st.even == st.instances,
        fmt("component count even when > 1: %g / %g (%g instances with several components)", st.even, N,
            static_cast<double>(multi)));
  check(st.duals == st.instances, fmt("(T_*)_* = T and (T_*)rev = (T rev)_*: %g / %g", st.duals, N));
  check(st.cases == st.instances, fmt("b(x, rev x) > 0 leaves only cases (ii) and (v): %g / %g", st.cases, N));
  check(st.gap == st.instances, fmt("gap arc of length alpha exists iff several components: %g / %g", st.gap, N));
}

std::vector<Atom> random_atoms(std::mt19937_64& rng, int max_atoms) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int m = 1 + static_cast<int>(U(rng) * max_atoms);
  std::vector<Atom> a;
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    a.push_back({-kPi + 2 * kPi * U(rng), 0.05 + U(rng)});
    s += a.back().mass;
  }
  for (auto& x : a) x.mass /= s;
  return a;
}

void transport_suite(Context& ctx, CriterionResult& r) {
  Check check{r};
  std::mt19937_64 rng(ctx.seed + 7);
  double worst = 0.0;
  std::size_t dual_ok = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = random_atoms(rng, 5);
    const auto g = random_atoms(rng, 5);
    const double w = wasserstein1_circle(f, g);
    worst = std::max(worst, std::abs(w - oracle::transport_w1(f, g)));
    if (oracle::lipschitz_dual_value(f, g, rng) <= w + 1e-12) ++dual_ok;
  }
  check(worst <= 1e-9, fmt("W1 vs min-cost-flow oracle on 500 random pairs (<= 5 atoms): max error %.3e <= 1e-9", worst));
  check(dual_ok == 500, fmt("random 1-Lipschitz test functions never exceed W1: %g / 500", static_cast<double>(dual_ok)));

  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::size_t ok = 0, pairs = 0;
  double worst_ratio = 0.0;
  const auto times = uniform_times(2.0, 20);
  while (pairs < 100) {
    const auto base = random_atoms(rng, 4);
    std::vector<Atom> near = base;
    for (auto& a : near) {
      a.angle += 0.05 * (U(rng) - 0.5);
      a.mass *= 1.0 + 0.1 * (U(rng) - 0.5);
    }
    double s = 0.0;
    for (auto& a : near) s += a.mass;
    for (auto& a : near) a.mass /= s;
    const double alpha = 0.5 + 2.0 * U(rng);
    const double ramp = alpha * (0.1 + 0.8 * U(rng));
    auto simulate = [&](const std::vector<Atom>& atoms) {
      std::vector<double> angles, masses;
      for (const auto& a : atoms) {
        angles.push_back(a.angle);
        masses.push_back(a.mass);
      }
      auto space = std::make_shared<StateSpace>(atomic_circle(angles));
      masses.resize(space->size(), 0.0);
      const auto b = smooth_kernel(*space, alpha, ramp);
      HOptions opt;
      opt.dt = 0.01;
      return simulate_h(DiscreteMeasure(space, masses), b, times, HMethod::rk4, opt);
    };
    std::optional<Trajectory> ta, tb;
    try {
      ta = simulate(base);
      tb = simulate(near);
    } catch (const Error&) {
      continue;  // coincident atoms after the perturbation
    }
    ++pairs;
    const double w0 = wasserstein1_circle(to_atoms(ta->states[0]), to_atoms(tb->states[0]));
    bool holds = true;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double w = wasserstein1_circle(to_atoms(ta->states[k]), to_atoms(tb->states[k]));
      const double bound = stability_bound(times[k], 1.0 / ramp, 1.0, kPi, w0);
      holds = holds && w <= bound * (1 + 1e-12) + 1e-15;
      worst_ratio = std::max(worst_ratio, w / std::max(bound, 1e-300));
    }
    if (holds) ++ok;
  }
  check(ok == pairs, fmt("stability bound exp(lambda L t) C(t) W1(0) holds for t <= 2 on %g / %g smooth-kernel pairs "
                         "(max W1(t)/bound %.3e)",
                         static_cast<double>(ok), static_cast<double>(pairs), worst_ratio));
}

void degeneracy(Context& ctx, CriterionResult& r) {
  Check check{r};
  {
    const RunResult& res = ctx.run("gap_interval");
    const auto& g = res.prediction.graph;
    const auto& space = res.prediction.mu.space();
    std::vector<std::vector<std::size_t>> want(3);
    for (std::size_t i = 0; i < space.size(); ++i) {
      const double x = space.coordinate(i);
      want[x < 0 ? 0 : x == 0 ? 1 : 2].push_back(i);
    }
    std::vector<std::vector<std::size_t>> got;
    for (const auto& c : g.components()) got.push_back(c.points);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    check(got == want, fmt("gap_interval: components {x<0}, {0}, {x>0} (%g components found)",
                           static_cast<double>(g.component_count())));
    if (res.fit)
      r.details.push_back(fmt("info gap_interval fitted rate %.4g (r^2 %.4f), no bound asserted", res.fit->lambda,
                              res.fit->r_squared));
  }
  {
    const RunResult& res = ctx.run("truncated_components");
    std::string tags;
    for (const auto& c : res.prediction.components) tags += std::string(tags.empty() ? "" : " ") + to_string(c.tag);
    r.details.push_back("info truncated_components: " + std::to_string(res.prediction.graph.component_count()) +
                        " components [" + tags + "]");
  }
  std::vector<double> rates;
  for (const char* spec : {"three_dirac(1e-1)", "three_dirac(1e-2)", "three_dirac(1e-3)"}) {
    const RunResult& res = ctx.run(spec);
    rates.push_back(res.fit ? res.fit->lambda : NAN);
  }
  const bool mono = rates[0] > rates[1] && rates[1] > rates[2] && rates[2] > 0;
  check(mono, fmt("three_dirac fitted rates %.4g > %.4g > %.4g for alpha = 1e-1, 1e-2, 1e-3", rates[0], rates[1],
                  rates[2]));
  const double a = 1e-3, b = (0.5 - a) / 2;
  const double predicted = 2 * 32 * a * b * b;
  const double rel = std::abs(rates[2] - predicted) / predicted;
  r.details.push_back(fmt("info alpha = 1e-3: fitted %.5g vs 2 * 32 alpha beta gamma = %.5g (rel. %.2e)", rates[2],
                          predicted, rel));
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Context&, CriterionResult&)> fn;
};

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::vector<int>& only) {
  const std::vector<Criterion> criteria = {
      {1, "exact-solution oracle (epsilon family)", exact_solution},
      {2, "spectral reproduction (three Dirac masses)", spectral},
      {3, "figure reproduction (fig1, fig3, fig4)", figures},
      {4, "conservation suite", conservation},
      {5, "entropy suite", entropy_suite},
      {6, "graph property suite", graph_suite},
      {7, "transport suite", transport_suite},
      {8, "degeneracy probes", degeneracy},
  };
  Context ctx{seed, {}, {}};
  std::vector<CriterionResult> out;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    CriterionResult r{c.id, c.title, true, {}, 0.0};
    const auto t0 = Clock::now();
    try {
      c.fn(ctx, r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.details.push_back(std::string("FAIL exception: ") + e.what());
    }
    r.seconds = seconds_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

bool report(const std::vector<CriterionResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    char head[200];
    std::snprintf(head, sizeof head, "criterion %d: %s  %s  (%.2f s)", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(),
                  r.seconds);
    out << head << '\n';
    for (const auto& d : r.details) out << "    " << d << '\n';
    all = all && r.pass;
  }
  out << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  return all;
}

}  // namespace acceptance
