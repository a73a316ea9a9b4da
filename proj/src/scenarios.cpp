#include "revcoll/scenarios.hpp"

#include <cmath>
#include <functional>

#include "revcoll/error.hpp"

namespace revcoll {

namespace {

constexpr double kQuarter = kPi / 4;

double bump(double p, double lo, double hi, double skew) {
  if (p <= lo || p >= hi) return 0.0;
  const double u = (p - lo) / (hi - lo);
  const double s = std::sin(kPi * u);
  return s * s * (1.0 + skew * (u - 0.5));
}

// Samples a density on torus_grid(n), scaling each listed part to its mass.
std::vector<double> grid_profile(std::size_t n, const std::vector<std::pair<std::function<double(double)>, double>>& parts) {
  const auto space = torus_grid(n);
  std::vector<double> v(2 * n, 0.0);
  for (const auto& [shape, mass] : parts) {
    std::vector<double> s(2 * n);
    double total = 0.0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      s[k] = shape(space.coordinate(k));
      total += s[k] * kPi / static_cast<double>(n);
    }
    for (std::size_t k = 0; k < 2 * n; ++k) v[k] += mass * s[k] / total;
  }
  return v;
}

std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  for (double& x : v) x /= s;
  return v;
}

ExperimentConfig base(const std::string& name, const std::string& description) {
  ExperimentConfig c;
  c.name = name;
  c.description = description;
  c.output.directory = "out/" + name;
  return c;
}

void integrator(ExperimentConfig& c, Method m, double dt, std::size_t steps, std::size_t every) {
  c.integrator.method = m;
  c.integrator.dt = dt;
  c.integrator.steps = steps;
  c.integrator.snapshot_every = every;
}

void indicator(ExperimentConfig& c, double alpha) {
  c.kernel.kind = KernelKind::indicator;
  c.kernel.alpha = alpha;
}

ExperimentConfig fig1(const ScenarioParams&) {
  auto c = base("fig1", "asymmetric density positive everywhere on torus_grid(202); one component");
  c.space.n = 202;
  indicator(c, kPi / 2);
  c.initial.values = grid_profile(
      202, {{[](double p) { return 1.0 + 0.3 * std::cos(2 * p) + 0.3 * std::sin(3 * p) + 0.05 * std::sin(p); }, 1.0}});
  integrator(c, Method::euler, 0.01, 1000, 10);
  return c;
}

std::vector<std::pair<std::function<double(double)>, double>> two_blocks(double rho_upper) {
  return {{[](double p) { return bump(p, kQuarter, 3 * kQuarter, 0.1); }, rho_upper},
          {[](double p) { return bump(p, -3 * kQuarter, -kQuarter, -0.1); }, 1.0 - rho_upper}};
}

ExperimentConfig fig4(const ScenarioParams& p) {
  auto c = base("fig4", "densities on (-3pi/4,-pi/4) and (pi/4,3pi/4), vacuum else; two components");
  c.space.n = 202;
  indicator(c, kPi / 2);
  c.initial.values = grid_profile(202, two_blocks(p.at("rho_upper")));
  integrator(c, Method::euler, 0.01, 250, 5);
  return c;
}

ExperimentConfig fig3(const ScenarioParams& p) {
  auto c = base("fig3", "fig4 data plus a small bridge inside (-pi/4,pi/4); one component");
  c.space.n = 202;
  indicator(c, kPi / 2);
  const double w = p.at("bridge_mass");
  auto parts = two_blocks(p.at("rho_upper"));
  for (auto& part : parts) part.second *= 1.0 - w;
  parts.push_back({[](double q) { return bump(q, -0.15, 0.09, 0.0); }, w});
  c.initial.values = grid_profile(202, parts);
  integrator(c, Method::euler, 0.1, 5000, 50);
  return c;
}

ExperimentConfig epsilon_family(const ScenarioParams& p) {
  const double eps = p.at("eps");
  if (!(eps > 0.0 && eps < kPi / 2)) fail(ErrorCode::config_invalid, "eps: must lie in (0, pi/2)");
  auto c = base("epsilon_family", "f_I = (delta_0 + delta_{pi/2+eps}) / 2 with the indicator kernel, alpha = pi/2");
  c.space.kind = SpaceKind::atomic_circle;
  c.space.points = {0.0, kPi / 2 + eps};
  indicator(c, kPi / 2);
  c.initial.values = {0.5, 0.5};
  integrator(c, Method::expm, 0.01, 500, 10);
  return c;
}

ExperimentConfig three_dirac(const ScenarioParams& p) {
  const double a = p.at("alpha");
  const double bb = std::isnan(p.at("beta")) ? (0.5 - a) / 2 : p.at("beta");
  const double g = std::isnan(p.at("gamma")) ? 0.5 - a - bb : p.at("gamma");
  if (!(a > 0 && bb > 0 && g > 0) || std::abs(a + bb + g - 0.5) > 1e-12)
    fail(ErrorCode::config_invalid, "alpha, beta, gamma: must be positive with sum 1/2");
  auto c = base("three_dirac", "mu = a(delta_0 + delta_pi) + b(delta_{2pi/3} + delta_{-pi/3}) + c(delta_{-2pi/3} + delta_{pi/3}); case (v), slow mode ~ -32abc");
  c.space.kind = SpaceKind::atomic_circle;
  // h_I = (1, 1, 1/2) on the listed atoms: with b = c the all-ones h_I is
  // orthogonal to the slow mode, so one entry is lowered to excite it
  c.space.points = {0.0, 2 * kPi / 3, -2 * kPi / 3};
  indicator(c, kPi / 2);
  c.initial.values = {2 * a, 2 * bb, 1.5 * g, 0.0, 0.0, 0.5 * g};
  // the slow mode needs a horizon of order 1 / (32 a b c)
  const double t_end = std::max(20.0, std::ceil(1.6 / (32 * a * bb * g)));
  integrator(c, Method::expm, t_end / 800, 800, 1);
  return c;
}

ExperimentConfig four_atoms(const ScenarioParams& p) {
  const double phi = p.at("phi");
  auto c = base("four_atoms", "four atoms at pi/2 spacing, alpha = pi/2; every atom is its own component");
  c.space.kind = SpaceKind::atomic_circle;
  c.space.points = {phi, phi + kPi / 2, phi + kPi, phi + 3 * kPi / 2};
  indicator(c, kPi / 2);
  c.initial.values = {0.4, 0.3, 0.1, 0.2};
  integrator(c, Method::expm, 0.05, 100, 1);
  return c;
}

ExperimentConfig gap_interval(const ScenarioParams& p) {
  const double m = p.at("points");
  if (!(m >= 2 && m <= 200 && m == std::floor(m))) fail(ErrorCode::config_invalid, "points: integer in [2, 200]");
  const auto half = static_cast<std::size_t>(m);
  auto c = base("gap_interval", "[-1,1] with b = max(|x - x*| - 1, 0); components {x<0}, {0}, {x>0}");
  c.space.kind = SpaceKind::reflected_interval;
  std::vector<double> pts, vals;
  for (std::size_t i = 0; i <= 2 * half; ++i) {
    const double x = -1.0 + static_cast<double>(i) / static_cast<double>(half);
    pts.push_back(i == half ? 0.0 : x);
    vals.push_back((1.2 + std::sin(3.0 * x + 0.4)) * (x > 0 ? 1.3 : 0.7));
  }
  c.space.points = pts;
  c.kernel.kind = KernelKind::gap;
  c.initial.values = normalized(vals);
  integrator(c, Method::rk4, 0.01, 4000, 20);
  return c;
}

// b(x, x*) = 1 iff x < x* + x*^2 and x* < x + x^2 on [0,1]^2, zero across 0,
// mirrored on [-1,0]^2.
double truncated_rate(double x, double y) {
  if (x == 0.0 || y == 0.0 || (x > 0) != (y > 0)) return 0.0;
  const double u = std::abs(x), v = std::abs(y);
  return (u < v + v * v && v < u + u * u) ? 1.0 : 0.0;
}

ExperimentConfig truncated_components(const ScenarioParams& p) {
  const double kk = p.at("K");
  if (!(kk >= 1 && kk <= 20 && kk == std::floor(kk))) fail(ErrorCode::config_invalid, "K: integer in [1, 20]");
  const auto K = static_cast<std::size_t>(kk);
  constexpr std::size_t per = 5;
  auto c = base("truncated_components",
                "first K intervals [1/(2k+1), 1/(2k)] of an infinite-component family; degeneracy probe");
  c.space.kind = SpaceKind::reflected_interval;
  std::vector<double> pos;
  for (std::size_t k = 1; k <= K; ++k) {
    const double lo = 1.0 / static_cast<double>(2 * k + 1), hi = 1.0 / static_cast<double>(2 * k);
    for (std::size_t i = 0; i < per; ++i) pos.push_back(lo + (hi - lo) * static_cast<double>(i) / (per - 1));
  }
  std::vector<double> pts, vals;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    pts.push_back(-*it);
    vals.push_back(0.8 - 0.3 * std::cos(40.0 * *it));
  }
  pts.push_back(0.0);
  vals.push_back(0.2);
  for (double x : pos) {
    pts.push_back(x);
    vals.push_back(1.0 + 0.4 * std::sin(40.0 * x));
  }
  c.space.points = pts;
  c.kernel.kind = KernelKind::custom;
  c.kernel.table.assign(pts.size(), std::vector<double>(pts.size(), 0.0));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) c.kernel.table[i][j] = truncated_rate(pts[i], pts[j]);
  c.initial.values = normalized(vals);
  integrator(c, Method::rk4, 0.01, 2000, 10);
  return c;
}

struct Entry {
  ScenarioInfo info;
  std::function<ExperimentConfig(const ScenarioParams&)> build;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"fig1", "positive-everywhere asymmetric data, n = 202, dt = 0.01, 1000 Euler steps", {}}, fig1},
      {{"fig3", "two blocks plus a small bridge near 0, dt = 0.1, 5000 Euler steps",
        {{"rho_upper", 0.7, "mass on (pi/4, 3pi/4) before the bridge"},
         {"bridge_mass", 0.02, "mass of the bridge bump"}}},
       fig3},
      {{"fig4", "two blocks, vacuum else, dt = 0.01, 250 Euler steps",
        {{"rho_upper", 0.7, "mass on (pi/4, 3pi/4)"}}},
       fig4},
      {{"epsilon_family", "two atoms (0, pi/2 + eps) with exact solution", {{"eps", 0.1, "offset"}}}, epsilon_family},
      {{"three_dirac", "atoms at 0, +-2pi/3 with masses 2a, 2b, 2c",
        {{"alpha", 1e-3, "a"}, {"beta", NAN, "b (default (1/2 - a)/2)"}, {"gamma", NAN, "c (default 1/2 - a - b)"}}},
       three_dirac},
      {{"four_atoms", "four atoms at pi/2 spacing; stationary", {{"phi", 0.3, "angle of the first atom"}}}, four_atoms},
      {{"gap_interval", "gap kernel on [-1,1]; non-compact components", {{"points", 10, "grid points per half"}}},
       gap_interval},
      {{"truncated_components", "K-term truncation of the infinite-component family; degeneracy probe",
        {{"K", 4, "number of intervals"}}},
       truncated_components},
  };
  return r;
}

}  // namespace

std::vector<ScenarioInfo> scenario_library() {
  std::vector<ScenarioInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

ExperimentConfig scenario_config(const std::string& name, const ScenarioParams& params) {
  for (const auto& e : registry()) {
    if (e.info.name != name) continue;
    ScenarioParams full;
    for (const auto& p : e.info.params) full[p.name] = p.default_value;
    for (const auto& [k, v] : params) {
      if (!full.count(k)) fail(ErrorCode::config_invalid, name + "." + k + ": unknown scenario parameter");
      full[k] = v;
    }
    ExperimentConfig c = e.build(full);
    // round-trip through the strict parser so built-ins obey the same rules
    c = parse_config(to_json(c));
    return c;
  }
  fail(ErrorCode::unknown_scenario, "no built-in scenario named '" + name + "'");
}

ExperimentConfig scenario_from_spec(const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos) return scenario_config(spec);
  if (spec.back() != ')') fail(ErrorCode::config_invalid, "scenario spec '" + spec + "' lacks a closing parenthesis");
  const std::string name = spec.substr(0, open);
  const std::string body = spec.substr(open + 1, spec.size() - open - 2);
  const ScenarioInfo* info = nullptr;
  for (const auto& e : registry())
    if (e.info.name == name) info = &e.info;
  if (!info) fail(ErrorCode::unknown_scenario, "no built-in scenario named '" + name + "'");
  ScenarioParams params;
  std::size_t pos = 0, index = 0;
  while (pos <= body.size() && !body.empty()) {
    const auto comma = body.find(',', pos);
    const std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto eq = item.find('=');
    std::string key;
    std::string value = item;
    if (eq != std::string::npos) {
      key = item.substr(0, eq);
      value = item.substr(eq + 1);
    } else {
      if (index >= info->params.size()) fail(ErrorCode::config_invalid, name + ": too many positional parameters");
      key = info->params[index].name;
    }
    try {
      params[key] = std::stod(value);
    } catch (const std::exception&) {
      fail(ErrorCode::config_invalid, name + "." + key + ": bad number '" + value + "'");
    }
    ++index;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return scenario_config(name, params);
}

}  // namespace revcoll
