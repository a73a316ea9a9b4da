#include "revcoll/runner.hpp"

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "revcoll/error.hpp"

namespace revcoll {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  return out;
}

std::string pair_label(const PairBound& p) { return std::to_string(p.component) + "_" + std::to_string(p.partner); }

std::vector<PairBound> compute_bounds(const EquilibriumPrediction& pred, const CollisionKernel& b) {
  std::vector<PairBound> out;
  for (const auto& p : component_pairs(pred)) {
    PairBound pb{p.component, p.partner, std::nullopt};
    try {
      pb.bound = rate_lower_bound(pred.graph.component(p.component).points, pred.graph.component(p.partner).points,
                                  pred.mu, b);
    } catch (const Error&) {
    }
    out.push_back(pb);
  }
  return out;
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Trajectory integrate(const ExperimentConfig& c, const ResolvedExperiment& r) {
  const auto& it = c.integrator;
  if (it.method == Method::euler) return euler_simulate(r.initial, r.kernel, it.dt, it.steps, it.snapshot_every);
  std::vector<double> t{0.0};
  for (std::size_t m = it.snapshot_every; m <= it.steps; m += it.snapshot_every) t.push_back(static_cast<double>(m) * it.dt);
  if (it.steps % it.snapshot_every != 0) t.push_back(static_cast<double>(it.steps) * it.dt);
  HOptions opt;
  opt.dt = it.dt;
  const HMethod m = it.method == Method::rk4 ? HMethod::rk4 : it.method == Method::expm ? HMethod::expm : HMethod::picard;
  return simulate_h(r.initial, r.kernel, t, m, opt);
}

RunResult predict(const ExperimentConfig& config) {
  ResolvedExperiment r = resolve(config);
  EquilibriumPrediction pred = predict_equilibrium(r.initial, r.kernel);
  auto bounds = compute_bounds(pred, r.kernel);
  return RunResult{config, std::move(r), std::move(pred), std::nullopt, std::nullopt, std::nullopt, std::nullopt, {},
                   std::move(bounds)};
}

RunResult execute(const ExperimentConfig& config) {
  RunResult res = predict(config);
  res.trajectory = integrate(config, res.resolved);
  DiagnosticsOptions opt;
  opt.wasserstein = config.diagnostics.wasserstein;
  res.series = compute_diagnostics(*res.trajectory, res.resolved.kernel, res.prediction, opt);
  res.conserved = conserved_report(*res.trajectory, res.prediction);
  if (config.diagnostics.fit) {
    try {
      res.fit = fit_decay_rate(res.series->times(), res.series->column_H_rel());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::insufficient_data) throw;
      res.fit_note = e.what();
    }
  }
  return res;
}

Json analysis_json(const RunResult& res) {
  const auto& g = res.prediction.graph;
  const auto& b = res.resolved.kernel;
  Json comps = Json::array();
  for (std::size_t id = 0; id < g.component_count(); ++id) {
    const auto& rec = res.prediction.components.at(id);
    Json rate = nullptr;
    for (const auto& p : res.bounds)
      if ((p.component == id || p.partner == id) && p.bound) rate = number_or_null(p.bound->lambda);
    Json j;
    j["id"] = id;
    j["points"] = g.component(id).points;
    j["case"] = to_string(rec.tag);
    j["mass"] = rec.rho;
    j["eta"] = rec.eta;
    j["rate_lower_bound"] = rate;
    comps.push_back(j);
  }
  Json out;
  out["components"] = comps;
  const bool angular = b.kind() == KernelKind::indicator || b.kind() == KernelKind::smooth;
  out["count_bound"] = angular ? Json(component_count_bound(b.alpha())) : Json(nullptr);
  out["gap_intervals"] = angular ? Json(gap_interval_exists(res.prediction.mu, b.alpha())) : Json(nullptr);
  if (res.trajectory) out["summary"] = summary_json(res);
  return out;
}

Json components_json(const RunResult& res) {
  const auto& g = res.prediction.graph;
  const auto& space = res.prediction.mu.space();
  Json comps = Json::array();
  for (std::size_t id = 0; id < g.component_count(); ++id) {
    const auto& c = g.component(id);
    const auto& rec = res.prediction.components.at(id);
    Json j;
    j["id"] = id;
    j["tag"] = to_string(rec.tag);
    j["size"] = c.points.size();
    j["points"] = c.points;
    Json coords = Json::array();
    for (std::size_t x : c.points) coords.push_back(space.coordinate(x));
    j["coordinates"] = coords;
    j["partner"] = c.partner == kNoComponent ? Json(nullptr) : Json(c.partner);
    j["reversed"] = c.reversed == kNoComponent ? Json(nullptr) : Json(c.reversed);
    j["eta"] = rec.eta;
    j["rho"] = rec.rho;
    j["rho_star"] = rec.rho_star;
    comps.push_back(j);
  }
  Json pairs = Json::array();
  for (const auto& p : res.bounds) {
    Json j;
    j["component"] = p.component;
    j["partner"] = p.partner;
    if (p.bound) {
      j["beta"] = p.bound->beta;
      j["covering_constant"] = number_or_null(p.bound->covering_constant);
      j["lambda_bound"] = number_or_null(p.bound->lambda);
    } else {
      j["beta"] = nullptr;
      j["covering_constant"] = nullptr;
      j["lambda_bound"] = nullptr;
    }
    pairs.push_back(j);
  }
  Json out;
  out["component_count"] = g.component_count();
  out["support_size"] = g.support().size();
  out["components"] = comps;
  out["pairs"] = pairs;
  out["orbits"] = g.orbits();
  return out;
}

Json summary_json(const RunResult& res) {
  Json s;
  s["name"] = res.config.name;
  s["component_count"] = res.prediction.graph.component_count();
  Json tags = Json::array();
  for (const auto& r : res.prediction.components) tags.push_back(to_string(r.tag));
  s["tags"] = tags;
  s["steady_residual_f_infty"] = verify_steady(res.prediction.f_infty, res.resolved.kernel);
  if (res.series && !res.series->rows.empty()) {
    const auto& first = res.series->rows.front();
    const auto& last = res.series->rows.back();
    s["t_final"] = last.t;
    s["H_initial"] = first.H;
    s["H_final"] = last.H;
    s["H_rel_final"] = last.H_rel;
    s["tv_initial"] = first.tv_to_finfty;
    s["tv_final"] = last.tv_to_finfty;
    s["mass_upper_final"] = last.mass_upper;
    s["mass_lower_final"] = last.mass_lower;
  }
  if (res.conserved) {
    const auto& c = *res.conserved;
    s["conserved"] = {{"mass_total_drift", c.mass_total_drift},
                      {"halves_are_component_unions", c.halves_are_component_unions},
                      {"mass_upper_drift", c.mass_upper_drift},
                      {"mass_lower_drift", c.mass_lower_drift},
                      {"eta_drift", c.eta_drift},
                      {"symmetric_part_drift", c.symmetric_part_drift},
                      {"max_entropy_increase", c.max_entropy_increase}};
  }
  if (res.fit) {
    s["fit"] = {{"quantity", "H - H_inf"},
                {"lambda", res.fit->lambda},
                {"r_squared", res.fit->r_squared},
                {"t_begin", res.fit->t_begin},
                {"t_end", res.fit->t_end},
                {"samples", res.fit->samples}};
  } else if (!res.fit_note.empty()) {
    s["fit"] = {{"quantity", "H - H_inf"}, {"note", res.fit_note}};
  }
  return s;
}

void write_outputs(const RunResult& res, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io_error, "cannot create " + dir.string() + ": " + ec.message());

  const auto& mu = res.prediction.mu;
  const auto& space = mu.space();
  const auto& f0 = res.resolved.initial;
  std::vector<std::string> files;

  {
    auto out = open_out(dir / "prediction.csv");
    out << "index,coordinate,f_initial,mu,f_infty,component,tag\n";
    const auto& g = res.prediction.graph;
    for (std::size_t i = 0; i < space.size(); ++i) {
      const std::size_t c = g.component_of(i);
      out << i << ',' << format_number(space.coordinate(i)) << ',' << format_number(f0.value(i)) << ','
          << format_number(mu.value(i)) << ',' << format_number(res.prediction.f_infty.value(i)) << ',';
      if (c == kNoComponent)
        out << ",\n";
      else
        out << c << ',' << to_string(res.prediction.components.at(c).tag) << '\n';
    }
    files.push_back("prediction.csv");
  }
  {
    auto out = open_out(dir / "components.json");
    out << components_json(res).dump(2) << '\n';
    files.push_back("components.json");
  }
  {
    auto out = open_out(dir / "analysis.json");
    out << analysis_json(res).dump(2) << '\n';
    files.push_back("analysis.json");
  }

  if (res.trajectory && res.series) {
    const auto& traj = *res.trajectory;
    if (res.config.output.snapshots) {
      auto out = open_out(dir / "snapshots.csv");
      out << "t,index,coordinate,value\n";
      for (std::size_t k = 0; k < traj.size(); ++k) {
        const std::string t = format_number(traj.times[k]);
        for (std::size_t i = 0; i < space.size(); ++i)
          out << t << ',' << i << ',' << format_number(space.coordinate(i)) << ','
              << format_number(traj.states[k].value(i)) << '\n';
        out << "\n\n";  // gnuplot index separator
      }
      files.push_back("snapshots.csv");
    }
    {
      auto out = open_out(dir / "diagnostics.csv");
      const bool w1 = !res.series->rows.empty() && res.series->rows.front().w1_to_finfty.has_value();
      out << "t,mass_total,mass_upper,mass_lower,H,D,H_rel,tv_to_finfty";
      if (w1) out << ",w1_to_finfty";
      for (std::size_t p = 0; p < res.bounds.size(); ++p) out << ",H_T_" << pair_label(res.bounds[p]);
      for (std::size_t p = 0; p < res.bounds.size(); ++p) out << ",D_T_" << pair_label(res.bounds[p]);
      out << '\n';
      for (const auto& r : res.series->rows) {
        out << format_number(r.t) << ',' << format_number(r.mass_total) << ',' << format_number(r.mass_upper) << ','
            << format_number(r.mass_lower) << ',' << format_number(r.H) << ',' << format_number(r.D) << ','
            << format_number(r.H_rel) << ',' << format_number(r.tv_to_finfty);
        if (w1) out << ',' << format_number(r.w1_to_finfty.value_or(NAN));
        for (double v : r.H_T) out << ',' << format_number(v);
        for (double v : r.D_T) out << ',' << format_number(v);
        out << '\n';
      }
      files.push_back("diagnostics.csv");
    }
    {
      auto out = open_out(dir / "entropy.gp");
      out << "set datafile separator ','\n"
             "set key autotitle columnhead\n"
             "set logscale y\n"
             "set xlabel 't'\n"
             "set ylabel 'H'\n"
             "set terminal pngcairo size 900,600\n"
             "set output 'entropy.png'\n"
             "plot 'diagnostics.csv' using 1:5 with lines title 'H', \\\n"
             "     'diagnostics.csv' using 1:7 with lines title 'H - H_inf'\n";
      files.push_back("entropy.gp");
    }
    {
      auto out = open_out(dir / "masses.gp");
      out << "set datafile separator ','\n"
             "set xlabel 't'\n"
             "set ylabel 'mass'\n"
             "set yrange [0:1.1]\n"
             "set terminal pngcairo size 900,600\n"
             "set output 'masses.png'\n"
             "plot 'diagnostics.csv' using 1:2 with lines lc rgb 'black' title 'total', \\\n"
             "     'diagnostics.csv' using 1:3 with lines lc rgb 'dark-blue' title 'upper half', \\\n"
             "     'diagnostics.csv' using 1:4 with lines lc rgb 'red' title 'lower half'\n";
      files.push_back("masses.gp");
    }
    if (res.config.output.snapshots) {
      const std::size_t last = traj.size() - 1;
      const std::size_t mid = last / 2;
      auto out = open_out(dir / "profiles.gp");
      const char* style = space.kind() == SpaceKind::torus_grid ? "lines" : "impulses";
      out << "set datafile separator ','\n"
             "set xlabel 'x'\n"
             "set ylabel 'f'\n"
             "set terminal pngcairo size 900,600\n"
             "set output 'profiles.png'\n"
          << "plot 'snapshots.csv' index 0 using 3:4 with " << style << " lc rgb 'dark-blue' title 't = "
          << format_number(traj.times.front()) << "', \\\n"
          << "     'snapshots.csv' index " << mid << " using 3:4 with " << style << " dt 2 lc rgb 'red' title 't = "
          << format_number(traj.times[mid]) << "', \\\n"
          << "     'snapshots.csv' index " << last << " using 3:4 with " << style << " lc rgb 'black' title 't = "
          << format_number(traj.times[last]) << "', \\\n"
          << "     'prediction.csv' using 2:5 with " << style
          << " dt 3 lc rgb 'light-blue' title 'f_inf'\n";
      files.push_back("profiles.gp");
    }
  }

  Json manifest;
  manifest["name"] = res.config.name;
  manifest["versions"] = {{"revcoll", kVersion},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION)},
                          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  manifest["config"] = to_json(res.config);
  manifest["summary"] = summary_json(res);
  manifest["files"] = files;
  auto out = open_out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

}  // namespace revcoll
