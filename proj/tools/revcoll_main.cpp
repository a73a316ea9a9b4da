#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "acceptance.hpp"
#include "revcoll/config.hpp"
#include "revcoll/error.hpp"
#include "revcoll/runner.hpp"
#include "revcoll/scenarios.hpp"

using namespace revcoll;

namespace {

struct Overrides {
  std::string method;
  std::optional<double> dt;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> snapshot_every;
};

ExperimentConfig load(const std::string& config_path, const std::string& scenario, const Overrides& ov) {
  if (config_path.empty() == scenario.empty())
    fail(ErrorCode::config_invalid, "<cli>: give exactly one of --config or --scenario");
  ExperimentConfig c = config_path.empty() ? scenario_from_spec(scenario) : load_config(config_path);
  Json j = to_json(c);
  if (!ov.method.empty()) j["integrator"]["method"] = ov.method;
  if (ov.dt) j["integrator"]["dt"] = *ov.dt;
  if (ov.steps) j["integrator"]["steps"] = *ov.steps;
  if (ov.snapshot_every) j["integrator"]["snapshot_every"] = *ov.snapshot_every;
  return parse_config(j, c.base_dir);
}

std::string short_number(double x) {
  if (std::isnan(x)) return "auto";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::config_invalid:
    case ErrorCode::unknown_scenario: return 2;
    case ErrorCode::negativity_abort:
    case ErrorCode::step_size: return 3;
    case ErrorCode::io_error: return 4;
    default: return 5;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversal collision dynamics: prediction, simulation and diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, scenario, out_dir;
  std::uint64_t seed = 20241014;
  Overrides ov;
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--out", out_dir, "output directory (default: the config's output.directory)");
  app.add_option("--seed", seed, "seed for randomized property suites");

  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario, "built-in scenario, e.g. fig1 or three_dirac(alpha=1e-2)");
    sub->add_option("--method", ov.method, "euler, rk4, expm or picard");
    sub->add_option("--dt", ov.dt, "time step");
    sub->add_option("--steps", ov.steps, "number of steps");
    sub->add_option("--snapshot-every", ov.snapshot_every, "steps between snapshots");
  };

  auto* simulate = app.add_subcommand("simulate", "run a config or scenario and write all outputs");
  add_run_options(simulate);
  auto* predict_cmd = app.add_subcommand("predict", "components, eta and f_infty without time stepping");
  add_run_options(predict_cmd);
  auto* analyze = app.add_subcommand("analyze", "run and print the component analysis report");
  add_run_options(analyze);
  auto* scenarios = app.add_subcommand("scenarios", "list the built-in scenarios");
  std::string show;
  scenarios->add_option("--show", show, "print the resolved config of one scenario");
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::vector<int> only;
  verify->add_option("--criterion", only, "restrict to these criteria (1-8)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scenarios->parsed()) {
      if (!show.empty()) {
        std::cout << to_json(scenario_from_spec(show)).dump(2) << '\n';
        return 0;
      }
      for (const auto& s : scenario_library()) {
        std::cout << s.name;
        if (!s.params.empty()) {
          std::cout << '(';
          for (std::size_t i = 0; i < s.params.size(); ++i)
            std::cout << (i ? ", " : "") << s.params[i].name << '=' << short_number(s.params[i].default_value);
          std::cout << ')';
        }
        std::cout << "\n    " << s.description << '\n';
      }
      return 0;
    }
    if (verify->parsed()) {
      const auto results = acceptance::run_all(seed, only);
      return acceptance::report(results, std::cout) ? 0 : 1;
    }

    const ExperimentConfig config = load(config_path, scenario, ov);
    const std::string dir = out_dir.empty() ? config.output.directory : out_dir;
    if (predict_cmd->parsed()) {
      const RunResult res = revcoll::predict(config);
      write_outputs(res, dir);
      std::cout << components_json(res).dump(2) << '\n';
      return 0;
    }
    const RunResult res = execute(config);
    if (simulate->parsed() || !out_dir.empty()) write_outputs(res, dir);
    std::cout << (analyze->parsed() ? analysis_json(res) : summary_json(res)).dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  }
}
