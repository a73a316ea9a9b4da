#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "revcoll/config.hpp"
#include "revcoll/diagnostics.hpp"
#include "revcoll/dynamics.hpp"
#include "revcoll/equilibrium.hpp"

namespace revcoll {

inline constexpr const char* kVersion = "0.1.0";

struct PairBound {
  std::size_t component;
  std::size_t partner;
  std::optional<RateBound> bound;  // absent when the covering search fails
};

struct RunResult {
  ExperimentConfig config;
  ResolvedExperiment resolved;
  EquilibriumPrediction prediction;
  std::optional<Trajectory> trajectory;
  std::optional<DiagnosticsSeries> series;
  std::optional<ConservedReport> conserved;
  std::optional<DecayFit> fit;  // on H_rel = H - H_inf
  std::string fit_note;
  std::vector<PairBound> bounds;
};

// Prediction only (no time stepping).
RunResult predict(const ExperimentConfig& config);
// Prediction, simulation and diagnostics.
RunResult execute(const ExperimentConfig& config);

// Snapshot times and trajectory for the configured integrator.
Trajectory integrate(const ExperimentConfig& config, const ResolvedExperiment& resolved);

Json summary_json(const RunResult& result);
Json components_json(const RunResult& result);
// Per-component case, mass, eta and rate bound, plus count bound and gap test.
Json analysis_json(const RunResult& result);

// Writes manifest.json, prediction.csv, components.json and, after
// execute(), snapshots.csv, diagnostics.csv and gnuplot scripts.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

// Decimal rendering used in every CSV (round-trip exact).
std::string format_number(double x);

}  // namespace revcoll
