#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revcoll/kernel.hpp"
#include "revcoll/measure.hpp"
#include "revcoll/space.hpp"

namespace revcoll {

using Json = nlohmann::ordered_json;

struct SpaceConfig {
  SpaceKind kind = SpaceKind::torus_grid;
  std::size_t n = 0;            // torus_grid
  std::vector<double> points;   // atomic_circle "angles" or interval "points"
};

struct KernelConfig {
  KernelKind kind = KernelKind::indicator;
  double alpha = kPi / 2;
  double ramp = 0.0;
  std::vector<std::vector<double>> table;  // custom, inline
  std::string table_file;                  // custom, CSV without header
};

// Either point values in space order (grid densities, or atom masses with
// missing trailing entries for appended antipodes set to 0; interval values
// follow the listed points), or (coordinate, mass) atoms matched to points.
// A values_file holds one value per line, or "coordinate,mass" lines.
struct InitialConfig {
  std::string kind;  // "grid_density", "atoms" or empty
  std::vector<double> values;
  std::vector<std::pair<double, double>> atoms;
  std::string values_file;
};

enum class Method { euler, rk4, expm, picard };

const char* to_string(Method m) noexcept;

struct IntegratorConfig {
  Method method = Method::euler;
  double dt = 0.01;
  std::size_t steps = 100;
  std::size_t snapshot_every = 1;
};

struct DiagnosticsConfig {
  bool wasserstein = false;
  bool fit = true;
};

struct OutputConfig {
  std::string directory = "out";
  bool snapshots = true;
};

struct ExperimentConfig {
  std::string name = "custom";
  std::string description;
  SpaceConfig space;
  KernelConfig kernel;
  InitialConfig initial;
  IntegratorConfig integrator;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
  // directory that relative file references are resolved against
  std::filesystem::path base_dir = ".";
};

// Strict parse: unknown keys, wrong types and inconsistent blocks raise
// config-invalid naming the offending field path (e.g. "kernel.alpha").
ExperimentConfig parse_config(const Json& j, const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

// Resolved config with inline data (file references expanded).
Json to_json(const ExperimentConfig& config);

// Builds and validates every block; throws config-invalid on failure.
struct ResolvedExperiment {
  std::shared_ptr<const StateSpace> space;
  CollisionKernel kernel;
  DiscreteMeasure initial;
};

ResolvedExperiment resolve(const ExperimentConfig& config);

// Comma-separated numbers, one row per line; '#' lines and blank lines skipped.
std::vector<std::vector<double>> read_csv_table(const std::filesystem::path& path,
                                                const std::string& field = "kernel.table_file");

}  // namespace revcoll
