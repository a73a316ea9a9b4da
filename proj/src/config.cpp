#include "revcoll/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "revcoll/error.hpp"

namespace revcoll {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(ErrorCode::config_invalid, path + ": " + what);
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid(path.empty() ? "<root>" : path, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) invalid(path.empty() ? key : path + "." + key, "unknown key");
  }
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(path, "expected a finite number");
  return v;
}

std::size_t get_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) invalid(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) invalid(path, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

SpaceConfig parse_space(const Json& j) {
  check_keys(j, "space", {"kind", "n", "angles", "points"});
  SpaceConfig s;
  if (!j.contains("kind")) invalid("space.kind", "missing");
  const std::string kind = get_string(j["kind"], "space.kind");
  if (kind == "torus_grid") {
    s.kind = SpaceKind::torus_grid;
    if (!j.contains("n")) invalid("space.n", "missing");
    if (j.contains("points") || j.contains("angles")) invalid("space", "points are not allowed for torus_grid");
    s.n = get_count(j["n"], "space.n");
    if (s.n < 2) invalid("space.n", "must be at least 2");
  } else if (kind == "atomic_circle" || kind == "reflected_interval") {
    s.kind = kind == "atomic_circle" ? SpaceKind::atomic_circle : SpaceKind::reflected_interval;
    const char* key = kind == "atomic_circle" ? "angles" : "points";
    const char* other = kind == "atomic_circle" ? "points" : "angles";
    if (j.contains("n")) invalid("space.n", "only allowed for torus_grid");
    if (j.contains(other)) invalid(join("space", other), "not allowed for " + kind);
    if (!j.contains(key)) invalid(join("space", key), "missing");
    s.points = get_numbers(j[key], join("space", key));
    if (s.points.empty()) invalid(join("space", key), "must not be empty");
  } else {
    invalid("space.kind", "unknown space kind '" + kind + "'");
  }
  return s;
}

KernelConfig parse_kernel(const Json& j) {
  check_keys(j, "kernel", {"kind", "alpha", "ramp", "table", "table_file"});
  KernelConfig k;
  if (!j.contains("kind")) invalid("kernel.kind", "missing");
  const std::string kind = get_string(j["kind"], "kernel.kind");
  auto forbid = [&](const char* key) {
    if (j.contains(key)) invalid(join("kernel", key), "not allowed for kernel kind '" + kind + "'");
  };
  if (kind == "indicator" || kind == "smooth") {
    k.kind = kind == "indicator" ? KernelKind::indicator : KernelKind::smooth;
    if (!j.contains("alpha")) invalid("kernel.alpha", "missing");
    k.alpha = get_number(j["alpha"], "kernel.alpha");
    if (!(k.alpha > 0.0 && k.alpha < kPi)) invalid("kernel.alpha", "must lie in (0, pi)");
    if (k.kind == KernelKind::smooth) {
      if (!j.contains("ramp")) invalid("kernel.ramp", "missing");
      k.ramp = get_number(j["ramp"], "kernel.ramp");
      if (!(k.ramp > 0.0)) invalid("kernel.ramp", "must be positive");
    } else {
      forbid("ramp");
    }
    forbid("table");
    forbid("table_file");
  } else if (kind == "gap") {
    k.kind = KernelKind::gap;
    forbid("alpha");
    forbid("ramp");
    forbid("table");
    forbid("table_file");
  } else if (kind == "custom") {
    k.kind = KernelKind::custom;
    forbid("alpha");
    forbid("ramp");
    if (j.contains("table") == j.contains("table_file"))
      invalid("kernel.table", "custom kernels need exactly one of table or table_file");
    if (j.contains("table")) {
      const Json& t = j["table"];
      if (!t.is_array()) invalid("kernel.table", "expected an array of rows");
      for (std::size_t i = 0; i < t.size(); ++i)
        k.table.push_back(get_numbers(t[i], "kernel.table[" + std::to_string(i) + "]"));
    } else {
      k.table_file = get_string(j["table_file"], "kernel.table_file");
    }
  } else {
    invalid("kernel.kind", "unknown kernel kind '" + kind + "'");
  }
  return k;
}

InitialConfig parse_initial(const Json& j) {
  check_keys(j, "initial", {"kind", "values", "atoms", "values_file"});
  InitialConfig init;
  if (j.contains("kind")) {
    init.kind = get_string(j["kind"], "initial.kind");
    if (init.kind != "grid_density" && init.kind != "atoms")
      invalid("initial.kind", "unknown kind '" + init.kind + "'");
  }
  const int given = int(j.contains("values")) + int(j.contains("atoms")) + int(j.contains("values_file"));
  if (given != 1) invalid("initial", "exactly one of values, atoms or values_file is required");
  if (j.contains("values")) {
    init.values = get_numbers(j["values"], "initial.values");
  } else if (j.contains("atoms")) {
    const Json& a = j["atoms"];
    if (!a.is_array()) invalid("initial.atoms", "expected an array of [coordinate, mass] pairs");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string path = "initial.atoms[" + std::to_string(i) + "]";
      const auto pair = get_numbers(a[i], path);
      if (pair.size() != 2) invalid(path, "expected [coordinate, mass]");
      init.atoms.push_back({pair[0], pair[1]});
    }
  } else {
    init.values_file = get_string(j["values_file"], "initial.values_file");
  }
  if (init.kind == "grid_density" && !init.atoms.empty()) invalid("initial.atoms", "not allowed for grid_density");
  if (init.kind == "atoms" && !init.values.empty()) invalid("initial.values", "not allowed for kind atoms");
  return init;
}

IntegratorConfig parse_integrator(const Json& j) {
  check_keys(j, "integrator", {"method", "dt", "steps", "snapshot_every"});
  IntegratorConfig it;
  if (j.contains("method")) {
    const std::string m = get_string(j["method"], "integrator.method");
    if (m == "euler") it.method = Method::euler;
    else if (m == "rk4") it.method = Method::rk4;
    else if (m == "expm") it.method = Method::expm;
    else if (m == "picard") it.method = Method::picard;
    else invalid("integrator.method", "unknown method '" + m + "'");
  }
  if (j.contains("dt")) it.dt = get_number(j["dt"], "integrator.dt");
  if (j.contains("steps")) it.steps = get_count(j["steps"], "integrator.steps");
  if (j.contains("snapshot_every")) it.snapshot_every = get_count(j["snapshot_every"], "integrator.snapshot_every");
  if (!(it.dt > 0.0)) invalid("integrator.dt", "must be positive");
  if (it.steps == 0) invalid("integrator.steps", "must be positive");
  if (it.snapshot_every == 0) invalid("integrator.snapshot_every", "must be positive");
  return it;
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::euler: return "euler";
    case Method::rk4: return "rk4";
    case Method::expm: return "expm";
    case Method::picard: return "picard";
  }
  return "unknown";
}

ExperimentConfig parse_config(const Json& j, const std::filesystem::path& base_dir) {
  check_keys(j, "", {"name", "description", "space", "kernel", "initial", "integrator", "diagnostics", "output"});
  ExperimentConfig c;
  c.base_dir = base_dir;
  if (j.contains("name")) c.name = get_string(j["name"], "name");
  if (j.contains("description")) c.description = get_string(j["description"], "description");
  for (const char* key : {"space", "kernel", "initial"})
    if (!j.contains(key)) invalid(key, "missing block");
  c.space = parse_space(j["space"]);
  c.kernel = parse_kernel(j["kernel"]);
  c.initial = parse_initial(j["initial"]);
  if (j.contains("integrator")) c.integrator = parse_integrator(j["integrator"]);
  if (j.contains("diagnostics")) {
    const Json& d = j["diagnostics"];
    check_keys(d, "diagnostics", {"wasserstein", "fit"});
    if (d.contains("wasserstein")) c.diagnostics.wasserstein = get_bool(d["wasserstein"], "diagnostics.wasserstein");
    if (d.contains("fit")) c.diagnostics.fit = get_bool(d["fit"], "diagnostics.fit");
  }
  if (j.contains("output")) {
    const Json& o = j["output"];
    check_keys(o, "output", {"directory", "snapshots"});
    if (o.contains("directory")) c.output.directory = get_string(o["directory"], "output.directory");
    if (o.contains("snapshots")) c.output.snapshots = get_bool(o["snapshots"], "output.snapshots");
  }
  if (c.kernel.kind == KernelKind::gap && c.space.kind != SpaceKind::reflected_interval)
    invalid("kernel.kind", "gap kernels need a reflected_interval space");
  if ((c.kernel.kind == KernelKind::indicator || c.kernel.kind == KernelKind::smooth) &&
      c.space.kind == SpaceKind::reflected_interval)
    invalid("kernel.kind", "indicator and smooth kernels need a circle space");
  if (!c.kernel.table_file.empty() && !std::filesystem::exists(c.base_dir / c.kernel.table_file))
    invalid("kernel.table_file", "file not found: " + (c.base_dir / c.kernel.table_file).string());
  if (!c.initial.values_file.empty() && !std::filesystem::exists(c.base_dir / c.initial.values_file))
    invalid("initial.values_file", "file not found: " + (c.base_dir / c.initial.values_file).string());
  // fail early on inconsistent blocks
  (void)resolve(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::config_invalid, "<root>: " + std::string(e.what()));
  }
  return parse_config(j, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

std::vector<std::vector<double>> read_csv_table(const std::filesystem::path& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || cell.find_first_not_of(" \t\r", used) != std::string::npos)
        fail(ErrorCode::config_invalid, field + ": bad number '" + cell + "' on line " + std::to_string(lineno));
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ResolvedExperiment resolve(const ExperimentConfig& c) {
  std::shared_ptr<const StateSpace> space;
  try {
    switch (c.space.kind) {
      case SpaceKind::torus_grid: space = std::make_shared<StateSpace>(torus_grid(c.space.n)); break;
      case SpaceKind::atomic_circle: space = std::make_shared<StateSpace>(atomic_circle(c.space.points)); break;
      case SpaceKind::reflected_interval:
        space = std::make_shared<StateSpace>(reflected_interval(c.space.points));
        break;
    }
  } catch (const Error& e) {
    invalid("space", e.what());
  }

  std::vector<double> values = c.initial.values;
  std::vector<std::pair<double, double>> atoms = c.initial.atoms;
  if (!c.initial.values_file.empty()) {
    for (const auto& row : read_csv_table(c.base_dir / c.initial.values_file, "initial.values_file")) {
      if (row.size() == 1)
        values.push_back(row[0]);
      else if (row.size() == 2)
        atoms.push_back({row[0], row[1]});
      else
        invalid("initial.values_file", "rows must hold one value or coordinate,mass");
    }
    if (!values.empty() && !atoms.empty()) invalid("initial.values_file", "mixes value rows and atom rows");
  }
  if (c.space.kind == SpaceKind::torus_grid && !atoms.empty())
    invalid("initial.atoms", "torus_grid needs grid densities");
  if (c.initial.kind == "grid_density" && c.space.kind != SpaceKind::torus_grid)
    invalid("initial.kind", "grid_density needs a torus_grid space");
  if (values.size() > space->size())
    invalid("initial.values", std::to_string(values.size()) + " values for " + std::to_string(space->size()) +
                                  " points");
  if (c.space.kind == SpaceKind::torus_grid && values.size() != space->size())
    invalid("initial.values", "torus_grid needs one density per grid point (" + std::to_string(space->size()) + ")");
  std::vector<double> ordered(space->size(), 0.0);
  if (!atoms.empty()) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const auto idx = space->find(atoms[i].first);
      if (!idx) invalid("initial.atoms[" + std::to_string(i) + "]", "coordinate is not a point of the space");
      ordered[*idx] += atoms[i].second;
    }
  } else if (c.space.kind == SpaceKind::reflected_interval) {
    // interval points are re-sorted by the space, so map input order to space order
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i >= c.space.points.size()) invalid("initial.values", "more values than listed points");
      ordered[*space->find(c.space.points[i])] += values[i];
    }
  } else {
    std::copy(values.begin(), values.end(), ordered.begin());
  }

  std::optional<DiscreteMeasure> f;
  try {
    f = c.space.kind == SpaceKind::torus_grid ? DiscreteMeasure::grid_density(space, ordered)
                                              : DiscreteMeasure(space, ordered);
  } catch (const Error& e) {
    invalid("initial", e.what());
  }
  if (std::abs(f->total_mass() - 1.0) > 1e-10)
    invalid("initial.values", "total mass must be 1, got " + std::to_string(f->total_mass()));
  try {
    std::optional<CollisionKernel> b;
    switch (c.kernel.kind) {
      case KernelKind::indicator: b = indicator_kernel(*space, c.kernel.alpha); break;
      case KernelKind::smooth: b = smooth_kernel(*space, c.kernel.alpha, c.kernel.ramp); break;
      case KernelKind::gap: b = gap_kernel(*space); break;
      case KernelKind::custom:
        b = custom_kernel(*space, c.kernel.table_file.empty() ? c.kernel.table
                                                              : read_csv_table(c.base_dir / c.kernel.table_file));
        break;
    }
    return {space, std::move(*b), std::move(*f)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config_invalid || e.code() == ErrorCode::io_error) throw;
    invalid(c.kernel.kind == KernelKind::custom ? "kernel.table" : "kernel", e.what());
  }
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["name"] = c.name;
  if (!c.description.empty()) j["description"] = c.description;
  Json s;
  s["kind"] = to_string(c.space.kind);
  if (c.space.kind == SpaceKind::torus_grid)
    s["n"] = c.space.n;
  else
    s[c.space.kind == SpaceKind::atomic_circle ? "angles" : "points"] = c.space.points;
  j["space"] = s;

  Json k;
  k["kind"] = to_string(c.kernel.kind);
  if (c.kernel.kind == KernelKind::indicator || c.kernel.kind == KernelKind::smooth) k["alpha"] = c.kernel.alpha;
  if (c.kernel.kind == KernelKind::smooth) k["ramp"] = c.kernel.ramp;
  if (c.kernel.kind == KernelKind::custom)
    k["table"] = c.kernel.table_file.empty() ? c.kernel.table : read_csv_table(c.base_dir / c.kernel.table_file);
  j["kernel"] = k;

  Json init;
  if (!c.initial.kind.empty()) init["kind"] = c.initial.kind;
  std::vector<double> values = c.initial.values;
  std::vector<std::pair<double, double>> atoms = c.initial.atoms;
  if (!c.initial.values_file.empty())
    for (const auto& row : read_csv_table(c.base_dir / c.initial.values_file, "initial.values_file")) {
      if (row.size() == 1) values.push_back(row[0]);
      if (row.size() == 2) atoms.push_back({row[0], row[1]});
    }
  if (!atoms.empty()) {
    Json a = Json::array();
    for (const auto& [x, m] : atoms) a.push_back({x, m});
    init["atoms"] = a;
  } else {
    init["values"] = values;
  }
  j["initial"] = init;
  j["integrator"] = {{"method", to_string(c.integrator.method)},
                     {"dt", c.integrator.dt},
                     {"steps", c.integrator.steps},
                     {"snapshot_every", c.integrator.snapshot_every}};
  j["diagnostics"] = {{"wasserstein", c.diagnostics.wasserstein}, {"fit", c.diagnostics.fit}};
  j["output"] = {{"directory", c.output.directory}, {"snapshots", c.output.snapshots}};
  return j;
}

}  // namespace revcoll
