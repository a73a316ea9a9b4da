#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revcoll/dynamics.hpp"
#include "revcoll/equilibrium.hpp"
#include "revcoll/graph.hpp"
#include "revcoll/kernel.hpp"
#include "revcoll/measure.hpp"

namespace revcoll {

// H[f] = 1/2 int h^2 dmu.
double entropy(const OddCoordinate& h, const DiscreteMeasure& mu);
// 1/4 iint (h - h*)^2 dmu dmu*; equals entropy() for odd h and a probability mu.
double entropy_pair_form(const OddCoordinate& h, const DiscreteMeasure& mu);

// D[f] = iint b (h + h*)^2 dmu dmu*, so dH/dt = -D.
double dissipation(const OddCoordinate& h, const DiscreteMeasure& mu, const CollisionKernel& b);

// H_T[f] = 1/2 int_T (h - eta)^2 dmu + 1/2 int_T* (h + eta)^2 dmu.
// Throws internal-error if 2 min(rho, rho_*) H_T > iint_{T x T*} (h + h*)^2.
double component_entropy(const OddCoordinate& h, const DiscreteMeasure& mu, std::span<const std::size_t> T,
                         std::span<const std::size_t> T_star, double eta);
// 1/2 int_T h^2 + 1/2 int_T* h^2 - 1/2 (rho + rho_*) eta^2.
double component_entropy_expanded(const OddCoordinate& h, const DiscreteMeasure& mu, std::span<const std::size_t> T,
                                  std::span<const std::size_t> T_star, double eta);

// D_T[f] = 2 iint_{T x T*} b (h + h*)^2, so dH_T/dt = -D_T.
double component_dissipation(const OddCoordinate& h, const DiscreteMeasure& mu, const CollisionKernel& b,
                             std::span<const std::size_t> T, std::span<const std::size_t> T_star);

struct DecayFit {
  double lambda;
  double r_squared;
  double t_begin;
  double t_end;
  std::size_t samples;
};

inline constexpr double kEntropyFloor = 1e-14;

// Least squares on log H over the trailing half of the samples with H > 1e-14.
DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> values);

// C(t) = 1 + (M + 5 lambda L) t + 2 t^2 lambda M L.
double stability_coefficient(double t, double lambda, double M, double L);
// e^{lambda L t} C(t) * w1_initial.
double stability_bound(double t, double lambda, double M, double L, double w1_initial);

// Point sets [0, pi) and [-pi, 0) on circles; (0, 1] and [-1, 0) on the interval.
std::vector<std::size_t> upper_half(const StateSpace& space);
std::vector<std::size_t> lower_half(const StateSpace& space);

// A component pair (T, T_*) listed once per unordered pair.
struct ComponentPair {
  std::size_t component;
  std::size_t partner;
  double eta;
};

std::vector<ComponentPair> component_pairs(const EquilibriumPrediction& prediction);

struct DiagnosticsRow {
  double t;
  double mass_total;
  double mass_upper;
  double mass_lower;
  double H;
  double D;
  double H_rel;  // 1/2 int (h - h_inf)^2 dmu
  double tv_to_finfty;
  std::vector<double> H_T;  // per component pair
  std::vector<double> D_T;
  std::optional<double> w1_to_finfty;
};

struct DiagnosticsSeries {
  std::vector<ComponentPair> pairs;
  std::vector<DiagnosticsRow> rows;

  std::vector<double> times() const;
  std::vector<double> column_H() const;
  std::vector<double> column_H_rel() const;
};

struct DiagnosticsOptions {
  bool wasserstein = false;
};

DiagnosticsSeries compute_diagnostics(const Trajectory& traj, const CollisionKernel& b,
                                      const EquilibriumPrediction& prediction, const DiagnosticsOptions& options = {});

struct ConservedReport {
  double mass_total_drift = 0.0;
  bool halves_are_component_unions = false;
  double mass_upper_drift = 0.0;
  double mass_lower_drift = 0.0;
  double eta_drift = 0.0;
  double symmetric_part_drift = 0.0;
  double max_entropy_increase = 0.0;  // max_j H(t_{j+1}) - H(t_j), <= 0 when monotone
};

ConservedReport conserved_report(const Trajectory& traj, const EquilibriumPrediction& prediction);

}  // namespace revcoll
