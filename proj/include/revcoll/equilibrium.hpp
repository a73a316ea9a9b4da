#pragma once

#include <cstddef>
#include <vector>

#include "revcoll/graph.hpp"
#include "revcoll/kernel.hpp"
#include "revcoll/measure.hpp"

namespace revcoll {

struct ComponentRecord {
  std::size_t component;
  CaseTag tag;
  double eta;  // equilibrium is (1 + eta) mu on this component
  double rho;       // mu(T)
  double rho_star;  // mu(T_*), 0 when isolated
};

struct EquilibriumPrediction {
  DiscreteMeasure mu;
  InteractionGraph graph;
  DiscreteMeasure f_infty;
  std::vector<ComponentRecord> components;  // indexed by component id
};

// Conserved offset of component T:
//   f_I(T u rev T_*) / mu(T u rev T_*) - 1
// cross-checked against (rho <h>_T - rho_* <h>_T*) / (rho + rho_*) to 1e-12.
double eta(std::size_t component, const InteractionGraph& graph, const DiscreteMeasure& f_initial,
           const DiscreteMeasure& mu);

// The average form only, evaluated for an arbitrary odd h (used to monitor
// conservation along trajectories).
double eta_from_h(std::size_t component, const InteractionGraph& graph, const OddCoordinate& h,
                  const DiscreteMeasure& mu);

EquilibriumPrediction predict_equilibrium(const DiscreteMeasure& f_initial, const CollisionKernel& b);

// max over points of |collision operator applied to f|.
double verify_steady(const DiscreteMeasure& f, const CollisionKernel& b);

}  // namespace revcoll
