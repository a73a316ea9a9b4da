#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "revcoll/kernel.hpp"
#include "revcoll/measure.hpp"

namespace revcoll {

// Relation between a component T and the sets T_*, rev T, rev T_*.
enum class CaseTag {
  isolated,       // T_* empty
  four_disjoint,  // (i)   all four disjoint
  pair_ii,        // (ii)  T = rev T_* != T_* = rev T
  pair_iii,       // (iii) T = T_* != rev T = rev T_*
  pair_iv,        // (iv)  T = rev T != T_* = rev T_*
  single_v,       // (v)   all four equal
};

const char* to_string(CaseTag tag) noexcept;

inline constexpr std::size_t kNoComponent = std::numeric_limits<std::size_t>::max();

struct Component {
  std::vector<std::size_t> points;  // ascending point indices
  std::size_t partner = kNoComponent;  // component equal to T_*, if nonempty
  std::size_t reversed = kNoComponent;
  CaseTag tag = CaseTag::isolated;
};

class InteractionGraph {
 public:
  std::span<const std::size_t> support() const noexcept { return support_; }
  std::span<const Component> components() const noexcept { return components_; }
  const Component& component(std::size_t id) const { return components_.at(id); }
  std::size_t component_count() const noexcept { return components_.size(); }

  // Component id of a point, kNoComponent off the support.
  std::size_t component_of(std::size_t point) const { return component_of_.at(point); }

  // x <-> y: a common collision partner in the support.
  bool adjacent(std::size_t x, std::size_t y) const;
  bool collision_partners(std::size_t x, std::size_t y) const;

  // Orbits of components under T -> T_* and T -> rev T, each listed once.
  std::vector<std::vector<std::size_t>> orbits() const;

  friend InteractionGraph build_graph(const DiscreteMeasure& mu, const CollisionKernel& b);

 private:
  std::size_t words_ = 0;
  std::vector<std::size_t> support_;
  std::vector<std::size_t> component_of_;
  std::vector<Component> components_;
  // partner bitsets over support positions, one row per support position
  std::vector<std::uint64_t> partner_bits_;
  std::vector<std::size_t> support_pos_;
};

// Requires a symmetric mu (within 1e-12 of its symmetric part).
InteractionGraph build_graph(const DiscreteMeasure& mu, const CollisionKernel& b);

CaseTag classify(std::size_t component, const InteractionGraph& graph);

// 2 floor(pi / alpha).
int component_count_bound(double alpha);

// True iff some open arc of length alpha avoids supp(mu).
bool gap_interval_exists(const DiscreteMeasure& mu, double alpha);

// Largest beta for which {(x, x*) in T x T_* : b >= beta} is a connected
// bipartite graph on T and T_* (taken as separate node copies).
double bottleneck_beta(std::span<const std::size_t> T, std::span<const std::size_t> T_star,
                       const CollisionKernel& b);

struct RateBound {
  double beta;
  double covering_constant;  // C in  iint (h+h*)^2 <= C iint b (h+h*)^2
  double rho;
  double rho_star;
  double lambda;  // dH_T/dt <= -lambda H_T
};

// Explicit decay-rate lower bound from the singleton beta-connected covering
// of T u T_*. dH_T/dt = -2 iint_{T x T_*} b (h+h*)^2, and
// 2 min(rho, rho_*) H_T <= iint (h+h*)^2 <= C iint b (h+h*)^2, hence
// lambda = 4 min(rho, rho_*) / C. C sums the path constants
// (2k+1)/beta * sum of mass ratios over all pairs (i, j), with shortest
// beta-link paths found by BFS (ties to the smallest index).
RateBound rate_lower_bound(std::span<const std::size_t> T, std::span<const std::size_t> T_star,
                           const DiscreteMeasure& mu, const CollisionKernel& b);

}  // namespace revcoll
