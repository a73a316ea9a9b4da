#include "revcoll/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "revcoll/error.hpp"

namespace revcoll {

const char* to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::isolated: return "isolated";
    case CaseTag::four_disjoint: return "four-disjoint";
    case CaseTag::pair_ii: return "pair-ii";
    case CaseTag::pair_iii: return "pair-iii";
    case CaseTag::pair_iv: return "pair-iv";
    case CaseTag::single_v: return "single-v";
  }
  return "unknown";
}

bool InteractionGraph::collision_partners(std::size_t x, std::size_t y) const {
  const std::size_t px = support_pos_.at(x);
  const std::size_t py = support_pos_.at(y);
  if (px == kNoComponent || py == kNoComponent) return false;
  return (partner_bits_[px * words_ + py / 64] >> (py % 64)) & 1u;
}

bool InteractionGraph::adjacent(std::size_t x, std::size_t y) const {
  const std::size_t px = support_pos_.at(x);
  const std::size_t py = support_pos_.at(y);
  if (px == kNoComponent || py == kNoComponent) return false;
  const std::uint64_t* a = partner_bits_.data() + px * words_;
  const std::uint64_t* b = partner_bits_.data() + py * words_;
  for (std::size_t w = 0; w < words_; ++w)
    if (a[w] & b[w]) return true;
  return false;
}

std::vector<std::vector<std::size_t>> InteractionGraph::orbits() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(components_.size(), false);
  for (std::size_t c = 0; c < components_.size(); ++c) {
    if (seen[c]) continue;
    std::vector<std::size_t> orbit{c};
    seen[c] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      const Component& comp = components_[orbit[k]];
      for (std::size_t next : {comp.partner, comp.reversed}) {
        if (next != kNoComponent && !seen[next]) {
          seen[next] = true;
          orbit.push_back(next);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

InteractionGraph build_graph(const DiscreteMeasure& mu, const CollisionKernel& b) {
  const StateSpace& space = mu.space();
  if (b.size() != space.size()) fail(ErrorCode::dimension_mismatch, "kernel and measure sizes differ");
  const DiscreteMeasure sym = symmetric_part(mu);
  const double scale = std::max(mu.total_mass(), 1e-300);
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (std::abs(sym.mass(i) - mu.mass(i)) > 1e-12 * scale)
      fail(ErrorCode::invalid_argument, "build_graph needs a symmetric measure");

  InteractionGraph g;
  g.support_ = mu.support();
  const std::size_t K = g.support_.size();
  g.words_ = (K + 63) / 64;
  g.support_pos_.assign(space.size(), kNoComponent);
  for (std::size_t p = 0; p < K; ++p) g.support_pos_[g.support_[p]] = p;
  g.partner_bits_.assign(K * g.words_, 0);
  for (std::size_t p = 0; p < K; ++p) {
    const double* row = b.row(g.support_[p]);
    for (std::size_t q = 0; q < K; ++q)
      if (row[g.support_[q]] > 0.0) g.partner_bits_[p * g.words_ + q / 64] |= std::uint64_t{1} << (q % 64);
  }
  auto partner = [&](std::size_t p, std::size_t q) {
    return (g.partner_bits_[p * g.words_ + q / 64] >> (q % 64)) & 1u;
  };

  // BFS alternating through the partner layer: each x* is expanded once, so
  // the traversal is O(K^2) instead of materializing the adjacency relation.
  std::vector<std::size_t> comp_pos(K, kNoComponent);
  std::vector<bool> expanded(K, false);
  std::size_t ncomp = 0;
  for (std::size_t start = 0; start < K; ++start) {
    if (comp_pos[start] != kNoComponent) continue;
    const std::size_t c = ncomp++;
    comp_pos[start] = c;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t xs = 0; xs < K; ++xs) {
        if (!partner(x, xs) || expanded[xs]) continue;
        expanded[xs] = true;
        for (std::size_t y = 0; y < K; ++y) {
          if (comp_pos[y] == kNoComponent && partner(xs, y)) {
            comp_pos[y] = c;
            queue.push_back(y);
          }
        }
      }
    }
  }

  g.components_.resize(ncomp);
  g.component_of_.assign(space.size(), kNoComponent);
  for (std::size_t p = 0; p < K; ++p) {
    g.components_[comp_pos[p]].points.push_back(g.support_[p]);
    g.component_of_[g.support_[p]] = comp_pos[p];
  }

  auto as_component = [&](const std::vector<std::size_t>& pts, const char* what) {
    if (pts.empty()) return kNoComponent;
    const std::size_t id = g.component_of_[pts.front()];
    if (id == kNoComponent || g.components_[id].points != pts)
      fail(ErrorCode::internal_error, std::string(what) + " is not a connected component");
    return id;
  };

  for (Component& comp : g.components_) {
    std::vector<std::size_t> partners;
    std::vector<std::size_t> reversed;
    std::vector<bool> mark(K, false);
    for (std::size_t x : comp.points) {
      const std::size_t px = g.support_pos_[x];
      for (std::size_t q = 0; q < K; ++q)
        if (partner(px, q)) mark[q] = true;
      reversed.push_back(space.reverse(x));
    }
    for (std::size_t q = 0; q < K; ++q)
      if (mark[q]) partners.push_back(g.support_[q]);
    std::sort(reversed.begin(), reversed.end());
    comp.partner = as_component(partners, "partner set");
    comp.reversed = as_component(reversed, "reversed set");
  }
  for (std::size_t c = 0; c < ncomp; ++c) g.components_[c].tag = classify(c, g);
  return g;
}

CaseTag classify(std::size_t id, const InteractionGraph& graph) {
  const Component& t = graph.component(id);
  if (t.partner == kNoComponent) return CaseTag::isolated;
  const std::size_t p = t.partner;
  const std::size_t r = t.reversed;
  const std::size_t pr = graph.component(p).reversed;
  if (id == p && id == r) return CaseTag::single_v;
  if (id == pr && id != p) return CaseTag::pair_ii;
  if (id == p) return CaseTag::pair_iii;
  if (id == r) return CaseTag::pair_iv;
  if (p != r && p != pr && r != pr && id != pr) return CaseTag::four_disjoint;
  fail(ErrorCode::internal_error, "component relations match none of the five cases");
}

int component_count_bound(double alpha) {
  if (!(alpha > 0.0 && alpha < kPi)) fail(ErrorCode::invalid_argument, "alpha must lie in (0, pi)");
  return 2 * static_cast<int>(std::floor(kPi / alpha));
}

bool gap_interval_exists(const DiscreteMeasure& mu, double alpha) {
  const StateSpace& space = mu.space();
  if (!space.is_circle()) fail(ErrorCode::invalid_argument, "gap_interval_exists needs a circle space");
  std::vector<double> angles;
  for (std::size_t i : mu.support()) angles.push_back(space.coordinate(i));
  if (angles.empty()) return true;
  std::sort(angles.begin(), angles.end());
  double widest = angles.front() + 2.0 * kPi - angles.back();
  for (std::size_t k = 1; k < angles.size(); ++k) widest = std::max(widest, angles[k] - angles[k - 1]);
  // same tolerance as the kernel threshold: a gap of exactly alpha counts
  return widest >= alpha - 1e-12;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t sets;
  explicit UnionFind(std::size_t n) : parent(n), sets(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    --sets;
    return true;
  }
};

}  // namespace

double bottleneck_beta(std::span<const std::size_t> T, std::span<const std::size_t> T_star,
                       const CollisionKernel& b) {
  if (T.empty() || T_star.empty()) fail(ErrorCode::invalid_argument, "bottleneck_beta needs nonempty T and T_*");
  struct Edge {
    double w;
    std::size_t i, j;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < T_star.size(); ++j)
      if (const double w = b(T[i], T_star[j]); w > 0.0) edges.push_back({w, i, j});
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& c) { return a.w > c.w; });
  // Kruskal on the descending order: the edge that completes the spanning
  // forest is the max-bottleneck value.
  UnionFind uf(T.size() + T_star.size());
  for (const Edge& e : edges) {
    if (uf.unite(e.i, T.size() + e.j) && uf.sets == 1) return e.w;
  }
  if (uf.sets == 1) return edges.empty() ? 0.0 : edges.front().w;
  fail(ErrorCode::internal_error, "T and T_* are not connected by positive kernel entries");
}

RateBound rate_lower_bound(std::span<const std::size_t> T, std::span<const std::size_t> T_star,
                           const DiscreteMeasure& mu, const CollisionKernel& b) {
  if (T_star.empty()) fail(ErrorCode::invalid_argument, "rate_lower_bound needs a nonempty partner set");
  RateBound out{};
  out.beta = bottleneck_beta(T, T_star, b);
  const std::size_t p = T.size();
  const std::size_t q = T_star.size();
  std::vector<double> rho_l(p), rho_r(q);
  for (std::size_t i = 0; i < p; ++i) out.rho += rho_l[i] = mu.mass(T[i]);
  for (std::size_t j = 0; j < q; ++j) out.rho_star += rho_r[j] = mu.mass(T_star[j]);

  std::vector<std::vector<std::size_t>> left_adj(p), right_adj(q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if (b(T[i], T_star[j]) >= out.beta) {
        left_adj[i].push_back(j);
        right_adj[j].push_back(i);
      }

  // For a path i0 j0 i1 ... ik jk every link contributes 1/(rho_left rho_right);
  // accumulate those along BFS tree edges.
  double C = 0.0;
  std::vector<double> sum_l(p), sum_r(q);
  std::vector<std::size_t> depth_l(p), depth_r(q);
  for (std::size_t i0 = 0; i0 < p; ++i0) {
    std::fill(depth_l.begin(), depth_l.end(), kNoComponent);
    std::fill(depth_r.begin(), depth_r.end(), kNoComponent);
    depth_l[i0] = 0;
    sum_l[i0] = 0.0;
    std::deque<std::pair<bool, std::size_t>> queue{{true, i0}};
    while (!queue.empty()) {
      const auto [is_left, u] = queue.front();
      queue.pop_front();
      if (is_left) {
        for (std::size_t j : left_adj[u]) {
          if (depth_r[j] != kNoComponent) continue;
          depth_r[j] = depth_l[u] + 1;
          sum_r[j] = sum_l[u] + 1.0 / (rho_l[u] * rho_r[j]);
          queue.push_back({false, j});
        }
      } else {
        for (std::size_t i : right_adj[u]) {
          if (depth_l[i] != kNoComponent) continue;
          depth_l[i] = depth_r[u] + 1;
          sum_l[i] = sum_r[u] + 1.0 / (rho_l[i] * rho_r[u]);
          queue.push_back({true, i});
        }
      }
    }
    for (std::size_t j = 0; j < q; ++j) {
      if (depth_r[j] == kNoComponent) fail(ErrorCode::internal_error, "beta-link graph is disconnected");
      const double links = static_cast<double>(depth_r[j]);  // 2k + 1
      C += links / out.beta * rho_l[i0] * rho_r[j] * sum_r[j];
    }
  }
  out.covering_constant = C;
  out.lambda = 4.0 * std::min(out.rho, out.rho_star) / C;
  return out;
}

}  // namespace revcoll
