#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <queue>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "tadpole/errors.hpp"
#include "tadpole/graph.hpp"
#include "tadpole/rational.hpp"

namespace tadpole {

// Closed walks from the start, one per agent; agents without a walk stay home.
struct OfflinePlan {
  std::vector<std::vector<NodeId>> walks;
  std::vector<Rational> lengths;
  Rational makespan;
};

inline Rational walk_length(const WeightedGraph& g, const std::vector<NodeId>& walk) {
  Rational len = 0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    auto e = g.edge_between(walk[i - 1], walk[i]);
    if (!e) throw InvalidPlan("walk steps between non-adjacent nodes " + g.label(walk[i - 1]) + " and " + g.label(walk[i]));
    len += g.edge(*e).weight;
  }
  return len;
}

inline OfflinePlan make_plan(const WeightedGraph& g, std::vector<std::vector<NodeId>> walks) {
  OfflinePlan plan;
  plan.walks = std::move(walks);
  plan.makespan = 0;
  for (const auto& w : plan.walks) {
    plan.lengths.push_back(walk_length(g, w));
    plan.makespan = std::max(plan.makespan, plan.lengths.back());
  }
  return plan;
}

// Throws InvalidPlan unless the plan is a set of at most k closed walks from the start covering every node.
inline void validate_plan(const WeightedGraph& g, const OfflinePlan& plan, std::size_t agents) {
  if (plan.walks.size() > agents) throw InvalidPlan("plan uses more walks than agents");
  if (plan.walks.size() != plan.lengths.size()) throw InvalidPlan("plan lengths do not match its walks");
  std::vector<bool> covered(g.node_count(), false);
  covered[g.start()] = true;
  Rational worst = 0;
  for (std::size_t i = 0; i < plan.walks.size(); ++i) {
    const auto& w = plan.walks[i];
    if (w.empty() || w.front() != g.start() || w.back() != g.start()) throw InvalidPlan("walk is not closed at the start");
    for (NodeId v : w) covered.at(v) = true;
    if (walk_length(g, w) != plan.lengths[i]) throw InvalidPlan("walk length mismatch");
    worst = std::max(worst, plan.lengths[i]);
  }
  if (worst != plan.makespan) throw InvalidPlan("makespan is not the longest walk");
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!covered[v]) throw InvalidPlan("plan never visits " + g.label(v));
}

inline std::vector<std::vector<std::string>> plan_labels(const WeightedGraph& g, const OfflinePlan& plan) {
  std::vector<std::vector<std::string>> out;
  for (const auto& w : plan.walks) {
    out.emplace_back();
    for (NodeId v : w) out.back().push_back(g.label(v));
  }
  return out;
}

namespace detail {

inline std::vector<std::optional<NodeId>> shortest_path_parents(const WeightedGraph& g, const std::vector<Rational>& dist) {
  std::vector<std::optional<NodeId>> parent(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == g.start()) continue;
    for (const Link& l : g.links(v))
      if (dist[l.to] + g.edge(l.edge).weight == dist[v] && (!parent[v] || l.to < *parent[v])) parent[v] = l.to;
  }
  return parent;
}

// s, ..., v along the tree
inline std::vector<NodeId> tree_path(const WeightedGraph& g, const std::vector<std::optional<NodeId>>& parent, NodeId v) {
  std::vector<NodeId> down;
  for (NodeId x = v; x != g.start(); x = *parent[x]) down.push_back(x);
  down.push_back(g.start());
  std::reverse(down.begin(), down.end());
  return down;
}

inline std::vector<NodeId> there_and_back(std::vector<NodeId> path) {
  for (std::size_t i = path.size() - 1; i-- > 0;) path.push_back(path[i]);
  return path;
}

}  // namespace detail

// One walk per leaf of a shortest-path tree from the start; makespan 2 max_v d(s, v).
inline OfflinePlan shortest_path_tree_plan(const WeightedGraph& g) {
  const auto parent = detail::shortest_path_parents(g, distances_from(g, g.start()));
  std::vector<bool> has_child(g.node_count(), false);
  for (const auto& p : parent)
    if (p) has_child[*p] = true;
  std::vector<std::vector<NodeId>> walks;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (v != g.start() && !has_child[v]) walks.push_back(detail::there_and_back(detail::tree_path(g, parent, v)));
  return make_plan(g, std::move(walks));
}

// Covering walks packed onto at most `agents` closed walks. The pieces are either the walks to every
// shortest-path-tree leaf, or one lap of the cycle together with the leaf walks that leave the cycle.
// An upper bound; it is optimal whenever its makespan reaches 2 max_v d(s, v).
inline OfflinePlan packed_plan(const WeightedGraph& g, std::size_t agents) {
  if (agents == 0) throw NoAgents("at least one agent is required");
  const auto tree = shortest_path_tree_plan(g);
  const auto parent = detail::shortest_path_parents(g, distances_from(g, g.start()));

  std::vector<std::vector<NodeId>> with_lap;
  const NodeId s = g.start();
  NodeId entry = g.on_cycle(s) ? s : g.tails()[g.tail_position(s)->first].attach;
  auto lap = detail::tree_path(g, parent, entry);
  const auto& cyc = g.cycle();
  const std::size_t at = *g.cycle_position(entry);
  for (std::size_t j = 1; j <= cyc.size(); ++j) lap.push_back(cyc[(at + j) % cyc.size()]);
  auto back = detail::tree_path(g, parent, entry);
  lap.insert(lap.end(), back.rbegin() + 1, back.rend());
  with_lap.push_back(std::move(lap));
  for (const auto& w : tree.walks) {
    NodeId leaf = w[w.size() / 2];
    if (!g.on_cycle(leaf)) with_lap.push_back(w);
  }

  auto pack = [&](const std::vector<std::vector<NodeId>>& pieces) {
    std::vector<Rational> len;
    for (const auto& p : pieces) len.push_back(walk_length(g, p));
    std::vector<std::size_t> order(pieces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return len[a] > len[b]; });
    const std::size_t bins = std::min(agents, pieces.size());
    std::vector<Rational> load(bins, 0);
    std::vector<std::size_t> where(pieces.size()), best_where;
    std::optional<Rational> best;
    auto place = [&](auto&& self, std::size_t i) -> void {
      Rational worst = *std::max_element(load.begin(), load.end());
      if (best && worst >= *best) return;
      if (i == order.size()) {
        best = worst;
        best_where = where;
        return;
      }
      for (std::size_t b = 0; b < bins; ++b) {
        load[b] += len[order[i]];
        where[order[i]] = b;
        self(self, i + 1);
        load[b] -= len[order[i]];
        if (load[b] == 0) break;  // empty bins are interchangeable
      }
    };
    place(place, 0);
    std::vector<std::vector<NodeId>> walks(bins, std::vector<NodeId>{s});
    for (std::size_t i = 0; i < pieces.size(); ++i)
      walks[best_where[i]].insert(walks[best_where[i]].end(), pieces[i].begin() + 1, pieces[i].end());
    walks.erase(std::remove_if(walks.begin(), walks.end(), [](const auto& w) { return w.size() == 1; }), walks.end());
    return make_plan(g, std::move(walks));
  };

  auto a = pack(tree.walks);
  auto b = pack(with_lap);
  return b.makespan < a.makespan ? b : a;
}

// Two agents on a cycle: out to v_l and v_s (or both to v_mid) and back.
inline Rational opt_cycle(const WeightedGraph& g) {
  if (g.shape() != Shape::Cycle) throw WrongGraphClass("opt_cycle needs a cycle");
  return 2 * cycle_geometry(g).d_long;
}

inline OfflinePlan cycle_plan(const WeightedGraph& g) {
  if (g.shape() != Shape::Cycle) throw WrongGraphClass("cycle_plan needs a cycle");
  return shortest_path_tree_plan(g);
}

// Lower bound for any team size; attained once every shortest-path-tree leaf gets its own agent.
inline Rational opt_far(const WeightedGraph& g) { return 2 * max_distance_from_start(g); }

inline Rational opt_tadpole_k3plus(const WeightedGraph& g) {
  if (g.shape() != Shape::Tadpole) throw WrongGraphClass("opt_tadpole_k3plus needs a tadpole");
  return opt_far(g);
}

namespace detail {

inline Rational heaviest_cycle_edge(const WeightedGraph& g) {
  Rational heaviest = 0;
  for (auto e : g.cycle_edges()) heaviest = std::max(heaviest, g.edge(e).weight);
  return heaviest;
}

}  // namespace detail

inline Rational opt_single_agent_ntadpole(const WeightedGraph& g) {
  const Rational lc = g.cycle_length();
  const Rational tails = g.tails_length();
  const Rational lmax = detail::heaviest_cycle_edge(g);
  if (lmax > lc / 2) return 2 * (lc - lmax) + 2 * tails;
  return lc + 2 * tails;
}

inline Rational two_agent_lower_bound(const WeightedGraph& g) {
  const Rational lmax = detail::heaviest_cycle_edge(g);
  return (g.cycle_length() - lmax) / 2 + g.tails_length() / 2;
}

// A plan whose makespan equals the universal lower bound 2 max d is optimal for its walk count.
inline std::optional<Rational> certify_plan(const WeightedGraph& g, const OfflinePlan& plan, std::size_t agents) {
  validate_plan(g, plan, agents);
  if (plan.makespan == opt_far(g)) return plan.makespan;
  return std::nullopt;
}

inline std::size_t brute_cap() {
  if (const char* env = std::getenv("TADPOLE_BRUTE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 24) return static_cast<std::size_t>(v);
  }
  return 12;
}

namespace detail {

// Exact min-max covering walks on the metric closure. T is int64 (weights pre-scaled) or Rational.
template <class T>
class CoverSolver {
 public:
  CoverSolver(const WeightedGraph& g, const std::vector<T>& weights) : n_(g.node_count()), s_(g.start()) {
    T total = 0;
    for (const auto& w : weights) total += w;
    inf_ = total * 4 + 1;
    dist_.assign(n_ * n_, inf_);
    via_.assign(n_ * n_, 0);
    for (NodeId v = 0; v < n_; ++v) {
      dist_[v * n_ + v] = 0;
      via_[v * n_ + v] = v;
    }
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const Edge& ed = g.edge(e);
      dist_[ed.a * n_ + ed.b] = dist_[ed.b * n_ + ed.a] = weights[e];
      via_[ed.a * n_ + ed.b] = ed.b;
      via_[ed.b * n_ + ed.a] = ed.a;
    }
    for (std::size_t m = 0; m < n_; ++m)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          if (dist_[i * n_ + m] + dist_[m * n_ + j] < dist_[i * n_ + j]) {
            dist_[i * n_ + j] = dist_[i * n_ + m] + dist_[m * n_ + j];
            via_[i * n_ + j] = via_[i * n_ + m];
          }
    for (NodeId v = 0; v < n_; ++v)
      if (v != s_) others_.push_back(v);
    held_karp();
  }

  T makespan(std::size_t agents) {
    const std::uint32_t full = (1u << others_.size()) - 1;
    if (agents <= 1) return tour_[full];
    return best_for(std::min(agents, others_.size()), full);
  }

  std::vector<std::vector<NodeId>> walks(std::size_t agents) {
    const std::uint32_t full = (1u << others_.size()) - 1;
    std::vector<std::uint32_t> blocks;
    std::uint32_t mask = full;
    for (std::size_t j = std::min(std::max<std::size_t>(agents, 1), others_.size()); j >= 1 && mask; --j) {
      if (j == 1) {
        blocks.push_back(mask);
        break;
      }
      T target = best_for(j, mask);
      std::uint32_t low = mask & (~mask + 1), rest = mask ^ low;
      std::uint32_t chosen = mask;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        std::uint32_t block = sub | low;
        if (std::max(tour_[block], best_for(j - 1, mask ^ block)) == target) {
          chosen = block;
          break;
        }
        if (sub == 0) break;
      }
      blocks.push_back(chosen);
      mask ^= chosen;
    }
    std::vector<std::vector<NodeId>> out;
    for (auto block : blocks) out.push_back(expand(block));
    return out;
  }

 private:
  std::size_t n_;
  NodeId s_;
  T inf_;
  std::vector<T> dist_;
  std::vector<NodeId> via_;
  std::vector<NodeId> others_;
  std::vector<T> path_;  // [mask * m + j]: cheapest walk from s through mask ending at others_[j]
  std::vector<T> tour_;
  std::vector<std::vector<T>> best_;  // best_[j][mask]: min makespan covering mask with j + 1 walks

  T d(NodeId a, NodeId b) const { return dist_[a * n_ + b]; }

  void held_karp() {
    const std::size_t m = others_.size();
    const std::uint32_t size = 1u << m;
    std::vector<T> hop(m * m), home(m);
    for (std::size_t j = 0; j < m; ++j) {
      home[j] = d(others_[j], s_);
      for (std::size_t x = 0; x < m; ++x) hop[j * m + x] = d(others_[j], others_[x]);
    }
    path_.assign(static_cast<std::size_t>(size) * m, inf_);
    tour_.assign(size, inf_);
    tour_[0] = 0;
    for (std::size_t j = 0; j < m; ++j) path_[(1u << j) * m + j] = d(s_, others_[j]);
    for (std::uint32_t mask = 1; mask < size; ++mask) {
      for (std::uint32_t in = mask; in; in &= in - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(in));
        const T here = path_[mask * m + j];
        if (!(here < inf_)) continue;
        if (here + home[j] < tour_[mask]) tour_[mask] = here + home[j];
        for (std::uint32_t out = (size - 1) & ~mask; out; out &= out - 1) {
          const auto x = static_cast<std::size_t>(std::countr_zero(out));
          const T cand = here + hop[j * m + x];
          T& slot = path_[(mask | (1u << x)) * m + x];
          if (cand < slot) slot = cand;
        }
      }
    }
  }

  // walks = number of closed walks allowed (>= 1)
  T best_for(std::size_t walks, std::uint32_t mask) {
    if (mask == 0) return 0;
    if (walks <= 1) return tour_[mask];
    while (best_.size() < walks - 1) add_level();
    return best_[walks - 2][mask];
  }

  // one more walk than the last level: the walk through the lowest node takes a block, the rest recurse
  void add_level() {
    const std::vector<T>& prev = best_.empty() ? tour_ : best_.back();
    const std::uint32_t size = 1u << others_.size();
    std::vector<T> level(size, inf_);
    level[0] = 0;
    for (std::uint32_t mk = 1; mk < size; ++mk) {
      const std::uint32_t low = mk & (~mk + 1), rest = mk ^ low;
      T best = inf_;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        const std::uint32_t block = sub | low;
        const T& a = tour_[block];
        if (a < best) {
          const T& b = prev[mk ^ block];
          if (b < best) best = a < b ? b : a;
        }
        if (sub == 0) break;
      }
      level[mk] = best;
    }
    best_.push_back(std::move(level));
  }

  // the optimal visiting order of a block, with closure hops expanded into real edges
  std::vector<NodeId> expand(std::uint32_t block) const {
    const std::size_t m = others_.size();
    std::vector<NodeId> order;
    std::uint32_t mask = block;
    std::optional<std::size_t> last;
    for (std::size_t j = 0; j < m; ++j)
      if ((mask & (1u << j)) && path_[mask * m + j] + d(others_[j], s_) == tour_[mask]) {
        last = j;
        break;
      }
    while (mask) {
      order.push_back(others_[*last]);
      std::uint32_t prev = mask ^ (1u << *last);
      if (!prev) break;
      const T here = path_[mask * m + *last];
      for (std::size_t x = 0; x < m; ++x)
        if ((prev & (1u << x)) && path_[prev * m + x] + d(others_[x], others_[*last]) == here) {
          last = x;
          break;
        }
      mask = prev;
    }
    std::reverse(order.begin(), order.end());
    std::vector<NodeId> walk{s_};
    auto hop_to = [&](NodeId target) {
      while (walk.back() != target) walk.push_back(via_[walk.back() * n_ + target]);
    };
    for (NodeId v : order) hop_to(v);
    hop_to(s_);
    return walk;
  }
};

}  // namespace detail

// Exhaustive min-max covering walks for small instances.
class BruteForce {
 public:
  explicit BruteForce(const WeightedGraph& g, std::size_t cap = brute_cap()) : graph_(g) {
    if (g.node_count() > cap)
      throw TooLarge(std::to_string(g.node_count()) + " nodes exceeds the brute-force cap of " + std::to_string(cap));
    if (auto scaled = detail::scale_to_integers(g)) {
      scale_ = Rational(scaled->scale);
      solver_.emplace<detail::CoverSolver<std::int64_t>>(g, scaled->weights);
    } else {
      std::vector<Rational> exact;
      for (const auto& e : g.edges()) exact.push_back(e.weight);
      solver_.emplace<detail::CoverSolver<Rational>>(g, exact);
    }
  }

  Rational makespan(std::size_t agents) {
    if (agents == 0) throw NoAgents("at least one agent is required");
    return std::visit(
        [&](auto& s) -> Rational {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, std::monostate>) {
            return 0;
          } else if constexpr (std::is_same_v<S, detail::CoverSolver<std::int64_t>>) {
            return Rational(s.makespan(agents)) / scale_;
          } else {
            return s.makespan(agents);
          }
        },
        solver_);
  }

  OfflinePlan plan(std::size_t agents) {
    if (agents == 0) throw NoAgents("at least one agent is required");
    auto walks = std::visit(
        [&](auto& s) -> std::vector<std::vector<NodeId>> {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, std::monostate>) {
            return {};
          } else {
            return s.walks(agents);
          }
        },
        solver_);
    auto p = make_plan(graph_, std::move(walks));
    validate_plan(graph_, p, agents);
    if (p.makespan != makespan(agents)) throw InvalidPlan("reconstructed plan is not optimal");
    return p;
  }

 private:
  WeightedGraph graph_;
  Rational scale_ = 1;
  std::variant<std::monostate, detail::CoverSolver<std::int64_t>, detail::CoverSolver<Rational>> solver_;
};

inline OfflinePlan opt_bruteforce(const WeightedGraph& g, std::size_t agents, std::size_t cap = brute_cap()) {
  return BruteForce(g, cap).plan(agents);
}

enum class OptMethod { Closed, Brute };

inline std::string to_string(OptMethod m) { return m == OptMethod::Closed ? "closed" : "brute"; }

struct OfflineOptimum {
  Rational makespan;
  OptMethod method = OptMethod::Closed;
};

// Closed forms first (including a packed plan that meets the 2 max d floor), brute force otherwise.
inline OfflineOptimum offline_optimum(const WeightedGraph& g, std::size_t agents, std::size_t cap = brute_cap()) {
  if (agents == 0) throw NoAgents("at least one agent is required");
  if (agents == 1) return {opt_single_agent_ntadpole(g), OptMethod::Closed};
  if (g.shape() == Shape::Cycle) return {opt_cycle(g), OptMethod::Closed};
  if (g.shape() == Shape::Tadpole && agents >= 3) return {opt_tadpole_k3plus(g), OptMethod::Closed};
  if (packed_plan(g, agents).makespan == opt_far(g)) return {opt_far(g), OptMethod::Closed};
  return {BruteForce(g, cap).makespan(agents), OptMethod::Brute};
}

}  // namespace tadpole
