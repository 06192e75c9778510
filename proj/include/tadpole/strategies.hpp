#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tadpole/engine.hpp"
#include "tadpole/errors.hpp"

namespace tadpole {

// Team sizes when `size` agents fan out over `ways` directions: equal shares, remainder to the first.
inline std::vector<std::size_t> split_team(std::size_t size, std::size_t ways) {
  if (ways == 0) return {};
  if (size < ways)
    throw InsufficientAgents("cannot split " + std::to_string(size) + " agents over " + std::to_string(ways) + " directions");
  std::vector<std::size_t> sizes(ways, size / ways);
  sizes.front() += size % ways;
  return sizes;
}

enum class EdgeRule { Lightest, ShortestRoute };
enum class Pace { Token, AllButLongest };
enum class Staffing { Spares, FreeAgents, Split };
enum class Formation { OnePerEdge, SplitAll };

struct TeamOptions {
  EdgeRule rule = EdgeRule::ShortestRoute;
  Pace pace = Pace::Token;
  bool meet_at_midpoint = false;
  bool random_forks = false;
  Staffing staffing = Staffing::Spares;
  bool free_agents_go_home = false;
  Formation formation = Formation::OnePerEdge;
};

// Units are teams of co-located agents exploring one direction each. Directions that cannot be
// covered at a fork become arms, picked up by spare agents from home or by agents that ran out of work.
class TeamExplorer final : public StrategyPolicy {
 public:
  explicit TeamExplorer(TeamOptions options) : opt_(options) {}

  std::vector<Command> decide(const Knowledge& world, RandomStream& rng) override {
    if (!started_) start(world, rng);
    land(world, rng);
    if (opt_.staffing == Staffing::FreeAgents) staff_arms(world);
    return commands(world, rng);
  }

 private:
  struct Unit {
    std::vector<std::size_t> members;
    NodeId node = 0;
    std::optional<NodeId> prev;
    std::optional<NodeId> next;
    NodeId target = 0;
    Rational route;
    bool moving = false;
    bool arrived_first = true;
  };
  struct Arm {
    NodeId from = 0;
    NodeId to = 0;
    std::optional<std::size_t> agent;
  };
  struct Walker {
    std::size_t agent = 0;
    Arm arm;
  };
  struct Candidate {
    Rational key;
    std::size_t tie = 0;
    bool moving = false;
    bool is_arm = false;
    std::size_t index = 0;
  };

  TeamOptions opt_;
  bool started_ = false;
  std::vector<Unit> units_;
  std::vector<Arm> arms_;
  std::vector<Walker> walkers_;
  std::vector<bool> used_;
  std::vector<std::optional<Rational>> route_at_;

  std::optional<Rational> route_at(NodeId v) const { return v < route_at_.size() ? route_at_[v] : std::nullopt; }
  void set_route_at(NodeId v, const Rational& r) {
    if (route_at_.size() <= v) route_at_.resize(v + 1);
    route_at_[v] = r;
  }

  std::optional<NodeId> forward(const Knowledge& world, const Unit& u) const {
    if (!u.arrived_first || !u.next) return std::nullopt;
    NodeId y = *u.next;
    if (!world.visited(y)) return y;
    if (opt_.meet_at_midpoint && (!u.prev || *u.prev != y)) {
      auto r = route_at(y);
      if (r && *r == u.route + *world.weight(u.node, y)) return y;
    }
    return std::nullopt;
  }

  bool live(const Knowledge& world, const Unit& u) const { return u.moving || forward(world, u).has_value(); }

  Rational key(const Knowledge& world, NodeId from, NodeId to, const Rational& route) const {
    Rational w = *world.weight(from, to);
    return opt_.rule == EdgeRule::Lightest ? w : route + w;
  }

  std::vector<NodeId> unvisited_links(const Knowledge& world, NodeId v) const {
    std::vector<NodeId> out;
    for (const auto& l : world.links(v))
      if (!world.visited(l.to)) out.push_back(l.to);
    return out;
  }

  std::vector<std::size_t> take_agents(std::vector<std::size_t>& pool, std::size_t count) {
    std::vector<std::size_t> out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    for (auto a : out) used_[a] = true;
    return out;
  }

  void start(const Knowledge& world, RandomStream& rng) {
    started_ = true;
    const std::size_t k = world.agent_count();
    used_.assign(k, false);
    set_route_at(world.home(), 0);
    std::vector<NodeId> dirs = unvisited_links(world, world.home());
    std::vector<std::size_t> pool(k);
    for (std::size_t i = 0; i < k; ++i) pool[i] = i;

    Unit base;
    base.node = world.home();

    if (opt_.formation == Formation::SplitAll) {
      for (std::size_t i = 0; auto size : split_team(k, dirs.size())) {
        Unit u = base;
        u.members = take_agents(pool, size);
        u.next = dirs[i++];
        units_.push_back(std::move(u));
      }
      return;
    }

    if (dirs.size() == 1) {
      Unit u = base;
      u.members = take_agents(pool, std::min<std::size_t>(2, k));
      u.next = dirs.front();
      units_.push_back(std::move(u));
      return;
    }
    std::vector<NodeId> leftover;
    while (dirs.size() > k) {
      std::size_t drop = opt_.random_forks ? rng.pick(dirs.size()) : dirs.size() - 1;
      leftover.insert(leftover.begin(), dirs[drop]);
      dirs.erase(dirs.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    for (NodeId d : dirs) {
      Unit u = base;
      u.members = take_agents(pool, 1);
      u.next = d;
      units_.push_back(std::move(u));
    }
    std::vector<Arm> arms;
    for (NodeId d : leftover) arms.push_back({world.home(), d, std::nullopt});
    hand_out(arms);
  }

  void hand_out(const std::vector<Arm>& arms) {
    if (arms.empty()) return;
    if (opt_.staffing == Staffing::FreeAgents) {
      arms_.insert(arms_.end(), arms.begin(), arms.end());
      return;
    }
    std::vector<std::size_t> spares;
    for (std::size_t a = 0; a < used_.size(); ++a)
      if (!used_[a]) spares.push_back(a);
    if (opt_.staffing == Staffing::Split || spares.size() < arms.size())
      throw InsufficientAgents("no free agent for " + std::to_string(arms.size()) + " new direction(s)");
    for (const Arm& arm : arms) walkers_.push_back({take_agents(spares, 1).front(), arm});
  }

  // split or trim a unit standing on a fresh node with several unexplored directions
  std::vector<Unit> fork(const Unit& u, const std::vector<NodeId>& dirs, RandomStream& rng) {
    std::vector<Unit> out;
    auto child = [&](std::vector<std::size_t> members, NodeId dir) {
      Unit c = u;
      c.members = std::move(members);
      c.next = dir;
      out.push_back(std::move(c));
    };
    std::vector<std::size_t> pool = u.members;
    if (opt_.formation == Formation::SplitAll) {
      if (pool.size() < dirs.size() && opt_.staffing != Staffing::Split) {
        // fall through to the trimming rule below
      } else {
        for (std::size_t i = 0; auto size : split_team(pool.size(), dirs.size())) {
          std::vector<std::size_t> members(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
          pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
          child(std::move(members), dirs[i++]);
        }
        return out;
      }
    }
    if (pool.size() >= dirs.size()) {
      std::size_t extra = pool.size() - dirs.size();
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        std::size_t take = i == 0 ? extra + 1 : 1;
        std::vector<std::size_t> members(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
        pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
        child(std::move(members), dirs[i]);
      }
      return out;
    }
    std::vector<NodeId> rest = dirs;
    std::vector<NodeId> kept;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      std::size_t pick = opt_.random_forks ? rng.pick(rest.size()) : 0;
      kept.push_back(rest[pick]);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    for (std::size_t i = 0; i < pool.size(); ++i) child({pool[i]}, kept[i]);
    std::vector<Arm> arms;
    for (NodeId d : rest) arms.push_back({u.node, d, std::nullopt});
    hand_out(arms);
    return out;
  }

  void arrive(const Knowledge& world, Unit& u, RandomStream& rng, std::vector<Unit>& spawned) {
    NodeId v = u.target;
    u.route += *world.weight(u.node, v);
    u.prev = u.node;
    u.node = v;
    u.moving = false;
    auto first = world.first_visitor(v);
    u.arrived_first = world.first_visit_time(v) == world.clock() && first &&
                      std::find(u.members.begin(), u.members.end(), *first) != u.members.end();
    u.next.reset();
    if (!u.arrived_first) return;
    set_route_at(v, u.route);
    auto dirs = unvisited_links(world, v);
    if (dirs.size() >= 2) {
      auto children = fork(u, dirs, rng);
      u = std::move(children.front());
      spawned.insert(spawned.end(), std::make_move_iterator(children.begin() + 1), std::make_move_iterator(children.end()));
    } else if (dirs.size() == 1) {
      u.next = dirs.front();
    } else {
      std::vector<NodeId> onward;
      for (const auto& l : world.links(v))
        if (l.to != *u.prev) onward.push_back(l.to);
      if (onward.size() == 1) u.next = onward.front();
    }
  }

  Unit unit_at(const Knowledge& world, std::size_t agent, const Arm& arm) {
    Unit u;
    u.members = {agent};
    u.node = arm.from;
    u.next = arm.to;
    u.route = world.distance(world.home(), arm.from);
    used_[agent] = true;
    return u;
  }

  void land(const Knowledge& world, RandomStream& rng) {
    std::vector<Unit> spawned;
    for (auto& u : units_)
      if (u.moving && !world.agent(u.members.front()).moving) arrive(world, u, rng, spawned);
    units_.insert(units_.end(), spawned.begin(), spawned.end());

    for (auto it = walkers_.begin(); it != walkers_.end();) {
      const auto& a = world.agent(it->agent);
      if (!a.moving && a.at == it->arm.from) {
        units_.push_back(unit_at(world, it->agent, it->arm));
        it = walkers_.erase(it);
      } else {
        ++it;
      }
    }
    for (auto it = arms_.begin(); it != arms_.end();) {
      if (it->agent && !world.agent(*it->agent).moving && world.agent(*it->agent).at == it->from) {
        units_.push_back(unit_at(world, *it->agent, *it));
        it = arms_.erase(it);
      } else {
        ++it;
      }
    }
  }

  bool held(const Knowledge& world, const Unit& dead) const {
    for (const auto& u : units_) {
      if (&u == &dead) continue;
      auto f = forward(world, u);
      if (f && *f == dead.node && world.visited(*f)) return true;
    }
    return false;
  }

  std::vector<bool> busy_agents(const Knowledge& world) const {
    std::vector<bool> busy(world.agent_count(), false);
    for (const auto& u : units_)
      for (auto m : u.members) busy[m] = true;
    for (const auto& w : walkers_) busy[w.agent] = true;
    for (const auto& a : arms_)
      if (a.agent) busy[*a.agent] = true;
    return busy;
  }

  void staff_arms(const Knowledge& world) {
    // agents whose unit has nothing left to do are released, unless a partner is about to meet them
    std::vector<Unit> keep;
    for (const auto& u : units_)
      if (live(world, u) || held(world, u)) keep.push_back(u);
    units_ = std::move(keep);

    for (auto it = arms_.begin(); it != arms_.end();) {
      if (world.visited(it->to) && !(it->agent && world.agent(*it->agent).moving))
        it = arms_.erase(it);
      else
        ++it;
    }
    auto busy = busy_agents(world);
    for (auto& arm : arms_) {
      if (arm.agent || world.visited(arm.to)) continue;
      std::optional<std::size_t> best;
      for (std::size_t a = 0; a < world.agent_count(); ++a) {
        if (busy[a] || world.agent(a).moving) continue;
        if (!best || world.agent(a).distance < world.agent(*best).distance) best = a;
      }
      if (!best) break;
      arm.agent = best;
      busy[*best] = true;
    }
  }

  void move_unit(const Knowledge& world, Unit& u, std::vector<Command>& out) {
    NodeId y = *forward(world, u);
    for (auto m : u.members) out[m] = Command::traverse(y);
    u.moving = true;
    u.target = y;
  }

  std::vector<Command> commands(const Knowledge& world, RandomStream& rng) {
    std::vector<Command> out(world.agent_count());
    const NodeId home = world.home();

    bool any_live = false;
    for (const auto& u : units_) any_live = any_live || live(world, u);
    bool arms_open = false;
    for (const auto& a : arms_) arms_open = arms_open || !world.visited(a.to) || (a.agent && world.agent(*a.agent).moving);
    if (world.explored() && !any_live && walkers_.empty() && !arms_open) {
      for (auto& c : out) c = Command::toward(home);
      return out;
    }

    if (opt_.free_agents_go_home) {
      auto busy = busy_agents(world);
      for (std::size_t a = 0; a < out.size(); ++a)
        if (!busy[a] && used_[a]) out[a] = Command::toward(home);
    }

    if (!walkers_.empty()) {
      for (const auto& w : walkers_) out[w.agent] = Command::toward(w.arm.from);
      return out;
    }

    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < units_.size(); ++i) {
      const Unit& u = units_[i];
      std::size_t tie = *std::min_element(u.members.begin(), u.members.end());
      if (u.moving) {
        cands.push_back({u.route + *world.weight(u.node, u.target), tie, true, false, i});
      } else if (auto y = forward(world, u)) {
        cands.push_back({key(world, u.node, *y, u.route), tie, false, false, i});
      }
    }
    for (std::size_t i = 0; i < arms_.size(); ++i) {
      const Arm& a = arms_[i];
      if (!a.agent || world.visited(a.to)) continue;
      Rational k = key(world, a.from, a.to, world.distance(home, a.from));
      cands.push_back({k, *a.agent, world.agent(*a.agent).moving, true, i});
    }

    std::vector<std::size_t> movers;
    if (opt_.pace == Pace::Token) {
      bool someone_moving = std::any_of(cands.begin(), cands.end(), [](const Candidate& c) { return c.moving; });
      if (!someone_moving && !cands.empty()) {
        Rational best = cands.front().key;
        for (const auto& c : cands) best = std::min(best, c.key);
        std::vector<std::size_t> tied;
        for (std::size_t i = 0; i < cands.size(); ++i)
          if (cands[i].key == best) tied.push_back(i);
        std::sort(tied.begin(), tied.end(), [&](auto x, auto y) { return cands[x].tie < cands[y].tie; });
        std::size_t chosen = tied.back();
        if (opt_.rule == EdgeRule::Lightest && tied.size() > 1) chosen = tied[rng.pick(tied.size())];
        movers.push_back(chosen);
      }
    } else {
      std::optional<std::size_t> hold;
      if (cands.size() >= 2) {
        std::size_t top = 0;
        for (std::size_t i = 1; i < cands.size(); ++i)
          if (cands[i].key > cands[top].key) top = i;
        std::size_t count = std::count_if(cands.begin(), cands.end(), [&](const Candidate& c) { return c.key == cands[top].key; });
        if (count == 1 && !cands[top].moving) hold = top;
      }
      for (std::size_t i = 0; i < cands.size(); ++i)
        if (!cands[i].moving && hold != i) movers.push_back(i);
    }

    for (auto i : movers) {
      const Candidate& c = cands[i];
      if (c.is_arm) {
        out[*arms_[c.index].agent] = Command::toward(arms_[c.index].from);
      } else {
        move_unit(world, units_[c.index], out);
      }
    }
    return out;
  }
};

struct PolicyInfo {
  std::string name;
  std::size_t min_agents = 1;
  std::optional<std::size_t> tails;  // required tail count, if fixed
  TeamOptions options;
};

inline TeamOptions ale_options() { return {EdgeRule::Lightest, Pace::Token, false, false, Staffing::Spares, false, Formation::OnePerEdge}; }
inline TeamOptions amp_cycle_options() { return {EdgeRule::ShortestRoute, Pace::Token, false, false, Staffing::Spares, false, Formation::OnePerEdge}; }
inline TeamOptions amp_tad2_options() { return {EdgeRule::ShortestRoute, Pace::Token, true, true, Staffing::FreeAgents, true, Formation::OnePerEdge}; }
inline TeamOptions amp_tad3_options() { return {EdgeRule::ShortestRoute, Pace::Token, true, false, Staffing::Spares, false, Formation::OnePerEdge}; }
inline TeamOptions amp_tad4_options() { return {EdgeRule::ShortestRoute, Pace::AllButLongest, false, false, Staffing::Split, false, Formation::SplitAll}; }
inline TeamOptions ale_tad4_options() { return {EdgeRule::Lightest, Pace::Token, false, false, Staffing::Split, false, Formation::SplitAll}; }

inline std::vector<std::string> policy_names() {
  return {"ale-cycle", "amp", "ale-tad3", "ale-tad4", "amp-tad2", "amp-tad3", "amp-tad4", "ntad-nplus2", "ntad-exp"};
}

// Resolves aliases ("amp-cycle", "ale-tad" with 3 or 4 agents) to a canonical policy name.
inline std::string canonical_policy(const std::string& name, std::size_t agents) {
  if (name == "amp-cycle") return "amp";
  if (name == "ale-tad") return agents >= 4 ? "ale-tad4" : "ale-tad3";
  return name;
}

inline std::size_t required_agents(const std::string& name, std::size_t tails) {
  if (name == "ntad-nplus2") return tails + 2;
  if (name == "ntad-exp") return std::size_t{1} << (tails + 1);
  if (name == "ale-cycle" || name == "amp" || name == "amp-tad2") return 2;
  if (name == "ale-tad3" || name == "amp-tad3") return 3;
  if (name == "ale-tad4" || name == "amp-tad4") return 4;
  throw UnknownStrategy("unknown strategy '" + name + "'");
}

inline PolicyInfo policy_info(const std::string& alias, std::size_t agents) {
  const std::string name = canonical_policy(alias, agents);
  if (name == "ale-cycle") return {name, 2, 0, ale_options()};
  if (name == "amp") return {name, 2, 0, amp_cycle_options()};
  if (name == "ale-tad3") return {name, 3, 1, ale_options()};
  if (name == "ale-tad4") return {name, 4, 1, ale_tad4_options()};
  if (name == "amp-tad2") return {name, 2, 1, amp_tad2_options()};
  if (name == "amp-tad3") return {name, 3, 1, amp_tad3_options()};
  if (name == "amp-tad4") return {name, 4, 1, amp_tad4_options()};
  if (name == "ntad-nplus2") return {name, 2, std::nullopt, amp_tad3_options()};
  if (name == "ntad-exp") return {name, 2, std::nullopt, amp_tad4_options()};
  throw UnknownStrategy("unknown strategy '" + alias + "'");
}

// Builds a policy after checking the instance class and agent count it needs.
inline std::unique_ptr<StrategyPolicy> make_policy(const std::string& alias, std::size_t agents, std::size_t tails) {
  if (agents == 0) throw NoAgents("at least one agent is required");
  PolicyInfo info = policy_info(alias, agents);
  if (info.tails && *info.tails != tails) {
    const char* want = *info.tails == 0 ? "a cycle" : "a tadpole";
    throw WrongGraphClass(info.name + " needs " + want + ", got " + std::to_string(tails) + " tail(s)");
  }
  std::size_t need = required_agents(info.name, tails);
  if (agents < need)
    throw InsufficientAgents(info.name + " needs " + std::to_string(need) + " agents, got " + std::to_string(agents));
  return std::make_unique<TeamExplorer>(info.options);
}

inline Trace explore(const std::string& alias, RevelationOracle& oracle, std::size_t agents, RandomStream& rng) {
  auto policy = make_policy(alias, agents, oracle.declared_tails());
  return run(*policy, oracle, agents, rng);
}

inline Trace explore(const std::string& alias, RevelationOracle& oracle, std::size_t agents, std::uint64_t seed) {
  SeededStream rng(seed);
  return explore(alias, oracle, agents, rng);
}

inline Trace explore(const std::string& alias, const WeightedGraph& g, std::size_t agents, RandomStream& rng) {
  StaticOracle oracle(g);
  return explore(alias, oracle, agents, rng);
}

inline Trace explore(const std::string& alias, const WeightedGraph& g, std::size_t agents, std::uint64_t seed) {
  SeededStream rng(seed);
  return explore(alias, g, agents, rng);
}

}  // namespace tadpole
