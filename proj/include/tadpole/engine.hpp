#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "tadpole/errors.hpp"
#include "tadpole/graph.hpp"
#include "tadpole/rational.hpp"

namespace tadpole {

struct RevealedEdge {
  std::string neighbor;
  Rational weight;
};

// What the agents can ask of the world. A node's incident edges are handed out on its first visit.
class RevelationOracle {
 public:
  virtual ~RevelationOracle() = default;
  virtual std::string start() = 0;
  virtual std::vector<RevealedEdge> reveal(const std::string& node) = 0;
  // adaptive oracles watch departures; static ones ignore them
  virtual void notify_depart(const std::string& /*from*/, const std::string& /*to*/) {}
  virtual WeightedGraph finalize() = 0;
  virtual std::size_t declared_tails() const = 0;
  // upper bound on the total edge weight of any graph the oracle may commit to
  virtual Rational weight_bound() const = 0;
};

class StaticOracle final : public RevelationOracle {
 public:
  explicit StaticOracle(WeightedGraph g) : graph_(std::move(g)) {}

  std::string start() override { return graph_.label(graph_.start()); }
  std::vector<RevealedEdge> reveal(const std::string& node) override {
    std::vector<RevealedEdge> out;
    for (const Link& l : graph_.links(graph_.node(node)))
      out.push_back({graph_.label(l.to), graph_.edge(l.edge).weight});
    return out;
  }
  WeightedGraph finalize() override { return graph_; }
  std::size_t declared_tails() const override { return graph_.tail_count(); }
  Rational weight_bound() const override { return graph_.total_weight(); }

 private:
  WeightedGraph graph_;
};

class RandomStream {
 public:
  virtual ~RandomStream() = default;
  // uniform in [0, arity)
  virtual std::size_t pick(std::size_t arity) = 0;
};

class SeededStream final : public RandomStream {
 public:
  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}
  std::size_t pick(std::size_t arity) override {
    if (arity <= 1) return 0;
    return std::uniform_int_distribution<std::size_t>(0, arity - 1)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

// Replays a fixed choice list (0 once it runs out) and records every arity asked for,
// so all outcomes of a randomized run can be enumerated.
class ScriptedStream final : public RandomStream {
 public:
  explicit ScriptedStream(std::vector<std::size_t> script = {}) : script_(std::move(script)) {}
  std::size_t pick(std::size_t arity) override {
    std::size_t i = made_.size();
    std::size_t choice = i < script_.size() ? script_[i] : 0;
    if (arity == 0) arity = 1;
    if (choice >= arity) choice = arity - 1;
    arities_.push_back(arity);
    made_.push_back(choice);
    return choice;
  }
  const std::vector<std::size_t>& arities() const { return arities_; }
  const std::vector<std::size_t>& choices() const { return made_; }

 private:
  std::vector<std::size_t> script_;
  std::vector<std::size_t> arities_;
  std::vector<std::size_t> made_;
};

// Calls body with a fresh ScriptedStream for every distinct choice sequence, depth first.
// Stops early (returning false) once more than `limit` sequences would be needed.
inline bool for_each_choice_sequence(const std::function<void(ScriptedStream&)>& body, std::size_t limit) {
  std::vector<std::size_t> script;
  for (std::size_t runs = 0;; ++runs) {
    if (runs >= limit) return false;
    ScriptedStream stream(script);
    body(stream);
    auto choices = stream.choices();
    const auto& arities = stream.arities();
    std::size_t i = choices.size();
    while (i > 0 && choices[i - 1] + 1 >= arities[i - 1]) --i;
    if (i == 0) return true;
    choices.resize(i);
    ++choices.back();
    script = std::move(choices);
  }
}

// Counts the distinct choice sequences of a randomized run, up to limit + 1.
inline std::size_t count_choice_sequences(const std::function<void(ScriptedStream&)>& body, std::size_t limit) {
  std::size_t count = 0;
  bool complete = for_each_choice_sequence([&](ScriptedStream& s) { body(s), ++count; }, limit);
  return complete ? count : limit + 1;
}

struct KnownLink {
  NodeId to = 0;
  Rational weight;
};

struct AgentState {
  NodeId at = 0;            // current node, or the node it left when in transit
  bool moving = false;
  NodeId to = 0;
  Rational arrival;
  Rational distance;        // total traversed so far, including the edge in progress once it lands
};

// Shared view of the agents. Node ids are local: assigned in order of discovery, home is 0.
class Knowledge {
 public:
  std::size_t node_count() const { return labels_.size(); }
  const std::string& label(NodeId v) const { return labels_.at(v); }
  std::optional<NodeId> find(const std::string& label) const {
    auto it = ids_.find(label);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  NodeId home() const { return 0; }
  bool visited(NodeId v) const { return visited_.at(v); }
  const std::vector<KnownLink>& links(NodeId v) const { return links_.at(v); }
  std::optional<Rational> weight(NodeId u, NodeId v) const {
    for (const auto& l : links_.at(u))
      if (l.to == v) return l.weight;
    return std::nullopt;
  }
  std::size_t unvisited_neighbours(NodeId v) const {
    std::size_t n = 0;
    for (const auto& l : links_.at(v)) n += !visited_[l.to];
    return n;
  }
  bool explored() const { return unvisited_ == 0; }
  std::optional<Rational> first_visit_time(NodeId v) const { return first_time_.at(v); }
  std::optional<std::size_t> first_visitor(NodeId v) const { return first_agent_.at(v); }

  std::size_t agent_count() const { return agents_.size(); }
  const AgentState& agent(std::size_t i) const { return agents_.at(i); }
  const Rational& clock() const { return clock_; }

  // shortest distance inside the known subgraph
  Rational distance(NodeId from, NodeId to) const { return distances_to(to).at(from); }

  // first hop of a shortest known path; ties go to the smaller local id
  NodeId next_hop(NodeId from, NodeId to) const {
    const auto& d = distances_to(to);
    std::optional<NodeId> best;
    Rational best_len;
    for (const auto& l : links_.at(from)) {
      Rational len = l.weight + d.at(l.to);
      if (!best || len < best_len || (len == best_len && l.to < *best)) {
        best = l.to;
        best_len = len;
      }
    }
    if (!best) throw IllegalCommand("no known route from " + label(from) + " to " + label(to));
    return *best;
  }

 private:
  friend class Exploration;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::vector<KnownLink>> links_;
  std::vector<bool> visited_;
  std::vector<std::optional<Rational>> first_time_;
  std::vector<std::optional<std::size_t>> first_agent_;
  std::size_t unvisited_ = 0;
  std::vector<AgentState> agents_;
  Rational clock_;
  mutable std::unordered_map<NodeId, std::vector<Rational>> dist_cache_;

  NodeId intern(const std::string& label) {
    if (auto v = find(label)) return *v;
    NodeId v = labels_.size();
    labels_.push_back(label);
    ids_.emplace(label, v);
    links_.emplace_back();
    visited_.push_back(false);
    first_time_.emplace_back();
    first_agent_.emplace_back();
    ++unvisited_;
    return v;
  }

  const std::vector<Rational>& distances_to(NodeId target) const {
    auto it = dist_cache_.find(target);
    if (it != dist_cache_.end()) return it->second;
    // unreachable nodes keep a huge sentinel so they never win a comparison
    Rational unreachable = 1;
    for (const auto& ls : links_)
      for (const auto& l : ls) unreachable += l.weight;
    std::vector<Rational> dist(labels_.size(), unreachable);
    std::vector<bool> done(labels_.size(), false);
    using Item = std::pair<Rational, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[target] = 0;
    pq.emplace(Rational(0), target);
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (done[v]) continue;
      done[v] = true;
      for (const auto& l : links_[v]) {
        Rational nd = d + l.weight;
        if (nd < dist[l.to]) {
          dist[l.to] = nd;
          pq.emplace(nd, l.to);
        }
      }
    }
    return dist_cache_.emplace(target, std::move(dist)).first->second;
  }
};

struct Command {
  enum class Kind { Wait, Traverse, Toward };
  Kind kind = Kind::Wait;
  NodeId node = 0;

  static Command wait() { return {}; }
  static Command traverse(NodeId neighbour) { return {Kind::Traverse, neighbour}; }
  static Command toward(NodeId target) { return {Kind::Toward, target}; }
};

// Gets a command for every agent at every decision instant; commands for moving agents are ignored.
class StrategyPolicy {
 public:
  virtual ~StrategyPolicy() = default;
  virtual std::vector<Command> decide(const Knowledge& world, RandomStream& rng) = 0;
};

enum class EventKind { Depart, Arrive, WaitBegin, WaitEnd, Done };

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Depart: return "depart";
    case EventKind::Arrive: return "arrive";
    case EventKind::WaitBegin: return "wait_begin";
    case EventKind::WaitEnd: return "wait_end";
    case EventKind::Done: return "done";
  }
  return "?";
}

struct TraceEvent {
  Rational time;
  std::size_t agent = 0;
  EventKind kind = EventKind::Depart;
  std::string from;
  std::string to;
  std::optional<Rational> weight;
  Rational agent_total;
};

struct Trace {
  std::vector<TraceEvent> events;
  std::vector<Rational> distances;
  Rational completion;
  std::map<std::string, Rational> first_visit;
  WeightedGraph graph;  // what the oracle committed to
};

inline Rational cost_time(const Trace& t) { return t.completion; }

inline Rational cost_energy(const Trace& t) {
  Rational worst = 0;
  for (const auto& d : t.distances) worst = std::max(worst, d);
  return worst;
}

inline Rational competitive_ratio(const Rational& online, const Rational& opt) {
  if (opt <= 0) throw ZeroOptimum("offline optimum is " + to_string(opt));
  return online / opt;
}

inline bool traversed(const Trace& t, const std::string& u, const std::string& v) {
  for (const auto& e : t.events)
    if (e.kind == EventKind::Depart && ((e.from == u && e.to == v) || (e.from == v && e.to == u))) return true;
  return false;
}

inline std::string trace_csv(const Trace& t) {
  std::ostringstream out;
  out << "time,agent,kind,from,to,edge_weight,agent_total_distance\n";
  for (const auto& e : t.events) {
    out << to_string(e.time) << ',' << e.agent + 1 << ',' << to_string(e.kind) << ',' << e.from << ',' << e.to << ','
        << (e.weight ? to_string(*e.weight) : "") << ',' << to_string(e.agent_total) << '\n';
  }
  return out.str();
}

struct RunOptions {
  Rational guard_factor = 100;
};

class Exploration {
 public:
  Exploration(StrategyPolicy& policy, RevelationOracle& oracle, std::size_t agents, RandomStream& rng,
              RunOptions options = {})
      : policy_(policy), oracle_(oracle), rng_(rng), options_(std::move(options)) {
    if (agents == 0) throw NoAgents("at least one agent is required");
    world_.agents_.assign(agents, AgentState{});
    waiting_.assign(agents, false);
  }

  Trace run() {
    const Rational limit = options_.guard_factor * oracle_.weight_bound();
    NodeId home = world_.intern(oracle_.start());
    visit(home, 0);

    while (true) {
      if (finished()) break;
      dispatch(policy_.decide(world_, rng_));

      std::optional<Rational> next;
      for (const auto& a : world_.agents_)
        if (a.moving && (!next || a.arrival < *next)) next = a.arrival;
      if (!next) {
        if (finished()) break;
        throw NonTermination("exploration stalled at time " + to_string(world_.clock_));
      }
      if (*next > limit) throw NonTermination("clock passed " + to_string(limit));
      world_.clock_ = *next;
      for (std::size_t i = 0; i < world_.agents_.size(); ++i) {
        AgentState& a = world_.agents_[i];
        if (!a.moving || a.arrival != world_.clock_) continue;
        NodeId from = a.at;
        a.moving = false;
        a.at = a.to;
        trace_.events.push_back({world_.clock_, i, EventKind::Arrive, world_.label(from), world_.label(a.at),
                                 world_.weight(from, a.at), a.distance});
        if (!world_.visited(a.at)) visit(a.at, i);
      }
    }

    for (std::size_t i = 0; i < world_.agents_.size(); ++i) {
      if (waiting_[i]) trace_.events.push_back(node_event(i, EventKind::WaitEnd));
      trace_.events.push_back(node_event(i, EventKind::Done));
      trace_.distances.push_back(world_.agents_[i].distance);
    }
    trace_.completion = world_.clock_;
    trace_.graph = oracle_.finalize();
    check_final(trace_.graph);
    return std::move(trace_);
  }

 private:
  StrategyPolicy& policy_;
  RevelationOracle& oracle_;
  RandomStream& rng_;
  RunOptions options_;
  Knowledge world_;
  std::vector<bool> waiting_;
  Trace trace_;

  bool finished() const {
    if (!world_.explored()) return false;
    for (const auto& a : world_.agents_)
      if (a.moving || a.at != world_.home()) return false;
    return true;
  }

  TraceEvent node_event(std::size_t i, EventKind kind) const {
    const auto& a = world_.agents_[i];
    return {world_.clock_, i, kind, world_.label(a.at), world_.label(a.at), std::nullopt, a.distance};
  }

  void visit(NodeId v, std::size_t agent) {
    auto revealed = oracle_.reveal(world_.label(v));
    std::vector<NodeId> seen;
    for (const auto& r : revealed) {
      if (r.weight <= 0) throw OracleInconsistency("nonpositive weight revealed at " + world_.label(v));
      NodeId u = world_.intern(r.neighbor);
      if (u == v || std::find(seen.begin(), seen.end(), u) != seen.end())
        throw OracleInconsistency("repeated or looping edge revealed at " + world_.label(v));
      seen.push_back(u);
      if (auto known = world_.weight(v, u)) {
        if (*known != r.weight)
          throw OracleInconsistency("edge " + world_.label(v) + "-" + r.neighbor + " changed weight");
        continue;
      }
      world_.links_[v].push_back({u, r.weight});
      world_.links_[u].push_back({v, r.weight});
    }
    if (world_.links_[v].size() != seen.size())
      throw OracleInconsistency("reveal at " + world_.label(v) + " omits a known edge");
    world_.visited_[v] = true;
    --world_.unvisited_;
    world_.first_time_[v] = world_.clock_;
    world_.first_agent_[v] = agent;
    trace_.first_visit[world_.label(v)] = world_.clock_;
    world_.dist_cache_.clear();
  }

  void dispatch(const std::vector<Command>& commands) {
    if (commands.size() != world_.agents_.size()) throw IllegalCommand("policy returned the wrong number of commands");
    for (std::size_t i = 0; i < commands.size(); ++i) {
      AgentState& a = world_.agents_[i];
      if (a.moving) continue;
      std::optional<NodeId> hop;
      const Command& c = commands[i];
      if (c.kind == Command::Kind::Traverse) {
        if (!world_.weight(a.at, c.node))
          throw IllegalCommand("agent " + std::to_string(i + 1) + " has no known edge from " + world_.label(a.at));
        hop = c.node;
      } else if (c.kind == Command::Kind::Toward) {
        if (c.node >= world_.node_count()) throw IllegalCommand("unknown target");
        if (c.node != a.at) hop = world_.next_hop(a.at, c.node);
      }
      if (!hop) {
        if (!waiting_[i]) {
          waiting_[i] = true;
          trace_.events.push_back(node_event(i, EventKind::WaitBegin));
        }
        continue;
      }
      if (waiting_[i]) {
        waiting_[i] = false;
        trace_.events.push_back(node_event(i, EventKind::WaitEnd));
      }
      Rational w = *world_.weight(a.at, *hop);
      oracle_.notify_depart(world_.label(a.at), world_.label(*hop));
      a.moving = true;
      a.to = *hop;
      a.arrival = world_.clock_ + w;
      a.distance += w;
      trace_.events.push_back({world_.clock_, i, EventKind::Depart, world_.label(a.at), world_.label(*hop), w, a.distance});
    }
  }

  void check_final(const WeightedGraph& g) const {
    if (g.tail_count() != oracle_.declared_tails())
      throw OracleInconsistency("committed graph has " + std::to_string(g.tail_count()) + " tails");
    if (g.label(g.start()) != world_.label(world_.home())) throw OracleInconsistency("committed graph moved the start");
    if (g.node_count() != world_.node_count()) throw OracleInconsistency("committed graph has unseen nodes");
    for (NodeId v = 0; v < world_.node_count(); ++v) {
      auto gv = g.find(world_.label(v));
      if (!gv) throw OracleInconsistency("committed graph lacks " + world_.label(v));
      if (g.degree(*gv) != world_.links_[v].size())
        throw OracleInconsistency("committed degree differs at " + world_.label(v));
      for (const auto& l : world_.links_[v]) {
        auto e = g.edge_between(*gv, g.node(world_.label(l.to)));
        if (!e || g.edge(*e).weight != l.weight)
          throw OracleInconsistency("committed edge differs at " + world_.label(v));
      }
    }
  }
};

inline Trace run(StrategyPolicy& policy, RevelationOracle& oracle, std::size_t agents, RandomStream& rng,
                 RunOptions options = {}) {
  return Exploration(policy, oracle, agents, rng, std::move(options)).run();
}

inline Trace run(StrategyPolicy& policy, RevelationOracle& oracle, std::size_t agents, std::uint64_t seed) {
  SeededStream rng(seed);
  return run(policy, oracle, agents, rng);
}

// Follows fixed closed walks given as label sequences; agents without a walk stay home.
class ReplayPolicy final : public StrategyPolicy {
 public:
  explicit ReplayPolicy(std::vector<std::vector<std::string>> walks) : walks_(std::move(walks)) {}

  std::vector<Command> decide(const Knowledge& world, RandomStream&) override {
    std::vector<Command> out(world.agent_count());
    if (step_.size() < out.size()) step_.resize(out.size(), 1);
    for (std::size_t i = 0; i < out.size() && i < walks_.size(); ++i) {
      if (world.agent(i).moving || step_[i] >= walks_[i].size()) continue;
      auto next = world.find(walks_[i][step_[i]]);
      if (!next) throw IllegalCommand("replay walk leaves the known graph at " + walks_[i][step_[i]]);
      out[i] = Command::traverse(*next);
      ++step_[i];
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> walks_;
  std::vector<std::size_t> step_;
};

}  // namespace tadpole
