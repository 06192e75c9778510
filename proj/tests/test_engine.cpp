#include <gtest/gtest.h>

#include <set>

#include "tadpole/engine.hpp"
#include "tadpole/strategies.hpp"

using namespace tadpole;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

// sends agent 0 to a fixed label on the first decision
class JumpPolicy : public StrategyPolicy {
 public:
  explicit JumpPolicy(std::string label) : label_(std::move(label)) {}
  std::vector<Command> decide(const Knowledge& world, RandomStream&) override {
    std::vector<Command> out(world.agent_count());
    NodeId target = 1000;
    if (auto v = world.find(label_)) target = *v;
    out[0] = Command::traverse(target);
    return out;
  }

 private:
  std::string label_;
};

class IdlePolicy : public StrategyPolicy {
 public:
  std::vector<Command> decide(const Knowledge& world, RandomStream&) override {
    return std::vector<Command>(world.agent_count());
  }
};

// bounces agent 0 between home and its first neighbour forever
class PingPong : public StrategyPolicy {
 public:
  std::vector<Command> decide(const Knowledge& world, RandomStream&) override {
    std::vector<Command> out(world.agent_count());
    const auto& a = world.agent(0);
    out[0] = Command::traverse(a.at == world.home() ? world.links(world.home()).front().to : world.home());
    return out;
  }
};

// reveals c1 with a different weight than c0 announced
class LyingOracle : public RevelationOracle {
 public:
  std::string start() override { return "c0"; }
  std::vector<RevealedEdge> reveal(const std::string& node) override {
    if (node == "c0") return {{"c1", R(1)}, {"c2", R(1)}};
    if (node == "c1") return {{"c0", R(2)}, {"c2", R(1)}};
    return {{"c0", R(1)}, {"c1", R(1)}};
  }
  WeightedGraph finalize() override { return build_cycle({R(1), R(1), R(1)}); }
  std::size_t declared_tails() const override { return 0; }
  Rational weight_bound() const override { return 3; }
};

// answers consistently but finalizes to a different graph
class SwappingOracle : public RevelationOracle {
 public:
  std::string start() override { return inner_.start(); }
  std::vector<RevealedEdge> reveal(const std::string& node) override { return inner_.reveal(node); }
  WeightedGraph finalize() override { return build_cycle({R(1), R(1), R(2)}); }
  std::size_t declared_tails() const override { return 0; }
  Rational weight_bound() const override { return 4; }

 private:
  StaticOracle inner_{build_cycle({R(1), R(1), R(1)})};
};

void expect_kinematics(const Trace& t) {
  std::map<std::size_t, TraceEvent> departs;
  for (const auto& e : t.events) {
    if (e.kind == EventKind::Depart) departs[e.agent] = e;
    if (e.kind == EventKind::Arrive) {
      ASSERT_TRUE(departs.count(e.agent));
      const auto& d = departs[e.agent];
      EXPECT_EQ(e.time, d.time + *d.weight);
      EXPECT_EQ(e.from, d.from);
      EXPECT_EQ(e.to, d.to);
      departs.erase(e.agent);
    }
  }
  EXPECT_TRUE(departs.empty());
  Rational last = 0;
  for (const auto& e : t.events) {
    EXPECT_GE(e.time, last);
    last = e.time;
  }
}

}  // namespace

TEST(Engine, AmpUnevenTriangle) {
  auto g = build_cycle({R(1), R(1), R(2)});
  auto t = explore("amp", g, 2, 0);
  EXPECT_EQ(cost_time(t), R(5));
  std::multiset<Rational> d(t.distances.begin(), t.distances.end());
  EXPECT_EQ(d, (std::multiset<Rational>{R(2), R(4)}));
  EXPECT_EQ(cost_energy(t), R(4));
  EXPECT_EQ(t.first_visit.size(), 3u);
  expect_kinematics(t);
}

TEST(Engine, AleEnergyGadget) {
  auto g = build_cycle({R(5, 4), R(1), R(3, 4)});
  auto t = explore("ale-cycle", g, 2, 0);
  std::multiset<Rational> d(t.distances.begin(), t.distances.end());
  EXPECT_EQ(d, (std::multiset<Rational>{R(0), R(3)}));
  EXPECT_EQ(cost_time(t), R(3));
  EXPECT_EQ(cost_energy(t), R(3));
  expect_kinematics(t);
}

TEST(Engine, NoAgents) {
  StaticOracle o(build_cycle({R(1), R(1), R(1)}));
  IdlePolicy p;
  SeededStream rng(1);
  EXPECT_THROW(run(p, o, 0, rng), NoAgents);
  EXPECT_THROW(explore("amp", build_cycle({R(1), R(1), R(1)}), 0, 0), NoAgents);
}

TEST(Engine, IllegalCommand) {
  StaticOracle o(build_cycle({R(1), R(1), R(1), R(1)}));
  SeededStream rng(1);
  JumpPolicy far("c2");
  EXPECT_THROW(run(far, o, 1, rng), IllegalCommand);
}

TEST(Engine, StallAndLivelock) {
  SeededStream rng(1);
  StaticOracle o(build_cycle({R(1), R(1), R(1)}));
  IdlePolicy idle;
  EXPECT_THROW(run(idle, o, 2, rng), NonTermination);
  PingPong pp;
  EXPECT_THROW(run(pp, o, 1, rng), NonTermination);
}

TEST(Engine, OracleInconsistency) {
  SeededStream rng(1);
  LyingOracle liar;
  auto p = make_policy("amp", 2, 0);
  EXPECT_THROW(run(*p, liar, 2, rng), OracleInconsistency);
  SwappingOracle swapper;
  auto q = make_policy("amp", 2, 0);
  EXPECT_THROW(run(*q, swapper, 2, rng), OracleInconsistency);
}

TEST(Engine, CompetitiveRatio) {
  EXPECT_EQ(competitive_ratio(R(3), R(2)), R(3, 2));
  EXPECT_EQ(competitive_ratio(R(5, 2), R(5, 2)), R(1));
  EXPECT_EQ(competitive_ratio(R(3), R(5, 2)), R(6, 5));
  EXPECT_THROW(competitive_ratio(R(3), R(0)), ZeroOptimum);
}

TEST(Engine, EmptyTraceCostsNothing) {
  Trace t;
  EXPECT_EQ(cost_time(t), R(0));
  EXPECT_EQ(cost_energy(t), R(0));
}

TEST(Engine, DeterministicCsv) {
  auto g = build_tadpole({R(3, 2), R(1), R(2), R(5, 3)}, 2, {R(1), R(7, 4)}, "c1");
  for (const auto& name : {"amp-tad2", "ale-tad3", "amp-tad4"}) {
    std::size_t k = std::string(name) == "amp-tad4" ? 4 : std::string(name) == "ale-tad3" ? 3 : 2;
    auto a = trace_csv(explore(name, g, k, 42));
    auto b = trace_csv(explore(name, g, k, 42));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.substr(0, a.find('\n')), "time,agent,kind,from,to,edge_weight,agent_total_distance");
  }
}

TEST(Engine, TerminalConditionAndRevelation) {
  auto g = build_tadpole({R(1), R(2), R(3)}, 1, {R(2), R(1)}, "t1");
  auto t = explore("amp-tad3", g, 3, 1);
  EXPECT_EQ(t.first_visit.size(), g.node_count());
  // every agent ends at home
  std::map<std::size_t, std::string> where;
  for (const auto& e : t.events)
    if (e.kind == EventKind::Arrive) where[e.agent] = e.to;
  for (const auto& [agent, node] : where) {
    EXPECT_EQ(node, "t1") << agent;
  }
  // nobody departs towards a node whose edge was not yet revealed: departures only leave visited nodes
  for (const auto& e : t.events) {
    if (e.kind == EventKind::Depart) {
      EXPECT_LE(t.first_visit.at(e.from), e.time);
    }
  }
  expect_kinematics(t);
}

TEST(Engine, WaitEventsPair) {
  auto g = build_tadpole({R(1), R(1), R(1)}, 1, {R(1)});
  auto t = explore("amp-tad3", g, 3, 0);
  std::map<std::size_t, int> open;
  for (const auto& e : t.events) {
    if (e.kind == EventKind::WaitBegin) {
      EXPECT_EQ(open[e.agent]++, 0);
    } else if (e.kind == EventKind::WaitEnd) {
      EXPECT_EQ(open[e.agent]--, 1);
    } else if (e.kind == EventKind::Depart) {
      EXPECT_EQ(open[e.agent], 0);
    }
  }
  std::size_t done = 0;
  for (const auto& e : t.events) done += e.kind == EventKind::Done;
  EXPECT_EQ(done, 3u);
}

TEST(ChoiceEnumeration, VisitsEveryLeaf) {
  std::set<std::vector<std::size_t>> seen;
  bool complete = for_each_choice_sequence(
      [&](ScriptedStream& s) {
        std::size_t a = s.pick(3);
        if (a == 1) s.pick(2);
        seen.insert(s.choices());
      },
      100);
  EXPECT_TRUE(complete);
  EXPECT_EQ(seen.size(), 4u);
  EXPECT_EQ(count_choice_sequences([](ScriptedStream& s) { s.pick(2), s.pick(2), s.pick(2), s.pick(2); }, 8), 9u);
}

TEST(ChoiceEnumeration, SeededStreamInRange) {
  SeededStream s(3);
  for (int i = 0; i < 100; ++i) EXPECT_LT(s.pick(5), 5u);
  EXPECT_EQ(s.pick(1), 0u);
}
