#include <gtest/gtest.h>

#include "tadpole/adversaries.hpp"
#include "tadpole/offline.hpp"
#include "tadpole/strategies.hpp"

using namespace tadpole;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

// walks agent 1 `steps` nodes down the path, then sends agent 2 towards c3; afterwards both chase unvisited nodes
class PathThenCorner : public StrategyPolicy {
 public:
  explicit PathThenCorner(std::size_t steps) : steps_(steps) {}
  std::vector<Command> decide(const Knowledge& world, RandomStream&) override {
    std::vector<Command> out(world.agent_count());
    if (world.agent(0).moving) return out;
    if (walked_ < steps_) {
      out[0] = Command::traverse(*world.find("p" + std::to_string(++walked_)));
      return out;
    }
    if (!sent_) {
      sent_ = true;
      out[1] = Command::traverse(*world.find("c3"));
      return out;
    }
    std::vector<NodeId> open;
    for (NodeId v = 0; v < world.node_count(); ++v)
      if (!world.visited(v)) open.push_back(v);
    out[0] = Command::toward(open.empty() ? world.home() : open.front());
    out[1] = Command::toward(open.empty() ? world.home() : open.back());
    return out;
  }

 private:
  std::size_t steps_;
  std::size_t walked_ = 0;
  bool sent_ = false;
};

}  // namespace

TEST(Gadgets, AleLowerBoundTadpole) {
  auto g = make_ale_lb_tadpole(R(1, 4));
  EXPECT_EQ(g.shape(), Shape::Tadpole);
  EXPECT_EQ(max_distance_from_start(g), R(1));
  EXPECT_THROW(make_ale_lb_tadpole(R(1, 2)), BadParams);
  EXPECT_THROW(make_ale_lb_tadpole(R(1, 10), 0), BadParams);
  // coarse discretisations keep the optimum; the fine one is certified by a packed plan
  EXPECT_EQ(BruteForce(make_ale_lb_tadpole(R(1, 10), 2)).makespan(3), R(2));
  EXPECT_EQ(BruteForce(make_ale_lb_tadpole(R(1, 100), 2)).makespan(3), R(2));
  auto fine = make_ale_lb_tadpole(R(1, 10));
  auto plan = packed_plan(fine, 3);
  EXPECT_EQ(certify_plan(fine, plan, 3), R(2));
}

TEST(Gadgets, EnergyLowerBoundCycle) {
  auto g = make_energy_lb_cycle(R(1, 100));
  auto t = explore("ale-cycle", g, 2, 0);
  EXPECT_EQ(cost_energy(t), R(3));
  EXPECT_EQ(opt_cycle(g), R(101, 50));
  EXPECT_EQ(competitive_ratio(cost_energy(t), opt_cycle(g)), R(150, 101));
  EXPECT_THROW(make_energy_lb_cycle(R(1, 2)), BadParams);
}

TEST(Gadgets, RatioExample) {
  auto g = make_2_5_example(R(1, 10));
  EXPECT_EQ(g.node_count(), 30u);
  EXPECT_EQ(offline_optimum(g, 2).makespan, R(2));
  EXPECT_EQ(BruteForce(make_2_5_example(R(1, 3))).makespan(2), R(2));
  EXPECT_EQ(cost_energy(explore("amp-tad3", g, 3, 0)), R(2));
  EXPECT_THROW(make_2_5_example(R(2, 7)), BadParams);
  EXPECT_THROW(make_2_5_example(R(1)), BadParams);
}

TEST(TimeAdversary, LongSideAgainstTadpoleStrategies) {
  for (auto [name, k] : {std::pair<const char*, std::size_t>{"amp-tad2", 2}, {"amp-tad3", 3}, {"amp-tad4", 4}}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto oracle = make_time_lb_adaptive(100);
      auto t = explore(name, oracle, k, seed);
      auto g = t.graph;
      EXPECT_EQ(g.shape(), Shape::Tadpole);
      auto opt = offline_optimum(g, k).makespan;
      auto ratio = competitive_ratio(cost_time(t), opt);
      ASSERT_TRUE(oracle.long_side().has_value());
      if (*oracle.long_side()) {
        EXPECT_EQ(opt, R(2));
        EXPECT_GE(ratio, R(3, 2) - R(3, 200)) << name;
      } else {
        EXPECT_GE(ratio, R(3, 2)) << name;
      }
    }
  }
}

TEST(TimeAdversary, ShortSideWhenCornerIsEnteredEarly) {
  for (std::size_t steps : {0u, 5u, 40u}) {
    auto oracle = make_time_lb_adaptive(100);
    PathThenCorner policy(steps);
    auto t = run(policy, oracle, 2, 0);
    ASSERT_EQ(oracle.long_side(), std::optional<bool>(false));
    EXPECT_EQ(*oracle.corner(), steps + 1);
    // c3 sits two epsilon beyond the last path node walked
    EXPECT_EQ(offline_optimum(t.graph, 2).makespan, 2 * R(steps + 2, 100));
  }
}

TEST(TimeAdversary, ReplayOfOptimalPlanOnCommittedGraph) {
  auto oracle = make_time_lb_adaptive(20);
  auto t = explore("amp-tad4", oracle, 4, 0);
  auto plan = packed_plan(t.graph, 2);
  EXPECT_EQ(certify_plan(t.graph, plan, 2), R(2));
  ReplayPolicy replay(plan_labels(t.graph, plan));
  StaticOracle fixed(t.graph);
  EXPECT_EQ(cost_time(run(replay, fixed, 2, 0)), R(2));
}

TEST(TimeAdversary, Params) {
  EXPECT_THROW(make_time_lb_adaptive(3), BadParams);
  EXPECT_THROW(make_ntad_lb(1, 100), BadParams);
  auto oracle = make_ntad_lb(2, 100);
  auto g = oracle.finalize();
  EXPECT_EQ(g.tail_count(), 2u);
  EXPECT_EQ(g.shape(), Shape::NTadpole);
  EXPECT_EQ(g.tails_length(), R(1, 100));
}

TEST(TimeAdversary, NTailVariant) {
  auto oracle = make_ntad_lb(2, 100);
  auto t = explore("ntad-nplus2", oracle, 4, 0);
  EXPECT_EQ(t.graph.tail_count(), 2u);
  auto opt = offline_optimum(t.graph, 4).makespan;
  EXPECT_GE(competitive_ratio(cost_time(t), opt), R(3, 2) - R(3, 200));
}

TEST(EnergyAdversary, TwoAgentStrategies) {
  const Rational eps = R(1, 10);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto oracle = make_energy_lb_adaptive(eps);
    auto t = explore("amp-tad2", oracle, 2, seed);
    EXPECT_EQ(t.graph.shape(), Shape::Tadpole);
    EXPECT_EQ(BruteForce(t.graph).makespan(2), R(4));
    EXPECT_GE(cost_energy(t), 6 - 2 * eps);
    EXPECT_GE(competitive_ratio(cost_energy(t), R(4)), R(29, 20));
  }
}

TEST(EnergyAdversary, CommitsConsistently) {
  auto oracle = make_energy_lb_adaptive(R(1, 4));
  oracle.reveal("s");
  auto a = oracle.reveal("x2");
  EXPECT_EQ(a[1].weight, R(1, 4));
  auto deep = oracle.reveal("y2");
  EXPECT_EQ(deep[1].neighbor, "y3");
  EXPECT_EQ(oracle.tail_branch(), std::optional<std::size_t>(1));
  auto g = oracle.finalize();
  EXPECT_EQ(g.edge(*g.edge_between(g.node("x1"), g.node("y1"))).weight, R(5, 4));
  EXPECT_THROW(make_energy_lb_adaptive(R(1, 10), R(8)), BadParams);
  EXPECT_THROW(make_energy_lb_adaptive(R(1)), BadParams);
}
