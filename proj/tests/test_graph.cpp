#include <gtest/gtest.h>

#include <random>

#include "tadpole/graph.hpp"

using namespace tadpole;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

std::vector<Rational> unit_weights(std::size_t count, const Rational& w) { return std::vector<Rational>(count, w); }

// both arc lengths from c_from to c_to walking along cycle order; used as an independent check
std::pair<Rational, Rational> arcs(const std::vector<Rational>& ws, std::size_t from, std::size_t to) {
  Rational forward = 0;
  for (std::size_t k = from; k != to; k = (k + 1) % ws.size()) forward += ws[k];
  Rational total = 0;
  for (const auto& w : ws) total += w;
  return {forward, total - forward};
}

std::vector<Rational> random_weights(std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<int> num(1, 20), den(1, 5);
  std::vector<Rational> ws;
  for (std::size_t i = 0; i < count; ++i) ws.push_back(R(num(rng), den(rng)));
  return ws;
}

}  // namespace

TEST(Rational, ParsesExactForms) {
  EXPECT_EQ(parse_rational("7"), R(7));
  EXPECT_EQ(parse_rational("5/4"), R(5, 4));
  EXPECT_EQ(parse_rational("0.125"), R(1, 8));
  EXPECT_EQ(parse_rational("-.5"), R(-1, 2));
  EXPECT_EQ(parse_rational("6/4"), R(3, 2));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(to_string(R(6, 4)), "3/2");
  EXPECT_EQ(to_string(R(4, 2)), "2");
}

TEST(BuildCycle, SumsWeights) {
  auto g = build_cycle({R(1), R(1), R(2)});
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.cycle_length(), R(4));
  EXPECT_EQ(g.shape(), Shape::Cycle);
  EXPECT_EQ(g.label(g.start()), "c0");
}

TEST(BuildCycle, EnergyGadgetLength) {
  auto g = build_cycle({R(5, 4), R(1), R(3, 4)});
  EXPECT_EQ(g.cycle_length(), R(3));
}

TEST(BuildCycle, Rejects) {
  EXPECT_THROW(build_cycle({R(1), R(0)}), EmptyOrTooShort);
  EXPECT_THROW(build_cycle({R(1), R(0), R(1)}), NonpositiveWeight);
  EXPECT_THROW(build_cycle({R(1), R(-1), R(1)}), NonpositiveWeight);
  EXPECT_THROW(build_cycle({}), EmptyOrTooShort);
}

TEST(BuildTadpole, UnitTadpole) {
  auto g = build_tadpole({R(1), R(1), R(1)}, 1, {R(1)});
  EXPECT_EQ(g.shape(), Shape::Tadpole);
  EXPECT_EQ(g.cycle_length(), R(3));
  EXPECT_EQ(g.tails_length(), R(1));
  EXPECT_EQ(g.tails()[0].attach, g.node("c1"));
  EXPECT_EQ(g.tails()[0].nodes.back(), g.node("t1"));
  EXPECT_EQ(g.degree(g.node("c1")), 3u);
  EXPECT_EQ(g.degree(g.node("t1")), 1u);
}

TEST(BuildTadpole, SymmetricExampleDistances) {
  // two s-to-v_m paths of ten 1/10 edges plus a ten-edge tail at s
  auto g = build_tadpole(unit_weights(20, R(1, 10)), 0, unit_weights(10, R(1, 10)));
  auto geo = cycle_geometry(g);
  EXPECT_EQ(geo.d_short, R(1));
  EXPECT_EQ(geo.d_long, R(1));
  EXPECT_EQ(geo.d_t, R(1));
  EXPECT_TRUE(geo.midpoint_on_node);
  EXPECT_EQ(g.label(geo.v_mid), "c10");
}

TEST(BuildTadpole, Rejects) {
  EXPECT_THROW(build_tadpole({R(1), R(1), R(1)}, 99, {R(1)}), BadAttachIndex);
  EXPECT_THROW(build_tadpole({R(1), R(1), R(1)}, 0, {}), EmptyTail);
  EXPECT_THROW(build_tadpole({R(1), R(1), R(1)}, 0, {R(0)}), NonpositiveWeight);
  EXPECT_THROW(build_tadpole({R(1), R(1), R(1)}, 0, {R(1)}, "zz"), UnknownNode);
}

TEST(BuildNTadpole, NoTailsIsCycle) {
  EXPECT_EQ(build_n_tadpole({R(1), R(2), R(3)}, {}), build_cycle({R(1), R(2), R(3)}));
}

TEST(BuildNTadpole, LowerBoundShape) {
  const int J = 100, n = 3;
  const Rational eps = R(1, J), delta = eps / n;
  // s = c0, c0-c1 weight 1 (c1 plays c3), c1-c2 weight 1 (c2 plays c2), then J-3 eps edges back to s
  std::vector<Rational> cycle{R(1), R(1)};
  for (int i = 0; i < J - 3; ++i) cycle.push_back(eps);
  std::vector<TailSpec> tails(n, TailSpec{0, {delta}});
  auto g = build_n_tadpole(cycle, tails);
  EXPECT_EQ(g.shape(), Shape::NTadpole);
  EXPECT_EQ(g.tail_count(), 3u);
  EXPECT_EQ(g.tails_length(), eps);
  EXPECT_EQ(g.degree(g.start()), 5u);
  EXPECT_EQ(g.label(g.tails()[2].nodes[0]), "t3_1");
}

TEST(BuildNTadpole, TwoTailsSameNode) {
  auto g = build_n_tadpole({R(1), R(1), R(1)}, {{1, {R(1)}}, {1, {R(2), R(1)}}});
  EXPECT_EQ(g.degree(g.node("c1")), 4u);
  EXPECT_EQ(g.tails()[1].length, R(3));
  EXPECT_EQ(g.label(g.tails()[1].nodes.back()), "t2_2");
}

TEST(FromEdges, RejectsNonUnicyclic) {
  // a tree
  EXPECT_THROW(WeightedGraph::from_edges({"a", "b", "c"}, {{0, 1, R(1)}, {1, 2, R(1)}}, 0), Error);
  // branching tail
  EXPECT_THROW(WeightedGraph::from_edges({"a", "b", "c", "d", "e", "f"},
                                         {{0, 1, R(1)}, {1, 2, R(1)}, {2, 0, R(1)}, {0, 3, R(1)}, {3, 4, R(1)}, {3, 5, R(1)}},
                                         0),
               InvalidGraph);
  // two cycles sharing nothing but disconnected
  EXPECT_THROW(WeightedGraph::from_edges({"a", "b", "c", "d", "e", "f"},
                                         {{0, 1, R(1)}, {1, 2, R(1)}, {2, 0, R(1)}, {3, 4, R(1)}, {4, 5, R(1)}, {5, 3, R(1)}},
                                         0),
               InvalidGraph);
  EXPECT_THROW(WeightedGraph::from_edges({"a", "a", "c"}, {{0, 1, R(1)}, {1, 2, R(1)}, {2, 0, R(1)}}, 0), InvalidGraph);
}

TEST(Geometry, UnitSquareMidpointOnNode) {
  auto geo = cycle_geometry(build_cycle({R(1), R(1), R(1), R(1)}));
  EXPECT_TRUE(geo.midpoint_on_node);
  EXPECT_EQ(geo.v_mid, 2u);
  EXPECT_EQ(geo.d_long, R(2));
  EXPECT_EQ(geo.d_short, R(2));
  EXPECT_EQ(geo.l_mid, R(0));
}

TEST(Geometry, EnergyGadget) {
  auto g = build_cycle({R(5, 4), R(1), R(3, 4)});
  auto geo = cycle_geometry(g);
  ASSERT_FALSE(geo.midpoint_on_node);
  EXPECT_EQ(geo.e_mid, *g.edge_between(g.node("c1"), g.node("c2")));
  EXPECT_EQ(g.label(geo.v_long), "c1");
  EXPECT_EQ(geo.d_long, R(5, 4));
  EXPECT_EQ(g.label(geo.v_short), "c2");
  EXPECT_EQ(geo.d_short, R(3, 4));
  EXPECT_EQ(geo.e_max, *g.edge_between(g.node("c0"), g.node("c1")));
  EXPECT_EQ(geo.l_max, R(5, 4));
}

TEST(Geometry, MidpointOnNodeWithUnevenWeights) {
  std::vector<Rational> ws{R(1), R(1), R(2)};
  auto g = build_cycle(ws);
  auto geo = cycle_geometry(g);
  auto [fwd, bwd] = arcs(ws, 0, 2);
  EXPECT_EQ(fwd, R(2));
  EXPECT_EQ(bwd, R(2));
  EXPECT_TRUE(geo.midpoint_on_node);
  EXPECT_EQ(g.label(geo.v_mid), "c2");
  EXPECT_EQ(geo.d_long, fwd);
  EXPECT_EQ(geo.d_short, shortest_distance(g, "c0", "c2"));
}

TEST(Geometry, MaxEdgeTieGoesToFirst) {
  auto g = build_cycle({R(1), R(3), R(3), R(1)});
  EXPECT_EQ(cycle_geometry(g).e_max, g.cycle_edges()[1]);
}

TEST(Geometry, TailStartUsesIntersection) {
  auto g = build_tadpole({R(1), R(1), R(1)}, 1, {R(2)}, "t1");
  auto geo = cycle_geometry(g);
  EXPECT_EQ(geo.reference, g.node("c1"));
  EXPECT_EQ(geo.d_i, R(2));
  EXPECT_EQ(geo.d_t, R(0));
  auto mid = cycle_geometry(build_tadpole({R(1), R(1), R(1)}, 1, {R(2), R(3)}, "t1"));
  EXPECT_EQ(mid.d_i, R(2));
  EXPECT_EQ(mid.d_t, R(3));
}

TEST(Distance, Basics) {
  auto g = build_cycle({R(1), R(1), R(2)});
  EXPECT_EQ(shortest_distance(g, "c1", "c1"), R(0));
  EXPECT_EQ(shortest_distance(g, "c0", "c2"), R(2));
  EXPECT_EQ(shortest_distance(g, "c2", "c0"), R(2));
  EXPECT_THROW(shortest_distance(g, "c0", "nope"), UnknownNode);
}

TEST(Distance, EnergyAdaptiveGadget) {
  const Rational eps = R(1, 10);
  // s, x1, u1, u2, x2 around the cycle; x3 and t2 form the tail
  auto g = build_tadpole({1 - eps, eps, R(1000), eps, 1 - eps}, 0, {1 - eps, 1 + eps});
  EXPECT_EQ(shortest_distance(g, "c0", "t2"), R(2));
}

TEST(GeometryProperty, MidpointSplitsCycle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(3, 10);
  for (int trial = 0; trial < 300; ++trial) {
    auto ws = random_weights(rng, size(rng));
    auto g = build_cycle(ws);
    auto geo = cycle_geometry(g);
    EXPECT_LE(geo.d_short, geo.d_long);
    EXPECT_EQ(geo.d_short + geo.d_long + geo.l_mid, g.cycle_length());
    // the midpoint lies exactly halfway round in both directions
    auto dist = distances_from(g, g.start());
    if (geo.midpoint_on_node) {
      EXPECT_EQ(dist[geo.v_mid] * 2, g.cycle_length());
    } else {
      EXPECT_EQ(dist[geo.v_long], geo.d_long);
      EXPECT_EQ(dist[geo.v_short], geo.d_short);
      EXPECT_EQ(geo.d_long + geo.mid_offset, g.cycle_length() / 2);
      EXPECT_EQ(geo.d_short + (geo.l_mid - geo.mid_offset), g.cycle_length() / 2);
    }
    Rational heaviest = 0;
    for (const auto& w : ws) heaviest = std::max(heaviest, w);
    EXPECT_EQ(geo.l_max, heaviest);
  }
}

TEST(GeometryProperty, RotationInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(3, 9);
  for (int trial = 0; trial < 100; ++trial) {
    auto ws = random_weights(rng, size(rng));
    auto original = build_cycle(ws);
    for (std::size_t r = 1; r < ws.size(); ++r) {
      // rotating the weights by r and starting at c0 is the original instance started at c_r
      std::vector<Rational> rotated(ws.begin() + r, ws.end());
      rotated.insert(rotated.end(), ws.begin(), ws.begin() + r);
      auto geo = cycle_geometry(build_cycle(rotated));
      auto expected = cycle_geometry(original.with_start("c" + std::to_string(r)));
      EXPECT_EQ(geo.d_long, expected.d_long);
      EXPECT_EQ(geo.d_short, expected.d_short);
      EXPECT_EQ(geo.l_mid, expected.l_mid);
      EXPECT_EQ(geo.l_max, expected.l_max);
      EXPECT_EQ(geo.midpoint_on_node, expected.midpoint_on_node);
    }
  }
}

TEST(GeometryProperty, TadpoleFarthestNode) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> csize(3, 8), tsize(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    auto cw = random_weights(rng, csize(rng));
    auto tw = random_weights(rng, tsize(rng));
    std::uniform_int_distribution<std::size_t> at(0, cw.size() - 1);
    auto base = build_tadpole(cw, at(rng), tw);
    for (NodeId s = 0; s < base.node_count(); ++s) {
      auto g = base.with_start(s);
      auto geo = cycle_geometry(g);
      auto dist = distances_from(g, s);
      Rational farthest = *std::max_element(dist.begin(), dist.end());
      Rational expected = g.on_cycle(s) ? std::max(Rational(geo.d_i + geo.d_t), geo.d_long)
                                        : std::max(geo.d_t, Rational(geo.d_i + geo.d_long));
      EXPECT_EQ(farthest, expected) << serialize_graph(g);
    }
  }
}

TEST(TextFormat, ParsesComments) {
  auto g = parse_graph("# triangle\ncycle 5/4 1 0.75\nstart c1 # not c0\n");
  EXPECT_EQ(g, build_cycle({R(5, 4), R(1), R(3, 4)}).with_start("c1"));
  auto t = parse_graph("cycle 1 1 1; tail 1 1 2; start t2");
  EXPECT_EQ(t.label(t.start()), "t2");
  EXPECT_EQ(t.tails_length(), R(3));
}

TEST(TextFormat, Errors) {
  EXPECT_THROW(parse_graph("tail 0 1"), ParseError);
  EXPECT_THROW(parse_graph("cycle 1 x 1"), ParseError);
  EXPECT_THROW(parse_graph("cycle 1 1 1\nwheel 3"), ParseError);
  EXPECT_THROW(parse_graph("cycle 1 1 1\ntail 9 1"), BadAttachIndex);
  EXPECT_THROW(parse_graph("cycle 1 1 1\ntail -1 1"), ParseError);
  EXPECT_THROW(parse_graph("cycle 1 1 1\nstart c7"), UnknownNode);
}

TEST(TextFormat, RoundTrip) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> csize(3, 8), tcount(0, 3), tsize(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    auto cw = random_weights(rng, csize(rng));
    std::vector<TailSpec> tails;
    std::uniform_int_distribution<std::size_t> at(0, cw.size() - 1);
    for (std::size_t i = tcount(rng); i > 0; --i) tails.push_back({at(rng), random_weights(rng, tsize(rng))});
    auto base = build_n_tadpole(cw, tails);
    std::uniform_int_distribution<NodeId> pick(0, base.node_count() - 1);
    auto g = base.with_start(pick(rng));
    EXPECT_EQ(parse_graph(serialize_graph(g)), g);
    EXPECT_EQ(parse_graph(serialize_graph(g, ";")), g);
  }
}
