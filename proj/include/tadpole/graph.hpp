#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tadpole/errors.hpp"
#include "tadpole/rational.hpp"

namespace tadpole {

using NodeId = std::size_t;

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  Rational weight;

  NodeId other(NodeId v) const { return v == a ? b : a; }
};

struct Link {
  NodeId to = 0;
  std::size_t edge = 0;
};

struct Tail {
  NodeId attach = 0;
  std::vector<NodeId> nodes;       // outward from the attach node, back() is the tail end
  std::vector<std::size_t> edges;  // edges[0] joins attach and nodes[0]
  Rational length;
};

enum class Shape { Cycle, Tadpole, NTadpole };

// A cycle with zero or more path-shaped tails hanging off cycle nodes.
// Immutable once built; every constructor path validates the shape.
class WeightedGraph {
 public:
  static WeightedGraph from_edges(std::vector<std::string> labels, std::vector<Edge> edges, NodeId start) {
    WeightedGraph g;
    g.labels_ = std::move(labels);
    g.edges_ = std::move(edges);
    g.start_ = start;
    g.index_labels();
    g.build_adjacency();
    g.find_structure();
    return g;
  }

  std::size_t node_count() const { return labels_.size(); }
  const std::string& label(NodeId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<NodeId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  NodeId node(std::string_view label) const {
    if (auto v = find(label)) return *v;
    throw UnknownNode("unknown node '" + std::string(label) + "'");
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Link>& links(NodeId v) const { return adj_.at(v); }
  std::size_t degree(NodeId v) const { return adj_.at(v).size(); }

  std::optional<std::size_t> edge_between(NodeId u, NodeId v) const {
    for (const Link& l : adj_.at(u))
      if (l.to == v) return l.edge;
    return std::nullopt;
  }

  NodeId start() const { return start_; }
  WeightedGraph with_start(NodeId s) const {
    if (s >= node_count()) throw UnknownNode("start node out of range");
    WeightedGraph g = *this;
    g.start_ = s;
    return g;
  }
  WeightedGraph with_start(std::string_view label) const { return with_start(node(label)); }

  std::size_t tail_count() const { return tails_.size(); }
  Shape shape() const {
    if (tails_.empty()) return Shape::Cycle;
    return tails_.size() == 1 ? Shape::Tadpole : Shape::NTadpole;
  }

  // cycle()[k] and cycle()[k+1 mod m] are joined by cycle_edges()[k]
  const std::vector<NodeId>& cycle() const { return cycle_; }
  const std::vector<std::size_t>& cycle_edges() const { return cycle_edges_; }
  const std::vector<Tail>& tails() const { return tails_; }

  bool on_cycle(NodeId v) const { return cycle_pos_.at(v).has_value(); }
  std::optional<std::size_t> cycle_position(NodeId v) const { return cycle_pos_.at(v); }
  // (tail index, position along the tail starting at 0)
  std::optional<std::pair<std::size_t, std::size_t>> tail_position(NodeId v) const { return tail_pos_.at(v); }

  Rational cycle_length() const {
    Rational sum = 0;
    for (auto e : cycle_edges_) sum += edges_[e].weight;
    return sum;
  }
  Rational tails_length() const {
    Rational sum = 0;
    for (const auto& t : tails_) sum += t.length;
    return sum;
  }
  Rational total_weight() const { return cycle_length() + tails_length(); }

  friend bool operator==(const WeightedGraph& x, const WeightedGraph& y) {
    if (x.labels_ != y.labels_ || x.start_ != y.start_ || x.edges_.size() != y.edges_.size()) return false;
    return x.edge_key() == y.edge_key();
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Link>> adj_;
  NodeId start_ = 0;
  std::vector<NodeId> cycle_;
  std::vector<std::size_t> cycle_edges_;
  std::vector<Tail> tails_;
  std::vector<std::optional<std::size_t>> cycle_pos_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> tail_pos_;

  std::vector<std::tuple<NodeId, NodeId, Rational>> edge_key() const {
    std::vector<std::tuple<NodeId, NodeId, Rational>> key;
    for (const auto& e : edges_) key.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b), e.weight);
    std::sort(key.begin(), key.end());
    return key;
  }

  void index_labels() {
    for (NodeId v = 0; v < labels_.size(); ++v) {
      if (labels_[v].empty()) throw InvalidGraph("empty node label");
      if (!index_.emplace(labels_[v], v).second) throw InvalidGraph("duplicate node label '" + labels_[v] + "'");
    }
    if (start_ >= labels_.size()) throw UnknownNode("start node out of range");
  }

  void build_adjacency() {
    adj_.assign(labels_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.a >= labels_.size() || ed.b >= labels_.size()) throw InvalidGraph("edge endpoint out of range");
      if (ed.a == ed.b) throw InvalidGraph("self loop at '" + labels_[ed.a] + "'");
      if (ed.weight <= 0)
        throw NonpositiveWeight("edge " + labels_[ed.a] + "-" + labels_[ed.b] + " has weight " + to_string(ed.weight));
      for (const Link& l : adj_[ed.a])
        if (l.to == ed.b) throw InvalidGraph("parallel edges between '" + labels_[ed.a] + "' and '" + labels_[ed.b] + "'");
      adj_[ed.a].push_back({ed.b, e});
      adj_[ed.b].push_back({ed.a, e});
    }
  }

  void find_structure() {
    const std::size_t n = labels_.size();
    if (n < 3) throw EmptyOrTooShort("a cycle needs at least 3 nodes");
    if (edges_.size() != n) throw InvalidGraph("expected exactly one cycle (|E| = |V|)");

    // connectivity
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const Link& l : adj_[v])
        if (!seen[l.to]) {
          seen[l.to] = true;
          ++reached;
          stack.push_back(l.to);
        }
    }
    if (reached != n) throw InvalidGraph("graph is not connected");

    // peel leaves; what survives is the cycle
    std::vector<std::size_t> deg(n);
    std::vector<bool> peeled(n, false);
    std::vector<NodeId> leaves;
    for (NodeId v = 0; v < n; ++v) {
      deg[v] = adj_[v].size();
      if (deg[v] == 1) leaves.push_back(v);
    }
    while (!leaves.empty()) {
      NodeId v = leaves.back();
      leaves.pop_back();
      peeled[v] = true;
      for (const Link& l : adj_[v])
        if (!peeled[l.to] && --deg[l.to] == 1) leaves.push_back(l.to);
    }
    for (NodeId v = 0; v < n; ++v)
      if (!peeled[v] && deg[v] != 2) throw InvalidGraph("core is not a simple cycle");
    for (NodeId v = 0; v < n; ++v)
      if (peeled[v] && adj_[v].size() > 2) throw InvalidGraph("tail node '" + labels_[v] + "' branches");

    cycle_pos_.assign(n, std::nullopt);
    tail_pos_.assign(n, std::nullopt);

    NodeId first = 0;
    while (peeled[first]) ++first;
    // walk towards the smaller-id cycle neighbour so builder labels run c0, c1, ...
    std::optional<NodeId> towards;
    for (const Link& l : adj_[first])
      if (!peeled[l.to] && (!towards || l.to < *towards)) towards = l.to;
    NodeId prev = first, cur = *towards;
    cycle_.push_back(first);
    cycle_edges_.push_back(*edge_between(first, cur));
    while (cur != first) {
      cycle_.push_back(cur);
      NodeId next = cur;
      for (const Link& l : adj_[cur])
        if (!peeled[l.to] && l.to != prev) {
          next = l.to;
          cycle_edges_.push_back(l.edge);
          break;
        }
      prev = cur;
      cur = next;
    }
    for (std::size_t k = 0; k < cycle_.size(); ++k) cycle_pos_[cycle_[k]] = k;

    // tails, ordered by their first node id so builder numbering is preserved
    std::vector<std::pair<NodeId, NodeId>> roots;  // (first tail node, attach)
    for (NodeId c : cycle_)
      for (const Link& l : adj_[c])
        if (peeled[l.to]) roots.emplace_back(l.to, c);
    std::sort(roots.begin(), roots.end());
    for (auto [head, attach] : roots) {
      Tail t;
      t.attach = attach;
      NodeId from = attach, at = head;
      while (true) {
        t.nodes.push_back(at);
        std::size_t e = *edge_between(from, at);
        t.edges.push_back(e);
        t.length += edges_[e].weight;
        std::optional<NodeId> onward;
        for (const Link& l : adj_[at])
          if (l.to != from) onward = l.to;
        if (!onward) break;
        from = at;
        at = *onward;
      }
      for (std::size_t j = 0; j < t.nodes.size(); ++j) tail_pos_[t.nodes[j]] = std::make_pair(tails_.size(), j);
      tails_.push_back(std::move(t));
    }
  }
};

struct TailSpec {
  std::size_t attach_index = 0;
  std::vector<Rational> weights;
};

namespace detail {

inline void require_positive(const std::vector<Rational>& ws) {
  for (const auto& w : ws)
    if (w <= 0) throw NonpositiveWeight("weight " + to_string(w) + " is not positive");
}

// one tail: t1..tj, several: t<i>_<j>
inline std::string tail_label(std::size_t tail_count, std::size_t i, std::size_t j) {
  if (tail_count == 1) return "t" + std::to_string(j + 1);
  return "t" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

}  // namespace detail

inline WeightedGraph build_n_tadpole(const std::vector<Rational>& cycle_weights, const std::vector<TailSpec>& tails,
                                     std::string_view start = "c0") {
  if (cycle_weights.size() < 3) throw EmptyOrTooShort("a cycle needs at least 3 weights");
  detail::require_positive(cycle_weights);
  const std::size_t m = cycle_weights.size();
  for (const auto& t : tails) {
    if (t.weights.empty()) throw EmptyTail("tail has no edges");
    if (t.attach_index >= m)
      throw BadAttachIndex("attach index " + std::to_string(t.attach_index) + " outside cycle of " + std::to_string(m));
    detail::require_positive(t.weights);
  }

  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < m; ++k) labels.push_back("c" + std::to_string(k));
  for (std::size_t k = 0; k < m; ++k) edges.push_back({k, (k + 1) % m, cycle_weights[k]});
  for (std::size_t i = 0; i < tails.size(); ++i) {
    NodeId prev = tails[i].attach_index;
    for (std::size_t j = 0; j < tails[i].weights.size(); ++j) {
      NodeId v = labels.size();
      labels.push_back(detail::tail_label(tails.size(), i, j));
      edges.push_back({prev, v, tails[i].weights[j]});
      prev = v;
    }
  }
  auto it = std::find(labels.begin(), labels.end(), std::string(start));
  if (it == labels.end()) throw UnknownNode("unknown start node '" + std::string(start) + "'");
  return WeightedGraph::from_edges(std::move(labels), std::move(edges), static_cast<NodeId>(it - labels.begin()));
}

inline WeightedGraph build_cycle(const std::vector<Rational>& weights) { return build_n_tadpole(weights, {}); }

inline WeightedGraph build_tadpole(const std::vector<Rational>& cycle_weights, std::size_t attach_index,
                                   const std::vector<Rational>& tail_weights, std::string_view start = "c0") {
  return build_n_tadpole(cycle_weights, {TailSpec{attach_index, tail_weights}}, start);
}

// Single-source shortest distances (Dijkstra, exact).
namespace detail {

// Edge weights times the common denominator, when that and the total weight stay far below int64 overflow.
struct ScaledWeights {
  std::vector<std::int64_t> weights;  // indexed by edge id
  std::int64_t scale = 1;
};

inline std::optional<ScaledWeights> scale_to_integers(const WeightedGraph& g) {
  constexpr std::int64_t limit = std::int64_t{1} << 56;
  ScaledWeights out;
  for (const auto& e : g.edges()) {
    const BigInt& den = boost::multiprecision::denominator(e.weight);
    if (den > limit) return std::nullopt;
    const auto d = static_cast<std::int64_t>(den);
    const std::int64_t step = d / std::gcd(out.scale, d);
    if (out.scale > limit / step) return std::nullopt;
    out.scale *= step;
  }
  std::int64_t total = 0;
  for (const auto& e : g.edges()) {
    const BigInt scaled = boost::multiprecision::numerator(e.weight) * (out.scale / boost::multiprecision::denominator(e.weight));
    if (scaled > limit - total) return std::nullopt;
    out.weights.push_back(static_cast<std::int64_t>(scaled));
    total += out.weights.back();
  }
  return out;
}

template <class T>
std::vector<T> dijkstra(const WeightedGraph& g, NodeId source, const std::function<T(std::size_t)>& weight) {
  const std::size_t n = g.node_count();
  std::vector<T> dist(n);
  std::vector<bool> reached(n, false);
  using Item = std::pair<T, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  reached[source] = true;
  pq.emplace(T(0), source);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != dist[v]) continue;
    for (const Link& l : g.links(v)) {
      T nd = d + weight(l.edge);
      if (!reached[l.to] || nd < dist[l.to]) {
        reached[l.to] = true;
        dist[l.to] = nd;
        pq.emplace(nd, l.to);
      }
    }
  }
  return dist;
}

}  // namespace detail

inline std::vector<Rational> distances_from(const WeightedGraph& g, NodeId source) {
  return detail::dijkstra<Rational>(g, source, [&](std::size_t e) { return g.edge(e).weight; });
}

inline Rational shortest_distance(const WeightedGraph& g, NodeId u, NodeId v) {
  if (u >= g.node_count() || v >= g.node_count()) throw UnknownNode("node id out of range");
  return distances_from(g, u)[v];
}

inline Rational shortest_distance(const WeightedGraph& g, std::string_view u, std::string_view v) {
  return shortest_distance(g, g.node(u), g.node(v));
}

inline Rational max_distance_from_start(const WeightedGraph& g) {
  if (auto scaled = detail::scale_to_integers(g)) {
    auto d = detail::dijkstra<std::int64_t>(g, g.start(), [&](std::size_t e) { return scaled->weights[e]; });
    return Rational(*std::max_element(d.begin(), d.end()), scaled->scale);
  }
  auto d = distances_from(g, g.start());
  return *std::max_element(d.begin(), d.end());
}

struct CycleGeometry {
  NodeId reference = 0;
  Rational cycle_length;
  bool midpoint_on_node = false;
  NodeId v_mid = 0;            // meaningful when midpoint_on_node
  std::size_t e_mid = 0;       // meaningful otherwise
  Rational mid_offset;         // distance from v_long to the midpoint along e_mid
  NodeId v_long = 0;
  NodeId v_short = 0;
  Rational d_long;
  Rational d_short;
  Rational l_mid;              // 0 when the midpoint is a node
  std::size_t e_max = 0;
  Rational l_max;
  Rational d_i;                // start to intersection (to the reference when n != 1)
  Rational d_t;                // intersection (or tail start) to tail end
};

// Midpoint analysis with respect to an explicit cycle node.
inline CycleGeometry cycle_geometry(const WeightedGraph& g, NodeId reference) {
  auto pos = g.cycle_position(reference);
  if (!pos) throw InvalidGraph("geometry reference '" + g.label(reference) + "' is not on the cycle");
  const auto& cyc = g.cycle();
  const auto& ced = g.cycle_edges();
  const std::size_t m = cyc.size();

  CycleGeometry geo;
  geo.reference = reference;
  geo.cycle_length = g.cycle_length();
  const Rational half = geo.cycle_length / 2;

  for (std::size_t k = 0; k < m; ++k)
    if (k == 0 || g.edge(ced[k]).weight > geo.l_max) {
      geo.e_max = ced[k];
      geo.l_max = g.edge(ced[k]).weight;
    }

  // walk forward (increasing cycle position) from the reference
  Rational along = 0;
  for (std::size_t j = 0; j < m; ++j) {
    NodeId here = cyc[(*pos + j) % m];
    std::size_t e = ced[(*pos + j) % m];
    NodeId there = cyc[(*pos + j + 1) % m];
    Rational w = g.edge(e).weight;
    if (along == half) {
      geo.midpoint_on_node = true;
      geo.v_mid = geo.v_long = geo.v_short = here;
      geo.d_long = geo.d_short = half;
      geo.l_mid = 0;
      break;
    }
    if (along < half && half < along + w) {
      Rational forward = along;                           // reference to `here`
      Rational backward = geo.cycle_length - along - w;   // reference to `there`, other way round
      geo.e_mid = e;
      geo.l_mid = w;
      if (forward >= backward) {
        geo.v_long = here, geo.d_long = forward;
        geo.v_short = there, geo.d_short = backward;
        geo.mid_offset = half - forward;
      } else {
        geo.v_long = there, geo.d_long = backward;
        geo.v_short = here, geo.d_short = forward;
        geo.mid_offset = half - backward;
      }
      break;
    }
    along += w;
  }

  auto dist = distances_from(g, g.start());
  geo.d_i = g.tail_count() == 1 ? dist[g.tails().front().attach] : dist[reference];
  if (g.tail_count() == 1) {
    const Tail& t = g.tails().front();
    if (g.on_cycle(g.start())) {
      geo.d_t = t.length;
    } else {
      geo.d_t = dist[t.nodes.back()];
    }
  }
  return geo;
}

// Reference is the start when it lies on the cycle, otherwise the attach node of its tail.
inline CycleGeometry cycle_geometry(const WeightedGraph& g) {
  NodeId s = g.start();
  if (g.on_cycle(s)) return cycle_geometry(g, s);
  auto tp = g.tail_position(s);
  return cycle_geometry(g, g.tails()[tp->first].attach);
}

// Text format:
//   cycle w1 ... wm
//   tail <attach_index> w1 ... wj     (repeatable)
//   start <label>
// '#' starts a comment; ';' may stand in for a newline.
inline WeightedGraph parse_graph(std::string_view text) {
  std::optional<std::vector<Rational>> cycle;
  std::vector<TailSpec> tails;
  std::string start = "c0";
  bool have_start = false;

  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ';', '\n');
  std::istringstream lines(normalized);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) { throw ParseError("line " + std::to_string(lineno) + ": " + why); };

  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    std::vector<std::string> args;
    for (std::string w; words >> w;) args.push_back(w);

    auto weights_from = [&](std::size_t first) {
      std::vector<Rational> ws;
      for (std::size_t i = first; i < args.size(); ++i) {
        try {
          ws.push_back(parse_rational(args[i]));
        } catch (const ParseError& e) {
          fail(e.what());
        }
      }
      return ws;
    };

    if (keyword == "cycle") {
      if (cycle) fail("duplicate 'cycle' line");
      cycle = weights_from(0);
    } else if (keyword == "tail") {
      if (args.empty()) fail("'tail' needs an attach index");
      if (!detail::all_digits(args[0]) || args[0].size() > 9) fail("bad attach index '" + args[0] + "'");
      const std::size_t idx = std::stoul(args[0]);
      tails.push_back({idx, weights_from(1)});
    } else if (keyword == "start") {
      if (args.size() != 1) fail("'start' takes exactly one label");
      if (have_start) fail("duplicate 'start' line");
      start = args[0];
      have_start = true;
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
  }
  if (!cycle) throw ParseError("missing 'cycle' line");
  return build_n_tadpole(*cycle, tails, start);
}

inline WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

// Emits the text format with canonical labels; the cycle is written from cycle()[0].
inline std::string serialize_graph(const WeightedGraph& g, std::string_view line_break = "\n") {
  std::ostringstream out;
  out << "cycle";
  for (auto e : g.cycle_edges()) out << ' ' << to_string(g.edge(e).weight);
  out << line_break;
  for (const Tail& t : g.tails()) {
    out << "tail " << *g.cycle_position(t.attach);
    for (auto e : t.edges) out << ' ' << to_string(g.edge(e).weight);
    out << line_break;
  }
  NodeId s = g.start();
  std::string start_label;
  if (auto p = g.cycle_position(s)) {
    start_label = "c" + std::to_string(*p);
  } else {
    auto [i, j] = *g.tail_position(s);
    start_label = detail::tail_label(g.tail_count(), i, j);
  }
  out << "start " << start_label << line_break;
  return out.str();
}

}  // namespace tadpole
