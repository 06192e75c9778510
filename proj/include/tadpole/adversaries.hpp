#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tadpole/engine.hpp"
#include "tadpole/errors.hpp"
#include "tadpole/graph.hpp"
#include "tadpole/rational.hpp"

namespace tadpole {

namespace detail {

inline void require_epsilon(const Rational& eps, const Rational& below) {
  if (eps <= 0 || eps >= below)
    throw BadParams("epsilon " + to_string(eps) + " must lie strictly between 0 and " + to_string(below));
}

// a path of total length `length` cut into equal edges, `per_unit` edges per unit of length (at least one)
inline std::vector<Rational> split_path(const Rational& length, std::size_t per_unit) {
  Rational pieces = length * per_unit;
  BigInt count = boost::multiprecision::numerator(pieces) / boost::multiprecision::denominator(pieces);
  if (Rational(count) < pieces || count == 0) count += 1;
  const auto n = static_cast<std::size_t>(count);
  return std::vector<Rational>(n, length / n);
}

}  // namespace detail

// Edges per unit of path length the gadgets use unless told otherwise: plain epsilon edges, at least ten.
inline std::size_t default_granularity(const Rational& eps) {
  Rational inv = 1 / eps;
  BigInt n = boost::multiprecision::numerator(inv) / boost::multiprecision::denominator(inv);
  if (Rational(n) < inv) n += 1;
  return std::max<std::size_t>(10, static_cast<std::size_t>(n));
}

// s=c0 -(2e)- c1 ~(1-2e)~ far cycle node ~(1)~ s, with a (1-2e) tail at c1. Every path edge is lighter than 2e
// once granularity exceeds 1/(2e).
inline WeightedGraph make_ale_lb_tadpole(const Rational& eps, std::optional<std::size_t> granularity = std::nullopt) {
  detail::require_epsilon(eps, Rational(1, 2));
  const std::size_t g = granularity.value_or(default_granularity(eps));
  if (g == 0) throw BadParams("granularity must be at least 1");
  std::vector<Rational> cycle{2 * eps};
  for (const auto& w : detail::split_path(1 - 2 * eps, g)) cycle.push_back(w);
  for (const auto& w : detail::split_path(Rational(1), g)) cycle.push_back(w);
  return build_tadpole(cycle, 1, detail::split_path(1 - 2 * eps, g));
}

// s=c0 -(1+e)- c1 -(1)- c2 -(1-e)- s
inline WeightedGraph make_energy_lb_cycle(const Rational& eps) {
  detail::require_epsilon(eps, Rational(1, 2));
  return build_cycle({1 + eps, Rational(1), 1 - eps});
}

// Two unit epsilon-paths closing the cycle at its far node and a unit epsilon-tail, all from s=c0.
inline WeightedGraph make_2_5_example(const Rational& eps) {
  if (eps <= 0 || eps >= 1 || boost::multiprecision::numerator(eps) != 1)
    throw BadParams("epsilon must be 1/n for an integer n >= 2, got " + to_string(eps));
  const auto n = static_cast<std::size_t>(boost::multiprecision::denominator(eps));
  return build_tadpole(std::vector<Rational>(2 * n, eps), 0, std::vector<Rational>(n, eps));
}

// Cycle s ~ p1 ~ ... ~ corner - c3 - s plus short tails at s. Everything leaving s is visible at once:
// epsilon edges to the tails and to p1, a unit edge to c3. The corner (where the path meets c3) is placed
// lazily. If the path reaches J-3 epsilon before anyone leaves s towards c3, the corner sits there and
// corner-c3 weighs 1; if someone leaves towards c3 first, the next path node becomes the corner with an
// epsilon edge to c3.
class TimeAdversary final : public RevelationOracle {
 public:
  TimeAdversary(std::size_t J, std::size_t tails) : J_(J), tails_(tails), eps_(Rational(1, J)) {
    if (J < 4) throw BadParams("J must be at least 4");
    if (tails == 0) throw BadParams("at least one tail is required");
  }

  std::string start() override { return "s"; }

  std::vector<RevealedEdge> reveal(const std::string& node) override {
    if (node == "s") {
      std::vector<RevealedEdge> out;
      for (std::size_t i = 0; i < tails_; ++i) out.push_back({tail_label(i), tail_weight()});
      out.push_back({"p1", eps_});
      out.push_back({"c3", Rational(1)});
      return out;
    }
    if (node == "c3") {
      if (!corner_) throw OracleInconsistency("c3 reached before the corner was placed");
      return {{"s", Rational(1)}, {path_label(*corner_), corner_weight()}};
    }
    for (std::size_t i = 0; i < tails_; ++i)
      if (node == tail_label(i)) return {{"s", tail_weight()}};
    const std::size_t k = path_index(node);
    reached_ = std::max(reached_, k);
    if (!corner_ && k == J_ - 3) {
      corner_ = k;
      long_side_ = true;
    }
    std::vector<RevealedEdge> out{{path_label(k - 1), eps_}};
    if (corner_ && k == *corner_)
      out.push_back({"c3", corner_weight()});
    else
      out.push_back({path_label(k + 1), eps_});
    return out;
  }

  void notify_depart(const std::string& from, const std::string& to) override {
    if (!corner_ && from == "s" && to == "c3") {
      corner_ = reached_ + 1;
      long_side_ = false;
    }
  }

  WeightedGraph finalize() override {
    if (!corner_) {
      corner_ = J_ - 3;
      long_side_ = true;
    }
    std::vector<std::string> labels{"s"};
    std::vector<Edge> edges;
    for (std::size_t k = 1; k <= *corner_; ++k) {
      labels.push_back(path_label(k));
      edges.push_back({k - 1, k, eps_});
    }
    const NodeId c3 = labels.size();
    labels.push_back("c3");
    edges.push_back({*corner_, c3, corner_weight()});
    edges.push_back({c3, 0, Rational(1)});
    for (std::size_t i = 0; i < tails_; ++i) {
      edges.push_back({0, labels.size(), tail_weight()});
      labels.push_back(tail_label(i));
    }
    return WeightedGraph::from_edges(std::move(labels), std::move(edges), 0);
  }

  std::size_t declared_tails() const override { return tails_; }
  Rational weight_bound() const override { return 3; }

  Rational epsilon() const { return eps_; }
  // true: corner-c3 weighs 1 (the path was followed long enough); false: it weighs epsilon
  std::optional<bool> long_side() const { return corner_ ? std::optional<bool>(long_side_) : std::nullopt; }
  std::optional<std::size_t> corner() const { return corner_; }

 private:
  std::size_t J_;
  std::size_t tails_;
  Rational eps_;
  std::size_t reached_ = 0;
  std::optional<std::size_t> corner_;
  bool long_side_ = true;

  Rational tail_weight() const { return eps_ / tails_; }
  Rational corner_weight() const { return long_side_ ? Rational(1) : eps_; }
  std::string tail_label(std::size_t i) const { return detail::tail_label(tails_, i, 0); }
  static std::string path_label(std::size_t k) { return k == 0 ? "s" : "p" + std::to_string(k); }
  std::size_t path_index(const std::string& node) const {
    if (node.size() < 2 || node[0] != 'p') throw UnknownNode("unknown node '" + node + "'");
    const std::size_t k = std::stoul(node.substr(1));
    if (k == 0 || k > reached_ + 1 || (corner_ && k > *corner_)) throw UnknownNode("node '" + node + "' not yet named");
    return k;
  }
};

inline TimeAdversary make_time_lb_adaptive(std::size_t J) { return TimeAdversary(J, 1); }

inline TimeAdversary make_ntad_lb(std::size_t n, std::size_t J) {
  if (n < 2) throw BadParams("the n-tail variant needs n >= 2; use make_time_lb_adaptive for one tail");
  return TimeAdversary(J, n);
}

// Three look-alike (1-e) edges leave s towards x1, x2, x3. Behind each x sits y. Two branches close the cycle
// (x-y weighs e, the two y's are joined by a huge edge), the third is the tail (x-y weighs 1+e).
// The first two branches entered become the cycle; when a y forces its partner early, the tail goes to the
// lowest-labelled branch still unseen.
class EnergyAdversary final : public RevelationOracle {
 public:
  EnergyAdversary(const Rational& eps, const Rational& far) : eps_(eps), far_(far) {
    detail::require_epsilon(eps, Rational(1));
    if (far <= 2 * (4 + eps)) throw BadParams("the closing edge must outweigh twice the rest of the graph");
  }

  std::string start() override { return "s"; }

  std::vector<RevealedEdge> reveal(const std::string& node) override {
    if (node == "s") return {{"x1", 1 - eps_}, {"x2", 1 - eps_}, {"x3", 1 - eps_}};
    const std::size_t i = branch(node);
    if (node[0] == 'x') {
      if (role_[i] == Role::Open) role_[i] = cycle_count() < 2 ? Role::Cycle : Role::Tail;
      close_if_decided();
      return {{"s", 1 - eps_}, {y(i), role_[i] == Role::Cycle ? eps_ : 1 + eps_}};
    }
    if (role_[i] == Role::Tail) return {{x(i), 1 + eps_}};
    if (cycle_count() < 2) {
      std::vector<std::size_t> open;
      for (std::size_t j = 0; j < 3; ++j)
        if (role_[j] == Role::Open) open.push_back(j);
      role_[open.front()] = Role::Tail;
      close_if_decided();
    }
    return {{x(i), eps_}, {y(partner(i)), far_}};
  }

  WeightedGraph finalize() override {
    for (auto& r : role_)
      if (r == Role::Open) r = cycle_count() < 2 ? Role::Cycle : Role::Tail;
    std::vector<std::string> labels{"s", "x1", "x2", "x3", "y1", "y2", "y3"};
    std::vector<Edge> edges;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < 3; ++i) {
      edges.push_back({0, 1 + i, 1 - eps_});
      edges.push_back({1 + i, 4 + i, role_[i] == Role::Cycle ? eps_ : 1 + eps_});
      if (role_[i] == Role::Cycle) {
        if (first)
          edges.push_back({4 + *first, 4 + i, far_});
        else
          first = i;
      }
    }
    return WeightedGraph::from_edges(std::move(labels), std::move(edges), 0);
  }

  std::size_t declared_tails() const override { return 1; }
  Rational weight_bound() const override { return 4 + eps_ + far_; }

  // the branch (1-based) that ended up as the tail, once known
  std::optional<std::size_t> tail_branch() const {
    for (std::size_t i = 0; i < 3; ++i)
      if (role_[i] == Role::Tail) return i + 1;
    return std::nullopt;
  }

 private:
  enum class Role { Open, Cycle, Tail };
  Rational eps_;
  Rational far_;
  std::array<Role, 3> role_{Role::Open, Role::Open, Role::Open};

  static std::string x(std::size_t i) { return "x" + std::to_string(i + 1); }
  static std::string y(std::size_t i) { return "y" + std::to_string(i + 1); }
  static std::size_t branch(const std::string& node) {
    if (node.size() == 2 && (node[0] == 'x' || node[0] == 'y') && node[1] >= '1' && node[1] <= '3')
      return static_cast<std::size_t>(node[1] - '1');
    throw UnknownNode("unknown node '" + node + "'");
  }
  std::size_t cycle_count() const { return static_cast<std::size_t>(std::count(role_.begin(), role_.end(), Role::Cycle)); }
  void close_if_decided() {
    const auto tails = std::count(role_.begin(), role_.end(), Role::Tail);
    for (auto& r : role_)
      if (r == Role::Open) r = tails > 0 ? Role::Cycle : (cycle_count() == 2 ? Role::Tail : Role::Open);
  }
  std::size_t partner(std::size_t i) const {
    for (std::size_t j = 0; j < 3; ++j)
      if (j != i && role_[j] == Role::Cycle) return j;
    throw OracleInconsistency("cycle branch without a partner");
  }
};

inline EnergyAdversary make_energy_lb_adaptive(const Rational& eps, const Rational& far = 1000) {
  return EnergyAdversary(eps, far);
}

}  // namespace tadpole
