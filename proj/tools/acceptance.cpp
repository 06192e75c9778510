// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <concepts>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "tadpole/adversaries.hpp"
#include "tadpole/harness.hpp"

using namespace tadpole;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

// collects the first failure, keeps counting the rest
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && failures_++ == 0) first_ = what;
  }
  // message built only on failure
  template <std::invocable F>
  void expect(bool cond, F&& what) {
    if (!cond && failures_++ == 0) first_ = what();
  }
  void note(std::string s) { note_ = std::move(s); }
  Verdict verdict() const {
    if (failures_ == 0) return {true, note_};
    return {false, std::to_string(failures_) + " failure(s), first: " + first_};
  }

 private:
  std::size_t failures_ = 0;
  std::string first_;
  std::string note_;
};

std::string show(const WeightedGraph& g) { return serialize_graph(g, "; "); }

// runs body on every choice sequence; false if there are more than the limit
bool all_choices(const std::function<void(ScriptedStream&)>& body) { return for_each_choice_sequence(body, 256); }

Verdict amp_energy_optimal_on_cycles() {
  Check c;
  std::mt19937_64 gen(101);
  InstanceShape shape;
  Rational worst_time = 0;
  for (int i = 0; i < 500; ++i) {
    auto g = random_instance(GraphClass::Cycle, shape, gen);
    auto t = explore("amp", g, 2, static_cast<std::uint64_t>(i));
    const Rational opt = opt_cycle(g);
    c.expect(cost_energy(t) == opt, [&] { return "energy " + to_string(cost_energy(t)) + " != opt on " + show(g); });
    auto geo = cycle_geometry(g);
    if (!geo.midpoint_on_node) {
      const Edge& e = g.edge(geo.e_mid);
      c.expect(!traversed(t, g.label(e.a), g.label(e.b)), [&] { return "middle edge traversed on " + show(g); });
    }
    worst_time = std::max(worst_time, cost_time(t) / opt);
    c.expect(cost_time(t) <= Rational(3, 2) * opt, [&] { return "time ratio above 3/2 on " + show(g); });
  }
  c.note("500 cycles, energy ratio 1, max time ratio " + to_string(worst_time));
  return c.verdict();
}

Verdict ale_energy_gap() {
  Check c;
  std::ostringstream seq;
  Rational prev = 0;
  for (auto eps : {Rational(1, 4), Rational(1, 10), Rational(1, 100)}) {
    auto g = make_energy_lb_cycle(eps);
    const Rational energy = worst_cost("ale-cycle", g, 2, CostModel::Energy, 0);
    const Rational ratio = energy / opt_cycle(g);
    c.expect(energy == 3, "energy " + to_string(energy) + " at eps " + to_string(eps));
    c.expect(ratio > prev, "ratio not increasing at eps " + to_string(eps));
    c.expect(ratio < Rational(3, 2), "ratio reached 3/2");
    prev = ratio;
    seq << (seq.tellp() ? " " : "") << to_string(ratio);
    if (eps == Rational(1, 100)) {
      c.expect(opt_cycle(g) == Rational(101, 50), "opt " + to_string(opt_cycle(g)));
      c.expect(ratio == Rational(150, 101), "ratio " + to_string(ratio));
    }
  }
  c.note("ratios " + seq.str());
  return c.verdict();
}

Verdict ale_tadpole_lower_bound() {
  Check c;
  const Rational eps(1, 100);
  auto g = make_ale_lb_tadpole(eps);
  for (std::size_t k : {3u, 4u}) {
    const std::string name = k == 3 ? "ale-tad3" : "ale-tad4";
    Rational least, most;
    bool first = true;
    c.expect(all_choices([&](ScriptedStream& s) {
      const Rational t = cost_time(explore(name, g, k, s));
      least = first ? t : std::min(least, t);
      most = first ? t : std::max(most, t);
      first = false;
    }), "too many choice sequences for " + name);
    c.expect(least == Rational(99, 25) && most == Rational(99, 25), name + " time " + to_string(least) + ".." + to_string(most));
    auto plan = packed_plan(g, k);
    c.expect(certify_plan(g, plan, k) == Rational(2), "no certified plan of length 2 for k=" + std::to_string(k));
    c.expect(offline_optimum(g, k).makespan == 2, "offline optimum");
    // the same gadget with coarse path edges is small enough for the exact solver
    for (std::size_t gran : {1u, 2u, 3u})
      c.expect(BruteForce(make_ale_lb_tadpole(eps, gran)).makespan(k) == 2,
               "brute force on granularity " + std::to_string(gran));
  }
  c.note("time 99/25, opt 2, ratio 99/50");
  return c.verdict();
}

std::vector<WeightedGraph> tadpoles_all_starts(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 gen(seed);
  InstanceShape shape;
  shape.random_start = false;
  std::vector<WeightedGraph> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto g = random_instance(GraphClass::Tadpole, shape, gen);
    for (NodeId s = 0; s < g.node_count(); ++s) out.push_back(g.with_start(s));
  }
  return out;
}

Verdict three_agent_tadpoles() {
  Check c;
  Rational worst = 0;
  std::size_t runs = 0;
  for (const auto& g : tadpoles_all_starts(303, 300)) {
    const Rational opt = opt_tadpole_k3plus(g);
    all_choices([&](ScriptedStream& s) {
      auto t = explore("amp-tad3", g, 3, s);
      c.expect(cost_energy(t) == opt, [&] { return "energy ratio not 1 on " + show(g); });
      c.expect(cost_time(t) <= 2 * opt, [&] { return "time ratio above 2 on " + show(g); });
      worst = std::max(worst, cost_time(t) / opt);
      ++runs;
    });
  }
  auto g = make_2_5_example(Rational(1, 10));
  const Rational ratio = worst_cost("amp-tad3", g, 3, CostModel::Time, 0) / opt_tadpole_k3plus(g);
  c.expect(ratio == 2, "ratio gadget time ratio " + to_string(ratio));
  c.note(std::to_string(runs) + " runs, max time ratio " + to_string(worst) + ", gadget " + to_string(ratio));
  return c.verdict();
}

Verdict four_agent_tadpoles() {
  Check c;
  Rational worst = 0;
  for (const auto& g : tadpoles_all_starts(303, 300)) {
    const Rational opt = opt_tadpole_k3plus(g);
    auto d = distances_from(g, g.start());
    all_choices([&](ScriptedStream& s) {
      auto t = explore("amp-tad4", g, 4, s);
      c.expect(cost_time(t) <= Rational(3, 2) * opt, [&] { return "time ratio above 3/2 on " + show(g); });
      worst = std::max(worst, cost_time(t) / opt);
      for (NodeId v = 0; v < g.node_count(); ++v)
        c.expect(t.first_visit.at(g.label(v)) <= 2 * d[v], [&] { return g.label(v) + " reached late on " + show(g); });
    });
  }
  c.note("max time ratio " + to_string(worst));
  return c.verdict();
}

Verdict two_agent_tadpoles() {
  Check c;
  std::mt19937_64 gen(606);
  InstanceShape shape;
  const std::size_t cap = std::max<std::size_t>(brute_cap(), 16);
  Rational worst = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = random_instance(GraphClass::Tadpole, shape, gen);
    const Rational opt = offline_optimum(g, 2, cap).makespan;
    c.expect(all_choices([&](ScriptedStream& s) {
      auto t = explore("amp-tad2", g, 2, s);
      const Rational r = std::max(cost_time(t), cost_energy(t)) / opt;
      worst = std::max(worst, r);
      c.expect(r <= Rational(5, 2), [&] { return "ratio " + to_string(r) + " on " + show(g); });
    }), [&] { return "too many choice sequences on " + show(g); });
  }
  auto g = make_2_5_example(Rational(1, 10));
  ScriptedStream cycle_first({0});
  const Rational ratio = cost_time(explore("amp-tad2", g, 2, cycle_first)) / offline_optimum(g, 2).makespan;
  c.expect(ratio == Rational(5, 2), "gadget ratio " + to_string(ratio));
  c.note("max ratio " + to_string(worst) + ", gadget " + to_string(ratio));
  return c.verdict();
}

Verdict adaptive_time_lower_bound() {
  Check c;
  const Rational floor = Rational(3, 2) - Rational(3, 200);
  Rational least = 3;
  for (auto [name, k] : {std::pair<const char*, std::size_t>{"amp-tad2", 2}, {"amp-tad3", 3}, {"amp-tad4", 4}}) {
    c.expect(all_choices([&](ScriptedStream& s) {
      auto oracle = make_time_lb_adaptive(100);
      Trace t;
      try {
        t = explore(name, oracle, k, s);
      } catch (const OracleInconsistency& e) {
        c.expect(false, std::string(name) + ": " + e.what());
        return;
      }
      const Rational ratio = cost_time(t) / offline_optimum(t.graph, k).makespan;
      least = std::min(least, ratio);
      c.expect(ratio >= floor, std::string(name) + " ratio " + to_string(ratio));
    }), std::string("too many choice sequences for ") + name);
  }
  c.note("least ratio " + to_string(least));
  return c.verdict();
}

Verdict adaptive_energy_lower_bound() {
  Check c;
  const Rational eps(1, 10);
  Rational least = 1000;
  std::size_t strategies = 0;
  for (const auto& name : policy_names()) {
    // the gadget is a tadpole, so only policies that run on one tail with two agents apply
    const auto info = policy_info(name, 2);
    if ((info.tails && *info.tails != 1) || required_agents(name, 1) != 2) continue;
    ++strategies;
    c.expect(all_choices([&](ScriptedStream& s) {
      auto oracle = make_energy_lb_adaptive(eps);
      Trace t;
      try {
        t = explore(name, oracle, 2, s);
      } catch (const Error& e) {
        c.expect(false, name + ": " + e.what());
        return;
      }
      c.expect(BruteForce(t.graph).makespan(2) == 4, name + ": optimum is not 4");
      least = std::min(least, cost_energy(t));
      c.expect(cost_energy(t) >= Rational(29, 5), name + " energy " + to_string(cost_energy(t)));
    }), "too many choice sequences for " + name);
  }
  c.note(std::to_string(strategies) + " strategies, least energy " + to_string(least));
  return c.verdict();
}

// weight sequences over {1..4}, skipping a sequence when its reverse comes first
template <class F>
void each_weight_sequence(std::size_t n, F&& f) {
  std::vector<Rational> ws(n, Rational(1));
  std::vector<int> digits(n, 0);
  while (true) {
    std::vector<int> rev(digits.rbegin(), digits.rend());
    if (digits <= rev) {
      for (std::size_t i = 0; i < n; ++i) ws[i] = digits[i] + 1;
      f(ws);
    }
    std::size_t i = 0;
    while (i < n && digits[i] == 3) digits[i++] = 0;
    if (i == n) return;
    ++digits[i];
  }
}

Verdict oracle_cross_validation() {
  Check c;
  const auto begin = std::chrono::steady_clock::now();
  std::size_t checked = 0;
  // cycles: the start is c0 and mirror images about it are equivalent
  for (std::size_t m = 3; m <= 8; ++m) {
    each_weight_sequence(m, [&](const std::vector<Rational>& ws) {
      auto g = build_cycle(ws);
      BruteForce bf(g);
      c.expect(bf.makespan(2) == opt_cycle(g), [&] { return "k=2 on " + show(g); });
      c.expect(bf.makespan(1) == opt_single_agent_ntadpole(g), [&] { return "k=1 on " + show(g); });
      ++checked;
    });
  }
  // tadpoles: the tail hangs at c0, every node is tried as the start, mirror images of the cycle are skipped
  for (std::size_t m = 3; m <= 7; ++m) {
    for (std::size_t len = 1; m + len <= 8; ++len) {
      each_weight_sequence(m, [&](const std::vector<Rational>& cyc) {
        std::vector<int> digits(len, 0);
        std::vector<Rational> tail(len);
        while (true) {
          for (std::size_t i = 0; i < len; ++i) tail[i] = digits[i] + 1;
          auto base = build_tadpole(cyc, 0, tail);
          for (NodeId s = 0; s < base.node_count(); ++s) {
            auto g = base.with_start(s);
            BruteForce bf(g);
            c.expect(bf.makespan(3) == opt_tadpole_k3plus(g), [&] { return "k=3 on " + show(g); });
            c.expect(bf.makespan(1) == opt_single_agent_ntadpole(g), [&] { return "k=1 on " + show(g); });
            ++checked;
          }
          std::size_t i = 0;
          while (i < len && digits[i] == 3) digits[i++] = 0;
          if (i == len) break;
          ++digits[i];
        }
      });
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  c.expect(secs < 60, "took " + std::to_string(secs) + " s");
  std::ostringstream note;
  note << checked << " instances in " << static_cast<int>(secs) << " s";
  c.note(note.str());
  return c.verdict();
}

Verdict n_tadpole_bounds() {
  Check c;
  std::mt19937_64 gen(1010);
  InstanceShape shape;
  shape.tails = 2;
  const std::size_t cap = std::max<std::size_t>(brute_cap(), 16);
  Rational worst_a = 0, worst_b = 0;
  for (int i = 0; i < 100; ++i) {
    auto g = random_instance(GraphClass::NTadpole, shape, gen);
    const Rational opt4 = offline_optimum(g, 4, cap).makespan;
    const Rational opt8 = offline_optimum(g, 8, cap).makespan;
    all_choices([&](ScriptedStream& s) {
      auto t = explore("ntad-nplus2", g, 4, s);
      c.expect(cost_energy(t) == opt4, [&] { return "energy ratio not 1 on " + show(g); });
      c.expect(cost_time(t) <= Rational(5, 2) * opt4, [&] { return "time ratio above 5/2 on " + show(g); });
      worst_a = std::max(worst_a, cost_time(t) / opt4);
    });
    all_choices([&](ScriptedStream& s) {
      auto t = explore("ntad-exp", g, 8, s);
      c.expect(cost_time(t) <= Rational(3, 2) * opt8, [&] { return "exp time ratio above 3/2 on " + show(g); });
      worst_b = std::max(worst_b, cost_time(t) / opt8);
    });
    c.expect(opt_single_agent_ntadpole(g) <= 4 * two_agent_lower_bound(g), [&] { return "4x relation on " + show(g); });
  }
  c.note("max time ratios " + to_string(worst_a) + " and " + to_string(worst_b));
  return c.verdict();
}

Verdict tables_regenerate() {
  Check c;
  auto cells = cmd_tables();
  std::size_t verified = 0;
  for (const auto& cell : cells) {
    if (cell.status == "verified") ++verified;
    c.expect(cell.status != "violated", cell.table + "/" + cell.row + "/" + cell.cell + ": " + cell.detail);
  }
  c.expect(tables_ok(cells), "tables report a failure");
  c.note(std::to_string(cells.size()) + " cells, " + std::to_string(verified) + " verified");
  return c.verdict();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AMP energy optimal on cycles", amp_energy_optimal_on_cycles},
      {"ALE energy gap on the cycle gadget", ale_energy_gap},
      {"ALE tadpole lower bound", ale_tadpole_lower_bound},
      {"three-agent tadpoles", three_agent_tadpoles},
      {"four-agent tadpoles", four_agent_tadpoles},
      {"two-agent randomized tadpoles", two_agent_tadpoles},
      {"adaptive time lower bound", adaptive_time_lower_bound},
      {"adaptive energy lower bound", adaptive_energy_lower_bound},
      {"oracle cross-validation", oracle_cross_validation},
      {"n-tadpole bounds", n_tadpole_bounds},
      {"tables regenerate", tables_regenerate},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.ok;
    std::cout << (v.ok ? "PASS" : "FAIL") << ' ' << i + 1 << ' ' << criteria[i].first << ": " << v.detail << std::endl;
  }
  return all ? 0 : 1;
}
