// Command-line front end: single runs, offline optima, sweeps, lower-bound gadgets and the result tables.
// Exit status: 0 ok, 1 a bound or table check failed, 2 bad input or a runtime error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tadpole/harness.hpp"

using namespace tadpole;

namespace {

std::vector<std::size_t> parse_choices(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw BadParams("choices must be comma-separated non-negative integers");
    out.push_back(std::stoul(item));
  }
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw BadParams("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent exploration of cycles and tadpole graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "write CSV here instead of stdout");

  // run
  auto* run_cmd = app.add_subcommand("run", "explore one graph file and grade the run");
  std::string graph_path, strategy = "amp", model_name = "time", choices;
  std::size_t agents = 2;
  std::uint64_t seed = 0;
  bool with_trace = false;
  run_cmd->add_option("--graph", graph_path, "graph file")->required();
  run_cmd->add_option("--strategy", strategy, "policy name")->required();
  run_cmd->add_option("--agents", agents, "team size");
  run_cmd->add_option("--seed", seed, "seed for random choices");
  run_cmd->add_option("--choices", choices, "scripted random choices, e.g. 2,0 (overrides --seed)");
  run_cmd->add_option("--model", model_name, "time|energy");
  run_cmd->add_flag("--trace", with_trace, "print the event trace instead of the report");

  // opt
  auto* opt_cmd = app.add_subcommand("opt", "offline optimum of a graph file");
  std::string method = "closed";
  bool show_plan = false;
  opt_cmd->add_option("--graph", graph_path, "graph file")->required();
  opt_cmd->add_option("--agents", agents, "team size");
  opt_cmd->add_option("--method", method, "closed|brute");
  opt_cmd->add_flag("--plan", show_plan, "also print the walks");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "grade a strategy on random instances");
  SweepConfig sweep;
  std::string cls_name = "cycle";
  bool rows = false;
  sweep_cmd->add_option("--class", cls_name, "cycle|tadpole|ntadpole");
  sweep_cmd->add_option("--trials", sweep.trials, "number of instances");
  sweep_cmd->add_option("--seed", sweep.seed, "sweep seed");
  sweep_cmd->add_option("--strategy", sweep.strategy, "policy name");
  sweep_cmd->add_option("--agents", sweep.agents, "team size");
  sweep_cmd->add_option("--model", model_name, "time|energy");
  sweep_cmd->add_option("--min-cycle", sweep.shape.min_cycle, "fewest cycle nodes");
  sweep_cmd->add_option("--max-cycle", sweep.shape.max_cycle, "most cycle nodes");
  sweep_cmd->add_option("--max-tail", sweep.shape.max_tail, "most edges per tail");
  sweep_cmd->add_option("--tails", sweep.shape.tails, "tails per n-tadpole");
  sweep_cmd->add_option("--max-numerator", sweep.shape.max_numerator, "weights a/b with a up to this");
  sweep_cmd->add_option("--max-denominator", sweep.shape.max_denominator, "weights a/b with b up to this");
  sweep_cmd->add_option("--cap", sweep.cap, "brute-force node cap used for grading");
  sweep_cmd->add_flag("--rows", rows, "print one report row per instance");

  // lowerbound
  auto* lb_cmd = app.add_subcommand("lowerbound", "run a strategy against a lower-bound gadget");
  LowerBoundConfig lb;
  std::string family = "time-adaptive", epsilon = "1/100";
  std::size_t J = 0, granularity = 0, lb_agents = 0;
  lb_cmd->add_option("--family", family, "ale-tadpole|energy-cycle|time-adaptive|energy-adaptive|example-2.5|ntad")->required();
  lb_cmd->add_option("--epsilon", epsilon, "gadget scale p/q");
  lb_cmd->add_option("--J", J, "1/epsilon for the adaptive time gadget");
  lb_cmd->add_option("--tails", lb.tails, "tail count for ntad");
  lb_cmd->add_option("--granularity", granularity, "edges per unit of path length");
  lb_cmd->add_option("--strategy", lb.strategy, "policy name")->required();
  lb_cmd->add_option("--agents", lb_agents, "team size (default: what the policy needs)");
  lb_cmd->add_option("--choices", choices, "scripted random choices (default: worst over all)");

  // tables
  auto* tables_cmd = app.add_subcommand("tables", "regenerate the result tables");
  TablesConfig tables;
  tables_cmd->add_option("--trials", tables.trials, "random instances per cell");
  tables_cmd->add_option("--seed", tables.seed, "sweep seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Output out(out_path);
    std::ostream& os = out.stream();

    if (*run_cmd) {
      auto g = load_graph_file(graph_path);
      auto model = parse_model(model_name);
      ScriptedStream scripted(parse_choices(choices));
      SeededStream seeded(seed);
      RandomStream& rng = choices.empty() ? static_cast<RandomStream&>(seeded) : scripted;
      if (with_trace) {
        os << trace_csv(explore(strategy, g, agents, rng));
        return 0;
      }
      auto r = cmd_run(graph_path, g, strategy, agents, rng, seed, model);
      os << report_header() << '\n' << report_row(r) << '\n';
      return r.satisfied ? 0 : 1;
    }

    if (*opt_cmd) {
      auto g = load_graph_file(graph_path);
      Rational makespan;
      std::optional<OfflinePlan> plan;
      if (method == "brute") {
        plan = opt_bruteforce(g, agents);
        makespan = plan->makespan;
      } else if (method == "closed") {
        auto best = offline_optimum(g, agents);
        if (best.method != OptMethod::Closed)
          throw BadParams("no closed form for this graph and team size; use --method brute");
        makespan = best.makespan;
        if (show_plan) {
          // the packed plan usually attains the closed form; small graphs fall back to the exact solver
          plan = packed_plan(g, agents);
          if (plan->makespan != makespan) plan = opt_bruteforce(g, agents);
        }
      } else {
        throw BadParams("unknown method '" + method + "' (closed|brute)");
      }
      os << to_string(makespan) << '\n';
      if (show_plan && plan) {
        for (const auto& walk : plan_labels(g, *plan)) {
          for (std::size_t i = 0; i < walk.size(); ++i) os << (i ? " " : "") << walk[i];
          os << '\n';
        }
      }
      return 0;
    }

    if (*sweep_cmd) {
      sweep.cls = parse_class(cls_name);
      sweep.model = parse_model(model_name);
      auto s = cmd_sweep(sweep);
      if (rows) {
        os << report_header() << '\n';
        for (const auto& r : s.rows) os << report_row(r) << '\n';
      } else {
        os << summary_csv(sweep, s);
      }
      return s.all_satisfied ? 0 : 1;
    }

    if (*lb_cmd) {
      lb.family = parse_family(family);
      lb.epsilon = parse_rational(epsilon);
      if (J) lb.J = J;
      if (granularity) lb.granularity = granularity;
      if (lb_agents) lb.agents = lb_agents;
      lb.choices = parse_choices(choices);
      auto r = cmd_lowerbound(lb);
      os << lower_bound_header() << '\n' << lower_bound_row(r) << '\n';
      return r.realized ? 0 : 1;
    }

    if (*tables_cmd) {
      auto cells = cmd_tables(tables);
      os << table_header() << '\n';
      for (const auto& c : cells) os << table_row(c) << '\n';
      return tables_ok(cells) ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
