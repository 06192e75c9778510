// Two agents with a coin flip on the tadpole with a unit tail and two unit half-cycles at the start.
// Prints the exploration time for each outcome of the flip next to the offline optimum.

#include <iostream>

#include "tadpole/harness.hpp"

using namespace tadpole;

int main() {
  const Rational eps(1, 10);
  auto g = build_tadpole(std::vector<Rational>(20, eps), 0, std::vector<Rational>(10, eps));
  const Rational opt = offline_optimum(g, 2).makespan;
  std::cout << "opt " << to_string(opt) << '\n';
  for (std::size_t choice : {0, 1}) {
    ScriptedStream coin({choice});
    auto t = explore("amp-tad2", g, 2, coin);
    std::cout << "choice " << choice << ": time " << to_string(cost_time(t)) << ", energy "
              << to_string(cost_energy(t)) << ", ratio " << to_string(cost_time(t) / opt) << '\n';
  }
}
