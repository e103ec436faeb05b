// Learns the optimal commitment of the three-action counterexample game and
// prints the regions the learner closed.

#include <iostream>

#include "commitlearn/commitlearn.hpp"

using namespace commitlearn;

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 42;
  const GameInstance game = counterexample_game();
  QueryOracle oracle(game);
  const LearnOutcome out = learn(oracle, game.leader(), LearnerConfig{}, seed);

  for (const auto& r : out.regions) {
    std::cout << "action " << r.action << ":";
    for (const auto& h : r.planes) {
      std::cout << " (";
      for (std::size_t i = 0; i < h.coefficients().size(); ++i) std::cout << (i ? "," : "") << h.coefficients()[i];
      std::cout << ")";
    }
    std::cout << "\n";
  }
  std::cout << "p* = " << io::point_json(out.p_star.span()) << ", value " << out.value << ", " << out.query_count
            << " queries\n";
}
