#ifndef CBR_EQUILIBRIUM_HPP
#define CBR_EQUILIBRIUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "cbr/devsystem.hpp"

namespace cbr {

// Directed graph of improving coalitional deviations. Nodes are state
// indices; each edge carries every coalition that witnesses it.
struct DeviationGraph {
  struct Edge {
    int to;
    std::vector<Coalition> coalitions;  // ascending, nonempty
  };
  int num_nodes = 0;
  ImprovementMode mode = ImprovementMode::kStrict;
  std::vector<std::vector<Edge>> adjacency;  // edges sorted by target

  bool has_edge(int from, int to) const;
};

DeviationGraph build_deviation_graph(const DeviationSystem& sys,
                                     ImprovementMode mode);
DeviationGraph build_deviation_graph(const Game& g, ImprovementMode mode);

// Sink SCCs of the deviation graph: singletons are equilibria, larger
// classes are closed cycles; everything else is transient.
struct RecurrentStructure {
  struct Class {
    std::vector<int> members;  // sorted
    bool is_equilibrium() const { return members.size() == 1; }
  };
  std::vector<Class> classes;  // sorted by smallest member
  std::vector<int> transient;  // sorted

  std::vector<int> recurrent_states() const;   // union of classes, sorted
  std::vector<int> equilibrium_states() const; // singleton classes, sorted
};

RecurrentStructure recurrent_structure(const DeviationGraph& graph);

// Candidate-elimination search for strong (strict mode) / strict strong
// (weak mode) Nash equilibria. Works directly off payoff comparisons,
// independent of the deviation-set machinery. With first_only the search
// stops at the first surviving profile.
std::vector<int> find_equilibria_scan(const Game& g, ImprovementMode mode,
                                      bool first_only = false);

// One step of an improving path: the coalition moved and where to.
struct PathStep {
  Coalition coalition;
  int to;
};
// Shortest improving path from `from` to `to` with one witness coalition
// per step; nullopt when unreachable. An empty path means from == to.
std::optional<std::vector<PathStep>> improving_path(const DeviationGraph& g,
                                                    int from, int to);

// Cross-check: the elimination scan must agree with the out-degree-0 /
// singleton-sink characterization.
struct ConsistencyReport {
  bool ok = false;
  std::vector<int> only_in_scan;
  std::vector<int> only_in_structure;
};
ConsistencyReport equilibria_consistency_check(const Game& g,
                                               ImprovementMode mode);

// Payoff / risk dominance for a 2x2 coordination game
// (a11>a21, b11>b12, a22>a12, b22>b21 all strict).
struct DominanceReport {
  std::optional<int> payoff_dominant;  // profile index
  std::optional<int> risk_dominant;
  Rational r1, r2;
};
DominanceReport dominance_2x2(const Game& g);

// Harsanyi pairwise-contest risk dominance for an mxm symmetric
// coordination game (diagonal profiles are the candidates). Returns the
// profile index of the overall winner, or nullopt when any pairwise
// contest is inconclusive or ties.
std::optional<int> risk_dominant_symmetric(const Game& g);

// DOT rendering of the deviation graph with coalition edge labels.
std::string to_dot(const DeviationGraph& graph, const DeviationSystem& sys);

}  // namespace cbr

#endif
