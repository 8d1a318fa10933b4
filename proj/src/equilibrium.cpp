#include "cbr/equilibrium.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cbr {

namespace {

// Iterative Tarjan; returns component id per node, components numbered in
// reverse topological order of the condensation (sinks get low ids first
// is NOT guaranteed, so sink-ness is checked explicitly afterwards).
std::vector<int> tarjan_scc(const std::vector<std::vector<int>>& adj,
                            int* num_components) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), lowlink(n, 0), component(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, next_component = 0;

  struct Frame {
    int node;
    size_t edge;
  };
  std::vector<Frame> call_stack;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const int v = frame.node;
      if (frame.edge < adj[v].size()) {
        const int w = adj[v][frame.edge++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
      } else {
        if (lowlink[v] == index[v]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component[w] = next_component;
            if (w == v) break;
          }
          ++next_component;
        }
        call_stack.pop_back();
        if (!call_stack.empty()) {
          const int parent = call_stack.back().node;
          lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
        }
      }
    }
  }
  *num_components = next_component;
  return component;
}

}  // namespace

bool DeviationGraph::has_edge(int from, int to) const {
  for (const Edge& e : adjacency[from]) {
    if (e.to == to) return true;
  }
  return false;
}

DeviationGraph build_deviation_graph(const DeviationSystem& sys,
                                     ImprovementMode mode) {
  DeviationGraph graph;
  graph.num_nodes = sys.num_states();
  graph.mode = mode;
  graph.adjacency.resize(graph.num_nodes);
  const auto coalitions = enumerate_coalitions(sys.num_players());
  for (int a = 0; a < graph.num_nodes; ++a) {
    std::vector<std::vector<Coalition>> labels(graph.num_nodes);
    for (Coalition s : coalitions) {
      for (int target : sys.improving(s, a)) {
        labels[target].push_back(s);
      }
    }
    for (int target = 0; target < graph.num_nodes; ++target) {
      if (!labels[target].empty()) {
        graph.adjacency[a].push_back({target, std::move(labels[target])});
      }
    }
  }
  return graph;
}

DeviationGraph build_deviation_graph(const Game& g, ImprovementMode mode) {
  GameSystem sys(g, mode);
  return build_deviation_graph(sys, mode);
}

std::vector<int> RecurrentStructure::recurrent_states() const {
  std::vector<int> out;
  for (const Class& c : classes) {
    out.insert(out.end(), c.members.begin(), c.members.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> RecurrentStructure::equilibrium_states() const {
  std::vector<int> out;
  for (const Class& c : classes) {
    if (c.is_equilibrium()) out.push_back(c.members[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RecurrentStructure recurrent_structure(const DeviationGraph& graph) {
  std::vector<std::vector<int>> adj(graph.num_nodes);
  for (int v = 0; v < graph.num_nodes; ++v) {
    for (const auto& e : graph.adjacency[v]) adj[v].push_back(e.to);
  }
  int num_components = 0;
  const std::vector<int> component = tarjan_scc(adj, &num_components);

  std::vector<bool> is_sink(num_components, true);
  for (int v = 0; v < graph.num_nodes; ++v) {
    for (int w : adj[v]) {
      if (component[v] != component[w]) is_sink[component[v]] = false;
    }
  }

  std::vector<std::vector<int>> members(num_components);
  for (int v = 0; v < graph.num_nodes; ++v) members[component[v]].push_back(v);

  RecurrentStructure out;
  for (int c = 0; c < num_components; ++c) {
    std::sort(members[c].begin(), members[c].end());
    if (is_sink[c]) {
      out.classes.push_back({members[c]});
    } else {
      out.transient.insert(out.transient.end(), members[c].begin(),
                           members[c].end());
    }
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const RecurrentStructure::Class& a,
               const RecurrentStructure::Class& b) {
              return a.members[0] < b.members[0];
            });
  std::sort(out.transient.begin(), out.transient.end());
  return out;
}

std::vector<int> find_equilibria_scan(const Game& g, ImprovementMode mode,
                                      bool first_only) {
  // Candidate elimination over the full profile set: a profile survives if
  // no coalition has a deviation satisfying the improvement inequalities.
  const auto coalitions = enumerate_coalitions(g.num_players());
  std::vector<int> survivors;
  for (int a = 0; a < g.num_profiles(); ++a) {
    bool eliminated = false;
    const Profile base = g.profile_at(a);
    for (Coalition s : coalitions) {
      // iterate candidate joint actions of S in lexicographic order
      Profile p = base;
      for (int i = 0; i < g.num_players(); ++i) {
        if (coalition_contains(s, i)) p[i] = 0;
      }
      while (!eliminated) {
        const int k = g.index_of(p);
        if (k != a) {
          bool all_ok = true, some_strict = false;
          for (int i = 0; i < g.num_players() && all_ok; ++i) {
            if (!coalition_contains(s, i)) continue;
            if (mode == ImprovementMode::kStrict) {
              all_ok = g.payoff(i, k) > g.payoff(i, a);
            } else {
              if (g.payoff(i, k) < g.payoff(i, a)) all_ok = false;
              if (g.payoff(i, k) > g.payoff(i, a)) some_strict = true;
            }
          }
          if (all_ok && (mode == ImprovementMode::kStrict || some_strict)) {
            eliminated = true;
            break;
          }
        }
        int i = g.num_players() - 1;
        for (; i >= 0; --i) {
          if (!coalition_contains(s, i)) continue;
          if (++p[i] < g.num_actions(i)) break;
          p[i] = 0;
        }
        if (i < 0) break;
      }
      if (eliminated) break;
    }
    if (!eliminated) {
      survivors.push_back(a);
      if (first_only) return survivors;
    }
  }
  return survivors;
}

std::optional<std::vector<PathStep>> improving_path(const DeviationGraph& g,
                                                    int from, int to) {
  std::vector<int> parent(g.num_nodes, -1);
  std::vector<Coalition> via(g.num_nodes, 0);
  std::deque<int> queue{from};
  std::vector<bool> seen(g.num_nodes, false);
  seen[from] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == to && v != from) break;
    for (const auto& e : g.adjacency[v]) {
      if (seen[e.to]) continue;
      seen[e.to] = true;
      parent[e.to] = v;
      via[e.to] = e.coalitions.front();
      queue.push_back(e.to);
    }
  }
  if (from == to) return std::vector<PathStep>{};
  if (!seen[to] || parent[to] == -1) return std::nullopt;
  std::vector<PathStep> path;
  for (int v = to; v != from; v = parent[v]) {
    path.push_back({via[v], v});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ConsistencyReport equilibria_consistency_check(const Game& g,
                                               ImprovementMode mode) {
  const std::vector<int> scan = find_equilibria_scan(g, mode);
  const auto structure = recurrent_structure(build_deviation_graph(g, mode));
  const std::vector<int> structural = structure.equilibrium_states();

  ConsistencyReport report;
  std::set_difference(scan.begin(), scan.end(), structural.begin(),
                      structural.end(),
                      std::back_inserter(report.only_in_scan));
  std::set_difference(structural.begin(), structural.end(), scan.begin(),
                      scan.end(), std::back_inserter(report.only_in_structure));
  report.ok = report.only_in_scan.empty() && report.only_in_structure.empty();
  return report;
}

DominanceReport dominance_2x2(const Game& g) {
  if (g.num_players() != 2 || g.num_actions(0) != 2 || g.num_actions(1) != 2) {
    throw ValidationError("not a 2x2 coordination game");
  }
  const Rational a11 = g.payoff(0, g.index_of({0, 0}));
  const Rational a12 = g.payoff(0, g.index_of({0, 1}));
  const Rational a21 = g.payoff(0, g.index_of({1, 0}));
  const Rational a22 = g.payoff(0, g.index_of({1, 1}));
  const Rational b11 = g.payoff(1, g.index_of({0, 0}));
  const Rational b12 = g.payoff(1, g.index_of({0, 1}));
  const Rational b21 = g.payoff(1, g.index_of({1, 0}));
  const Rational b22 = g.payoff(1, g.index_of({1, 1}));
  if (!(a11 > a21 && b11 > b12 && a22 > a12 && b22 > b21)) {
    throw ValidationError("not a 2x2 coordination game");
  }

  DominanceReport report;
  const Rational da = a11 - a12 - a21 + a22;  // > 0 by the inequalities
  const Rational db = b11 - b12 - b21 + b22;
  report.r1 = std::min((a11 - a21) / da, (b11 - b12) / db);
  report.r2 = std::min((a22 - a12) / da, (b22 - b21) / db);

  const int diag1 = g.index_of({0, 0});
  const int diag2 = g.index_of({1, 1});
  if (a11 > a22 && b11 > b22) report.payoff_dominant = diag1;
  if (a11 < a22 && b11 < b22) report.payoff_dominant = diag2;
  if (report.r1 > report.r2) report.risk_dominant = diag1;
  if (report.r2 > report.r1) report.risk_dominant = diag2;
  return report;
}

std::optional<int> risk_dominant_symmetric(const Game& g) {
  if (g.num_players() != 2 || g.num_actions(0) != g.num_actions(1)) {
    return std::nullopt;
  }
  const int m = g.num_actions(0);
  // symmetry: u1(j,k) == u2(k,j)
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      if (g.payoff(0, g.index_of({j, k})) != g.payoff(1, g.index_of({k, j}))) {
        return std::nullopt;
      }
    }
  }
  // pairwise 2x2 contests between diagonal equilibria
  std::vector<int> wins(m, 0);
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      const Rational a11 = g.payoff(0, g.index_of({j, j}));
      const Rational a12 = g.payoff(0, g.index_of({j, k}));
      const Rational a21 = g.payoff(0, g.index_of({k, j}));
      const Rational a22 = g.payoff(0, g.index_of({k, k}));
      if (!(a11 > a21 && a22 > a12)) return std::nullopt;
      const Rational d = a11 - a12 - a21 + a22;
      const Rational r1 = (a11 - a21) / d;
      const Rational r2 = (a22 - a12) / d;
      if (r1 > r2) {
        ++wins[j];
      } else if (r2 > r1) {
        ++wins[k];
      } else {
        return std::nullopt;  // tied contest
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    if (wins[j] == m - 1) return g.index_of({j, j});
  }
  return std::nullopt;
}

std::string to_dot(const DeviationGraph& graph, const DeviationSystem& sys) {
  std::ostringstream out;
  out << "digraph deviation {\n";
  for (int v = 0; v < graph.num_nodes; ++v) {
    out << "  \"" << sys.state_label(v) << "\";\n";
  }
  for (int v = 0; v < graph.num_nodes; ++v) {
    for (const auto& e : graph.adjacency[v]) {
      out << "  \"" << sys.state_label(v) << "\" -> \"" << sys.state_label(e.to)
          << "\" [label=\"";
      for (size_t i = 0; i < e.coalitions.size(); ++i) {
        if (i) out << " ";
        out << coalition_label(e.coalitions[i]);
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace cbr
