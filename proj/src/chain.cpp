#include "cbr/chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

namespace cbr {

Rational DynamicsConfig::coalition_prob(Coalition s, int num_players) const {
  if (coalition_dist.empty()) {
    return Rational(1, (1u << num_players) - 1);
  }
  const auto it = coalition_dist.find(s);
  if (it == coalition_dist.end()) {
    throw ValidationError("coalition distribution missing " +
                          coalition_label(s));
  }
  return it->second;
}

Rational DynamicsConfig::f(Coalition s, int state) const {
  if (!mutation_scale) return Rational(1);
  const Rational value = mutation_scale(s, state);
  if (value <= 0) {
    throw ValidationError("mutation scale must be strictly positive");
  }
  return value;
}

Rational DynamicsConfig::max_mutation_scale(const DeviationSystem& sys) const {
  if (!mutation_scale) return Rational(1);
  Rational best(0);
  for (Coalition s : enumerate_coalitions(sys.num_players())) {
    for (int a = 0; a < sys.num_states(); ++a) {
      best = std::max(best, f(s, a));
    }
  }
  return best;
}

namespace {

void validate_config(const DynamicsConfig& cfg, const DeviationSystem& sys) {
  if (cfg.coalition_dist.empty()) return;
  Rational total(0);
  const auto coalitions = enumerate_coalitions(sys.num_players());
  if (cfg.coalition_dist.size() != coalitions.size()) {
    throw ValidationError("coalition distribution must cover all " +
                          std::to_string(coalitions.size()) + " coalitions");
  }
  for (Coalition s : coalitions) {
    const Rational p = cfg.coalition_prob(s, sys.num_players());
    if (p <= 0) {
      throw ValidationError("p_S must be positive for " + coalition_label(s));
    }
    total += p;
  }
  if (total != 1) {
    throw ValidationError("coalition distribution must sum to 1, got " +
                          to_string(total));
  }
}

}  // namespace

TransitionMatrix build_unperturbed(const DeviationSystem& sys,
                                   const DynamicsConfig& cfg) {
  validate_config(cfg, sys);
  const int n = sys.num_states();
  TransitionMatrix m;
  m.num_states = n;
  m.epsilon = 0;
  m.entries.assign(static_cast<size_t>(n) * n, Rational(0));
  const auto coalitions = enumerate_coalitions(sys.num_players());
  for (int a = 0; a < n; ++a) {
    for (Coalition s : coalitions) {
      const Rational p_s = cfg.coalition_prob(s, sys.num_players());
      const std::vector<int> improving = sys.improving(s, a);
      if (improving.empty()) {
        m.at(a, a) += p_s;
      } else {
        const Rational share = p_s / Rational(improving.size());
        for (int target : improving) m.at(a, target) += share;
      }
    }
  }
  return m;
}

TransitionMatrix build_perturbed(const DeviationSystem& sys,
                                 const DynamicsConfig& cfg,
                                 const Rational& epsilon) {
  validate_config(cfg, sys);
  const Rational m_scale = cfg.max_mutation_scale(sys);
  if (!(epsilon > 0 && epsilon < 1 / m_scale)) {
    throw ValidationError("epsilon must lie in (0, 1/M) with M = " +
                          to_string(m_scale));
  }
  const int n = sys.num_states();
  TransitionMatrix m;
  m.num_states = n;
  m.epsilon = epsilon;
  m.entries.assign(static_cast<size_t>(n) * n, Rational(0));
  const auto coalitions = enumerate_coalitions(sys.num_players());
  for (int a = 0; a < n; ++a) {
    for (Coalition s : coalitions) {
      const Rational p_s = cfg.coalition_prob(s, sys.num_players());
      const Rational err = cfg.f(s, a) * epsilon;
      const std::vector<int> improving = sys.improving(s, a);
      const std::vector<int> reachable = sys.reachable(s, a);
      if (!improving.empty()) {
        const Rational good = p_s * (1 - err) / Rational(improving.size());
        for (int target : improving) m.at(a, target) += good;
        // erroneous branch over reachable \ improving (contains a)
        std::vector<int> erroneous;
        std::set_difference(reachable.begin(), reachable.end(),
                            improving.begin(), improving.end(),
                            std::back_inserter(erroneous));
        const Rational bad = p_s * err / Rational(erroneous.size());
        for (int target : erroneous) m.at(a, target) += bad;
      } else {
        // no improving move: stay, or err to reachable \ {a}
        std::vector<int> erroneous;
        for (int target : reachable) {
          if (target != a) erroneous.push_back(target);
        }
        if (erroneous.empty()) {
          // nowhere to err; the coalition necessarily stays
          m.at(a, a) += p_s;
        } else {
          m.at(a, a) += p_s * (1 - err);
          const Rational bad = p_s * err / Rational(erroneous.size());
          for (int target : erroneous) m.at(a, target) += bad;
        }
      }
    }
  }
  return m;
}

namespace {

// Exact stationary distribution: solve mu (P - I) = 0 with sum(mu) = 1 by
// rational Gaussian elimination on the transposed system.
std::vector<Rational> solve_stationary_exact(const TransitionMatrix& m,
                                             const std::vector<int>& states) {
  const int k = static_cast<int>(states.size());
  // A x = b where A = (P^T - I) restricted to `states`, last row := ones.
  std::vector<std::vector<Rational>> a(
      k, std::vector<Rational>(k + 1, Rational(0)));
  for (int row = 0; row < k - 1 || (k == 1 && row < 0); ++row) {
    for (int col = 0; col < k; ++col) {
      a[row][col] = m.at(states[col], states[row]);
      if (row == col) a[row][col] -= 1;
    }
  }
  for (int col = 0; col < k; ++col) a[k - 1][col] = 1;
  a[k - 1][k] = 1;

  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int row = col; row < k; ++row) {
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot == -1) {
      throw std::runtime_error("degenerate stationary system");
    }
    std::swap(a[col], a[pivot]);
    const Rational inv = 1 / a[col][col];
    for (int j = col; j <= k; ++j) a[col][j] *= inv;
    for (int row = 0; row < k; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (int j = col; j <= k; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  std::vector<Rational> mu(m.num_states, Rational(0));
  for (int col = 0; col < k; ++col) mu[states[col]] = a[col][k];
  return mu;
}

std::vector<Rational> solve_stationary_power(const TransitionMatrix& m) {
  const int n = m.num_states;
  std::vector<double> p(static_cast<size_t>(n) * n);
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = static_cast<double>(m.entries[i]);
  }
  std::vector<double> mu(n, 1.0 / n), next(n);
  for (int iter = 0; iter < 2000000; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const double w = mu[i];
      if (w == 0.0) continue;
      const double* row = &p[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) next[j] += w * row[j];
    }
    double residual = 0;
    for (int j = 0; j < n; ++j) residual += std::abs(next[j] - mu[j]);
    mu.swap(next);
    if (residual < 1e-12) break;
  }
  std::vector<Rational> out(n);
  Rational total(0);
  for (int j = 0; j < n; ++j) {
    out[j] = Rational(static_cast<long long>(std::llround(mu[j] * 1e15)),
                      1000000000000000LL);
    total += out[j];
  }
  for (int j = 0; j < n; ++j) out[j] /= total;
  return out;
}

}  // namespace

StationaryDistribution stationary(const TransitionMatrix& m) {
  if (!(m.epsilon > 0)) {
    throw ValidationError(
        "stationary() without a designated class requires epsilon > 0");
  }
  StationaryDistribution out;
  out.epsilon = m.epsilon;
  std::vector<int> all(m.num_states);
  for (int i = 0; i < m.num_states; ++i) all[i] = i;
  if (m.num_states <= kExactSolveLimit) {
    out.probabilities = solve_stationary_exact(m, all);
    out.exact = true;
  } else {
    out.probabilities = solve_stationary_power(m);
    out.exact = false;
  }
  return out;
}

StationaryDistribution stationary(const TransitionMatrix& m,
                                  const std::vector<int>& recurrent_class) {
  if (recurrent_class.empty()) {
    throw ValidationError("designated recurrent class must be nonempty");
  }
  StationaryDistribution out;
  out.epsilon = m.epsilon;
  out.probabilities = solve_stationary_exact(m, recurrent_class);
  out.exact = true;
  return out;
}

std::vector<Rational> default_epsilon_sweep() {
  std::vector<Rational> sweep;
  BigInt den = 10;
  for (int i = 0; i < 6; ++i) {
    sweep.emplace_back(BigInt(1), den);
    den *= 10;
  }
  return sweep;
}

StableSetReport stochastically_stable_set(const DeviationSystem& sys,
                                          const DynamicsConfig& cfg,
                                          std::vector<Rational> sweep) {
  if (sweep.empty()) sweep = default_epsilon_sweep();
  for (size_t i = 1; i < sweep.size(); ++i) {
    if (!(sweep[i] < sweep[i - 1])) {
      throw ValidationError("epsilon sweep must be strictly decreasing");
    }
  }
  const Rational m_scale = cfg.max_mutation_scale(sys);
  for (const Rational& eps : sweep) {
    if (!(eps > 0 && eps < 1 / m_scale)) {
      throw ValidationError("sweep epsilon out of (0, 1/M)");
    }
  }

  StableSetReport report;
  report.epsilons = sweep;
  for (const Rational& eps : sweep) {
    report.sweep.push_back(stationary(build_perturbed(sys, cfg, eps)));
  }

  const auto graph = build_deviation_graph(sys, cfg.mode);
  report.structure = recurrent_structure(graph);
  report.structural_stable = report.structure.recurrent_states();

  // Numeric rule: mass >= threshold at the smallest epsilon and not
  // shrinking by more than 2x on the last sweep step (transient mass
  // shrinks roughly with epsilon).
  // A stable state's mass converges to a positive limit along the sweep
  // while a transient state's mass shrinks proportionally to epsilon, so
  // the convergence-ratio test is the discriminating signal: stable iff
  // the mass did not shrink by more than 2x on the final sweep step. The
  // limit itself can be arbitrarily small (a rarely visited state inside
  // a large closed cycle), so no absolute cutoff is applied when a ratio
  // is available; a single-point sweep falls back to the mass threshold.
  const auto& last = report.sweep.back().probabilities;
  if (report.sweep.size() > 1) {
    const auto& prev = report.sweep[report.sweep.size() - 2].probabilities;
    for (int a = 0; a < sys.num_states(); ++a) {
      if (last[a] > 0 && last[a] * 2 >= prev[a]) {
        report.numeric_stable.push_back(a);
      }
    }
  } else {
    for (int a = 0; a < sys.num_states(); ++a) {
      if (last[a] >= kStableMassThreshold) {
        report.numeric_stable.push_back(a);
      }
    }
  }
  report.agree = report.numeric_stable == report.structural_stable;
  return report;
}

namespace {

// Minimum weight over all arborescences directed into `root` on a complete
// weighted digraph; exhaustive parent-map enumeration, nodes <= 8.
long long min_arborescence_weight(const std::vector<std::vector<int>>& weight,
                                  int root) {
  const int j = static_cast<int>(weight.size());
  if (j == 1) return 0;
  std::vector<int> nodes;
  for (int v = 0; v < j; ++v) {
    if (v != root) nodes.push_back(v);
  }
  const int k = static_cast<int>(nodes.size());
  std::vector<int> parent(k, 0);
  long long best = -1;
  while (true) {
    // parent[i] in [0, j), interpreted as parent node of nodes[i]
    bool valid = true;
    long long total = 0;
    for (int i = 0; i < k && valid; ++i) {
      if (parent[i] == nodes[i]) valid = false;
    }
    if (valid) {
      // every non-root node must reach root
      for (int i = 0; i < k && valid; ++i) {
        int v = nodes[i], hops = 0;
        while (v != root && hops <= j) {
          int idx = static_cast<int>(
              std::find(nodes.begin(), nodes.end(), v) - nodes.begin());
          v = parent[idx];
          ++hops;
        }
        if (v != root) valid = false;
      }
    }
    if (valid) {
      for (int i = 0; i < k; ++i) total += weight[nodes[i]][parent[i]];
      if (best < 0 || total < best) best = total;
    }
    int i = k - 1;
    for (; i >= 0; --i) {
      if (++parent[i] < j) break;
      parent[i] = 0;
    }
    if (i < 0) break;
  }
  return best;
}

}  // namespace

ResistanceAnalysis resistance_analysis(const DeviationSystem& sys,
                                       const DynamicsConfig& cfg) {
  const int n = sys.num_states();
  const auto graph = build_deviation_graph(sys, cfg.mode);

  ResistanceAnalysis out;
  out.structure = recurrent_structure(graph);
  out.resistance.assign(n, std::vector<int>(n, 1));
  for (int a = 0; a < n; ++a) {
    out.resistance[a][a] = 0;
    for (const auto& e : graph.adjacency[a]) out.resistance[a][e.to] = 0;
  }

  // 0-1 BFS over one-step resistances gives the minimum number of
  // mutations between any two states; class resistance is taken between
  // representatives (within-class transit is free).
  const int j = static_cast<int>(out.structure.classes.size());
  if (j > 8) {
    throw CapError("arborescence enumeration refused for J > 8 classes");
  }
  auto min_mutations_from = [&](int source) {
    std::vector<int> dist(n, INT32_MAX);
    std::deque<int> dq{source};
    dist[source] = 0;
    while (!dq.empty()) {
      const int v = dq.front();
      dq.pop_front();
      for (int w = 0; w < n; ++w) {
        if (w == v) continue;
        const int cost = out.resistance[v][w];
        if (dist[v] + cost < dist[w]) {
          dist[w] = dist[v] + cost;
          if (cost == 0) {
            dq.push_front(w);
          } else {
            dq.push_back(w);
          }
        }
      }
    }
    return dist;
  };

  out.class_resistance.assign(j, std::vector<int>(j, 0));
  for (int i = 0; i < j; ++i) {
    const auto dist = min_mutations_from(out.structure.classes[i].members[0]);
    for (int l = 0; l < j; ++l) {
      if (l != i) {
        out.class_resistance[i][l] =
            dist[out.structure.classes[l].members[0]];
      }
    }
  }

  out.stochastic_potential.resize(j);
  for (int i = 0; i < j; ++i) {
    // arborescence edges point from child toward the root; edge (v -> p)
    // costs the class resistance r_{v,p}
    out.stochastic_potential[i] = static_cast<int>(
        min_arborescence_weight(out.class_resistance, i));
  }

  out.theory_consistent = true;
  for (int i = 0; i < j; ++i) {
    if (out.stochastic_potential[i] != j - 1) out.theory_consistent = false;
    for (int l = 0; l < j; ++l) {
      if (i != l && out.class_resistance[i][l] != 1) {
        out.theory_consistent = false;
      }
    }
  }
  return out;
}

SimulationResult simulate(const DeviationSystem& sys,
                          const DynamicsConfig& cfg, const Rational& epsilon,
                          std::int64_t horizon, std::uint64_t seed,
                          std::optional<int> start_state,
                          bool keep_trajectory) {
  validate_config(cfg, sys);
  if (epsilon < 0 || horizon < 1) {
    throw ValidationError("simulate requires epsilon >= 0 and horizon >= 1");
  }
  if (epsilon > 0) {
    const Rational m_scale = cfg.max_mutation_scale(sys);
    if (!(epsilon < 1 / m_scale)) {
      throw ValidationError("epsilon must lie in [0, 1/M)");
    }
  }
  const int n = sys.num_states();
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  const auto coalitions = enumerate_coalitions(sys.num_players());
  std::vector<double> cumulative;
  cumulative.reserve(coalitions.size());
  double acc = 0;
  for (Coalition s : coalitions) {
    acc += static_cast<double>(cfg.coalition_prob(s, sys.num_players()));
    cumulative.push_back(acc);
  }

  SimulationResult result;
  result.start_state = start_state.value_or(0);
  result.visits.assign(n, 0);
  if (keep_trajectory) result.trajectory.reserve(horizon);

  int state = result.start_state;
  result.visits[state] += 1;
  const double eps = static_cast<double>(epsilon);
  for (std::int64_t t = 0; t < horizon; ++t) {
    const double u = uniform01() * acc;
    const size_t pick =
        std::lower_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin();
    const Coalition s = coalitions[std::min(pick, coalitions.size() - 1)];

    const std::vector<int> improving = sys.improving(s, state);
    bool mutated = false;
    int next = state;
    const double err = eps > 0 ? static_cast<double>(cfg.f(s, state)) * eps : 0;
    const bool make_error = err > 0 && uniform01() < err;
    if (!make_error) {
      if (!improving.empty()) {
        next = improving[static_cast<size_t>(uniform01() * improving.size()) %
                         improving.size()];
      }
    } else {
      const std::vector<int> reachable = sys.reachable(s, state);
      std::vector<int> erroneous;
      if (!improving.empty()) {
        std::set_difference(reachable.begin(), reachable.end(),
                            improving.begin(), improving.end(),
                            std::back_inserter(erroneous));
      } else {
        for (int target : reachable) {
          if (target != state) erroneous.push_back(target);
        }
      }
      if (!erroneous.empty()) {
        mutated = true;
        next = erroneous[static_cast<size_t>(uniform01() * erroneous.size()) %
                         erroneous.size()];
      }
    }
    state = next;
    result.visits[state] += 1;
    if (keep_trajectory) result.trajectory.push_back({s, mutated, state});
  }
  return result;
}

}  // namespace cbr
