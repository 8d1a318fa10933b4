#ifndef CBR_CHAIN_HPP
#define CBR_CHAIN_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "cbr/devsystem.hpp"
#include "cbr/equilibrium.hpp"

namespace cbr {

// Parameters of the coalitional better-response process. Defaults follow
// the free choices left open by the model: uniform coalition selection,
// uniform choice rules over their supports, unit mutation scale.
struct DynamicsConfig {
  ImprovementMode mode = ImprovementMode::kStrict;

  // p_S; empty means uniform over all 2^n - 1 coalitions. When set, must
  // cover every coalition with a positive probability and sum to 1.
  std::map<Coalition, Rational> coalition_dist;

  // f(S, state) > 0; null means f == 1.
  std::function<Rational(Coalition, int)> mutation_scale;

  Rational coalition_prob(Coalition s, int num_players) const;
  Rational f(Coalition s, int state) const;
  // M = max f over all (S, state).
  Rational max_mutation_scale(const DeviationSystem& sys) const;
};

// Row-stochastic transition matrix over the system's states, exact.
struct TransitionMatrix {
  int num_states = 0;
  Rational epsilon;                 // 0 for the unperturbed law
  std::vector<Rational> entries;    // row-major

  const Rational& at(int from, int to) const {
    return entries[static_cast<size_t>(from) * num_states + to];
  }
  Rational& at(int from, int to) {
    return entries[static_cast<size_t>(from) * num_states + to];
  }
};

// Unperturbed law P0: a uniform coalition plays a uniform improving move.
TransitionMatrix build_unperturbed(const DeviationSystem& sys,
                                   const DynamicsConfig& cfg);

// Perturbed law P^eps with tremble probability f(S,a)*eps; 0 < eps < 1/M.
TransitionMatrix build_perturbed(const DeviationSystem& sys,
                                 const DynamicsConfig& cfg,
                                 const Rational& epsilon);

struct StationaryDistribution {
  Rational epsilon;
  std::vector<Rational> probabilities;  // exact when solved over rationals
  bool exact = true;
};

// Unique stationary distribution of an irreducible matrix (eps > 0).
// Exact rational solve up to kExactSolveLimit states, double-precision
// power iteration beyond.
inline constexpr int kExactSolveLimit = 512;
StationaryDistribution stationary(const TransitionMatrix& m);

// eps = 0 variant: the stationary distribution supported on one
// designated recurrent class.
StationaryDistribution stationary(const TransitionMatrix& m,
                                  const std::vector<int>& recurrent_class);

// Dual certification of the stochastically stable set: an epsilon sweep of
// stationary masses against the recurrent classes of P0.
struct StableSetReport {
  std::vector<Rational> epsilons;                  // decreasing
  std::vector<StationaryDistribution> sweep;       // one per epsilon
  std::vector<int> numeric_stable;                 // sorted states
  std::vector<int> structural_stable;              // union of recurrent classes
  RecurrentStructure structure;
  bool agree = false;
  std::vector<int> stable() const { return structural_stable; }
};

// Default sweep 10^-1 .. 10^-6. The numeric rule accepts a state when its
// positive mass did not shrink by more than 2x on the final sweep step
// (transient mass shrinks with epsilon; stable mass converges). With a
// single-point sweep it falls back to the absolute mass threshold.
std::vector<Rational> default_epsilon_sweep();
inline const Rational kStableMassThreshold = Rational(1, 1000);

StableSetReport stochastically_stable_set(const DeviationSystem& sys,
                                          const DynamicsConfig& cfg,
                                          std::vector<Rational> sweep = {});

// One-step resistances, class-to-class resistances (computed, not
// assumed), and stochastic potentials via exhaustive minimum-arborescence
// enumeration on the reduced class graph (J <= 8).
struct ResistanceAnalysis {
  RecurrentStructure structure;
  std::vector<std::vector<int>> resistance;        // r(a,a') in {0,1}; diag 0
  std::vector<std::vector<int>> class_resistance;  // r_ij, 0-1 shortest path
  std::vector<int> stochastic_potential;           // per class
  bool theory_consistent = false;  // r_ij==1 off-diagonal, potential==J-1
};
ResistanceAnalysis resistance_analysis(const DeviationSystem& sys,
                                       const DynamicsConfig& cfg);

// Seeded sample path of the process.
struct SimulationStep {
  Coalition coalition;
  bool mutated;
  int state;  // state after the step
};
struct SimulationResult {
  std::vector<SimulationStep> trajectory;  // length T
  std::vector<std::int64_t> visits;        // occupation counts incl. start
  int start_state = 0;
};
SimulationResult simulate(const DeviationSystem& sys,
                          const DynamicsConfig& cfg, const Rational& epsilon,
                          std::int64_t horizon, std::uint64_t seed,
                          std::optional<int> start_state = std::nullopt,
                          bool keep_trajectory = true);

}  // namespace cbr

#endif
