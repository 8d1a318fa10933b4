#ifndef CBR_TESTS_FIXTURES_HPP
#define CBR_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "cbr/deviation.hpp"
#include "cbr/game.hpp"

namespace cbr::testing {

// Two-player game from a payoff matrix: cell (r, c) holds the pair
// (u1, u2) for profile (row action r, column action c).
inline Game make_bimatrix(
    const std::vector<std::vector<std::pair<long long, long long>>>& cells) {
  const int rows = static_cast<int>(cells.size());
  const int cols = static_cast<int>(cells[0].size());
  std::vector<std::vector<Rational>> payoffs;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      payoffs.push_back({Rational(cells[r][c].first),
                         Rational(cells[r][c].second)});
    }
  }
  return Game({rows, cols}, std::move(payoffs));
}

inline Game prisoners_dilemma() {
  return make_bimatrix({{{-2, -2}, {-10, -1}},
                        {{-1, -10}, {-5, -5}}});
}

inline Game example2(long long a2b2_u1 = 4) {
  return make_bimatrix({{{4, 4}, {0, 0}, {0, 0}},
                        {{0, 0}, {a2b2_u1, 5}, {1, 6}},
                        {{0, 0}, {2, 5}, {6, 1}}});
}

inline Game young_3x3() {
  return make_bimatrix({{{6, 6}, {0, 5}, {0, 0}},
                        {{5, 0}, {7, 7}, {5, 5}},
                        {{0, 0}, {5, 5}, {8, 8}}});
}

// Random game with integer payoffs in [lo, hi].
inline Game random_game(std::mt19937_64& rng, const std::vector<int>& counts,
                        int lo = -5, int hi = 5) {
  int total = 1;
  for (int c : counts) total *= c;
  std::uniform_int_distribution<int> payoff(lo, hi);
  std::vector<std::vector<Rational>> payoffs(total);
  for (int k = 0; k < total; ++k) {
    for (size_t i = 0; i < counts.size(); ++i) {
      payoffs[k].emplace_back(payoff(rng));
    }
  }
  return Game(counts, std::move(payoffs));
}

// Brute-force oracle: scans every profile of the game and applies the
// improvement inequalities verbatim, independent of the deviation module's
// reachable-set enumeration.
inline std::vector<int> oracle_improving(const Game& g, Coalition s, int a,
                                         ImprovementMode mode) {
  std::vector<int> out;
  const Profile base = g.profile_at(a);
  for (int k = 0; k < g.num_profiles(); ++k) {
    if (k == a) continue;
    const Profile p = g.profile_at(k);
    bool fixed_outside = true;
    for (int i = 0; i < g.num_players(); ++i) {
      if (!coalition_contains(s, i) && p[i] != base[i]) fixed_outside = false;
    }
    if (!fixed_outside) continue;
    bool all_ok = true, some_strict = false;
    for (int i = 0; i < g.num_players(); ++i) {
      if (!coalition_contains(s, i)) continue;
      if (mode == ImprovementMode::kStrict) {
        if (!(g.payoff(i, k) > g.payoff(i, a))) all_ok = false;
      } else {
        if (g.payoff(i, k) < g.payoff(i, a)) all_ok = false;
        if (g.payoff(i, k) > g.payoff(i, a)) some_strict = true;
      }
    }
    if (all_ok && (mode == ImprovementMode::kStrict || some_strict)) {
      out.push_back(k);
    }
  }
  return out;
}

// Definition-level equilibrium oracle built on oracle_improving.
inline std::vector<int> oracle_equilibria(const Game& g,
                                          ImprovementMode mode) {
  std::vector<int> out;
  for (int a = 0; a < g.num_profiles(); ++a) {
    bool ok = true;
    for (Coalition s : enumerate_coalitions(g.num_players())) {
      if (!oracle_improving(g, s, a, mode).empty()) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

}  // namespace cbr::testing

#endif
