#include "cbr/deviation.hpp"

#include <algorithm>

namespace cbr {

namespace {

// Enumerates, in ascending index order, all profiles that agree with the
// base profile outside S.
template <typename Visit>
void for_each_reachable(const Game& g, Coalition s, int base, Visit&& visit) {
  const Profile base_profile = g.profile_at(base);
  Profile p = base_profile;
  const int n = g.num_players();
  // mixed-radix counter over the coordinates in S
  for (int i = 0; i < n; ++i) {
    if (coalition_contains(s, i)) p[i] = 0;
  }
  while (true) {
    visit(g.index_of(p));
    int i = n - 1;
    for (; i >= 0; --i) {
      if (!coalition_contains(s, i)) continue;
      if (++p[i] < g.num_actions(i)) break;
      p[i] = 0;
    }
    if (i < 0) break;
  }
}

bool improves(const Game& g, Coalition s, int base, int candidate,
              ImprovementMode mode) {
  if (candidate == base) return false;
  if (mode == ImprovementMode::kStrict) {
    for (int i = 0; i < g.num_players(); ++i) {
      if (!coalition_contains(s, i)) continue;
      if (!(g.payoff(i, candidate) > g.payoff(i, base))) return false;
    }
    return true;
  }
  bool some_strict = false;
  for (int i = 0; i < g.num_players(); ++i) {
    if (!coalition_contains(s, i)) continue;
    if (g.payoff(i, candidate) < g.payoff(i, base)) return false;
    if (g.payoff(i, candidate) > g.payoff(i, base)) some_strict = true;
  }
  return some_strict;
}

}  // namespace

DeviationSet reachable_profiles(const Game& g, Coalition s, int a) {
  DeviationSet out{a, s, ImprovementMode::kStrict, {}};
  for_each_reachable(g, s, a, [&](int k) { out.members.push_back(k); });
  std::sort(out.members.begin(), out.members.end());
  return out;
}

DeviationSet improving_set(const Game& g, Coalition s, int a,
                           ImprovementMode mode) {
  DeviationSet out{a, s, mode, {}};
  for_each_reachable(g, s, a, [&](int k) {
    if (improves(g, s, a, k, mode)) out.members.push_back(k);
  });
  std::sort(out.members.begin(), out.members.end());
  return out;
}

DeviationSet erroneous_set(const Game& g, Coalition s, int a,
                           ImprovementMode mode) {
  DeviationSet out{a, s, mode, {}};
  for_each_reachable(g, s, a, [&](int k) {
    if (!improves(g, s, a, k, mode)) out.members.push_back(k);
  });
  std::sort(out.members.begin(), out.members.end());
  return out;
}

}  // namespace cbr
