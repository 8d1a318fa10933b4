#include <doctest.h>

#include <algorithm>

#include "cbr/deviation.hpp"
#include "fixtures.hpp"

using namespace cbr;
using namespace cbr::testing;

namespace {

int idx(const Game& g, std::initializer_list<int> p) {
  return g.index_of(Profile(p));
}

}  // namespace

TEST_CASE("reachable profiles fix coordinates outside the coalition") {
  const Game pd = prisoners_dilemma();

  // grand coalition reaches everything
  const auto all = reachable_profiles(pd, 0b11, idx(pd, {1, 1}));
  CHECK(all.members == std::vector<int>{0, 1, 2, 3});

  // only player 1's coordinate varies
  const auto solo = reachable_profiles(pd, 0b01, idx(pd, {0, 0}));
  CHECK(solo.members == std::vector<int>{idx(pd, {0, 0}), idx(pd, {1, 0})});

  const Game ex2 = example2();
  const auto col = reachable_profiles(ex2, 0b10, idx(ex2, {1, 1}));
  CHECK(col.members == std::vector<int>{idx(ex2, {1, 0}), idx(ex2, {1, 1}),
                                        idx(ex2, {1, 2})});
}

TEST_CASE("improving sets on the worked examples") {
  const Game pd = prisoners_dilemma();
  const auto joint = improving_set(pd, 0b11, idx(pd, {1, 1}),
                                   ImprovementMode::kStrict);
  CHECK(joint.members == std::vector<int>{idx(pd, {0, 0})});

  const Game ex2 = example2();
  const int a1b1 = idx(ex2, {0, 0});
  CHECK(improving_set(ex2, 0b11, a1b1, ImprovementMode::kStrict)
            .members.empty());
  CHECK(improving_set(ex2, 0b11, a1b1, ImprovementMode::kWeak).members ==
        std::vector<int>{idx(ex2, {1, 1})});
}

TEST_CASE("erroneous set complements the improving set") {
  const Game pd = prisoners_dilemma();
  const int a2b2 = idx(pd, {1, 1});

  const auto err = erroneous_set(pd, 0b11, a2b2, ImprovementMode::kStrict);
  CHECK(err.members.size() == 3);
  CHECK(std::count(err.members.begin(), err.members.end(), a2b2) == 1);

  const auto solo = erroneous_set(pd, 0b01, a2b2, ImprovementMode::kStrict);
  CHECK(solo.members == std::vector<int>{idx(pd, {0, 1}), a2b2});
}

TEST_CASE("partition, monotonicity, locality against the brute-force oracle") {
  std::mt19937_64 rng(20240901);
  for (int trial = 0; trial < 60; ++trial) {
    const Game g = trial % 3 == 0 ? random_game(rng, {2, 2, 2})
                 : trial % 3 == 1 ? random_game(rng, {3, 2})
                                  : random_game(rng, {2, 3, 2}, -2, 2);
    for (Coalition s : enumerate_coalitions(g.num_players())) {
      for (int a = 0; a < g.num_profiles(); ++a) {
        const auto reach = reachable_profiles(g, s, a).members;
        int expected_size = 1;
        for (int i = 0; i < g.num_players(); ++i) {
          if (coalition_contains(s, i)) expected_size *= g.num_actions(i);
        }
        CHECK(static_cast<int>(reach.size()) == expected_size);
        CHECK(std::binary_search(reach.begin(), reach.end(), a));

        for (ImprovementMode mode :
             {ImprovementMode::kStrict, ImprovementMode::kWeak}) {
          const auto good = improving_set(g, s, a, mode).members;
          const auto bad = erroneous_set(g, s, a, mode).members;

          CHECK(good == oracle_improving(g, s, a, mode));
          CHECK(!std::binary_search(good.begin(), good.end(), a));
          CHECK(std::binary_search(bad.begin(), bad.end(), a));

          std::vector<int> merged;
          std::merge(good.begin(), good.end(), bad.begin(), bad.end(),
                     std::back_inserter(merged));
          CHECK(merged == reach);

          // locality
          const Profile base = g.profile_at(a);
          for (int k : good) {
            const Profile p = g.profile_at(k);
            for (int i = 0; i < g.num_players(); ++i) {
              if (!coalition_contains(s, i)) CHECK(p[i] == base[i]);
            }
          }
        }

        // strict implies weak
        const auto strict =
            improving_set(g, s, a, ImprovementMode::kStrict).members;
        const auto weak =
            improving_set(g, s, a, ImprovementMode::kWeak).members;
        CHECK(std::includes(weak.begin(), weak.end(), strict.begin(),
                            strict.end()));
      }
    }
  }
}
