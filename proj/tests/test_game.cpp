#include <doctest.h>

#include "cbr/game.hpp"
#include "fixtures.hpp"

using namespace cbr;
using namespace cbr::testing;

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(*parse_rational("3/5")) == "3/5");
  CHECK(to_string(*parse_rational("-10")) == "-10");
  CHECK(to_string(*parse_rational("4/2")) == "2");
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("one").has_value());
  CHECK(!parse_rational("1.5").has_value());
  CHECK(to_decimal_string(Rational(1, 3), 6) == "0.333333");
  CHECK(to_decimal_string(Rational(-1, 2), 3) == "-0.500");
  CHECK(to_decimal_string(Rational(2, 1), 2) == "2.00");
}

TEST_CASE("profile index round-trip") {
  const Game g = example2();
  CHECK(g.num_profiles() == 9);
  for (int k = 0; k < g.num_profiles(); ++k) {
    CHECK(g.index_of(g.profile_at(k)) == k);
  }
}

TEST_CASE("profiles are lexicographic") {
  const Game g = prisoners_dilemma();
  const auto profiles = enumerate_profiles(g);
  REQUIRE(profiles.size() == 4);
  CHECK(profiles[0] == Profile{0, 0});
  CHECK(profiles[1] == Profile{0, 1});
  CHECK(profiles[2] == Profile{1, 0});
  CHECK(profiles[3] == Profile{1, 1});
}

TEST_CASE("coalition enumeration") {
  CHECK(enumerate_coalitions(1).size() == 1);
  CHECK(enumerate_coalitions(2) == std::vector<Coalition>{1, 2, 3});
  CHECK(enumerate_coalitions(3).size() == 7);
  for (int n = 1; n <= 6; ++n) {
    const auto cs = enumerate_coalitions(n);
    CHECK(cs.size() == (1u << n) - 1);
    for (Coalition s : cs) CHECK(coalition_size(s) >= 1);
  }
  CHECK_THROWS_AS(enumerate_coalitions(17), CapError);
}

TEST_CASE("validate_game accepts a total table") {
  RawGame raw;
  raw.num_players = 2;
  raw.action_names = {{"a1", "a2"}, {"b1", "b2"}};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      raw.entries.push_back({{r, c}, {Rational(r), Rational(c)}});
    }
  }
  const Game g = validate_game(raw);
  CHECK(g.num_profiles() == 4);
  CHECK(g.payoff(0, Profile{1, 0}) == 1);
}

TEST_CASE("validate_game reports a missing entry by profile") {
  RawGame raw;
  raw.num_players = 2;
  raw.action_names = {{"a1", "a2"}, {"b1", "b2"}};
  raw.entries.push_back({{0, 0}, {Rational(0), Rational(0)}});
  raw.entries.push_back({{0, 1}, {Rational(0), Rational(0)}});
  raw.entries.push_back({{1, 1}, {Rational(0), Rational(0)}});
  CHECK_THROWS_WITH_AS(validate_game(raw),
                       doctest::Contains("missing payoff row for profile "
                                         "(a2,b1)"),
                       ValidationError);
}

TEST_CASE("validate_game rejects duplicates and degenerate headers") {
  RawGame raw;
  raw.num_players = 0;
  CHECK_THROWS_AS(validate_game(raw), ValidationError);

  raw.num_players = 1;
  raw.action_names = {{}};
  CHECK_THROWS_AS(validate_game(raw), ValidationError);

  raw.action_names = {{"x"}};
  raw.entries.push_back({{0}, {Rational(0)}});
  raw.entries.push_back({{0}, {Rational(1)}});
  CHECK_THROWS_WITH_AS(validate_game(raw), doctest::Contains("duplicate"),
                       ValidationError);
}

TEST_CASE("one-player one-action game is valid") {
  RawGame raw;
  raw.num_players = 1;
  raw.action_names = {{"x"}};
  raw.entries.push_back({{0}, {Rational(0)}});
  const Game g = validate_game(raw);
  CHECK(g.num_profiles() == 1);
  CHECK(enumerate_profiles(g).size() == 1);
}

TEST_CASE("profile cap is enforced") {
  RawGame raw;
  raw.num_players = 2;
  std::vector<std::string> many;
  for (int i = 0; i < 300; ++i) many.push_back("x" + std::to_string(i));
  raw.action_names = {many, many};  // 90000 profiles > 2^16
  CHECK_THROWS_AS(validate_game(raw), CapError);
}

TEST_CASE("payoff lookup is pure") {
  const Game g = prisoners_dilemma();
  const Rational first = g.payoff(0, 3);
  CHECK(g.payoff(0, 3) == first);
  CHECK(g.payoff(0, 3) == Rational(-5));
}
