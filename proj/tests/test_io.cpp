#include <doctest.h>

#include "cbr/equilibrium.hpp"
#include "cbr/io.hpp"

using namespace cbr;

namespace {

const char* kTinyGame = R"({
  "players": 2,
  "actions": [["a1", "a2"], ["b1", "b2"]],
  "payoffs": [
    {"profile": ["a1", "b1"], "values": [1, "1/2"]},
    {"profile": ["a1", "b2"], "values": [0, 0]},
    {"profile": ["a2", "b1"], "values": [0, 0]},
    {"profile": ["a2", "b2"], "values": ["-3/2", 2]}
  ]
})";

}  // namespace

TEST_CASE("well-formed strategic game file") {
  const ParsedInput input = parse_game_text(kTinyGame);
  REQUIRE(std::holds_alternative<Game>(input));
  const Game& g = std::get<Game>(input);
  CHECK(g.num_profiles() == 4);
  CHECK(g.payoff(1, Profile{0, 0}) == Rational(1, 2));
  CHECK(g.payoff(0, Profile{1, 1}) == Rational(-3, 2));
  CHECK(g.profile_label(0) == "(a1,b1)");
}

TEST_CASE("duplicate payoff rows are rejected by name") {
  std::string text = kTinyGame;
  text.replace(text.find("\"a2\", \"b2\""), 10, "\"a1\", \"b1\"");
  CHECK_THROWS_WITH_AS(parse_game_text(text),
                       doctest::Contains("duplicate payoff row for profile "
                                         "(a1,b1)"),
                       ValidationError);
}

TEST_CASE("missing payoff rows are reported") {
  std::string text = kTinyGame;
  const auto pos = text.find(",\n    {\"profile\": [\"a2\", \"b2\"");
  text.erase(pos, text.find("]}", pos) + 2 - pos);
  CHECK_THROWS_WITH_AS(parse_game_text(text), doctest::Contains("missing"),
                       ValidationError);
}

TEST_CASE("non-rational payoff literal is a parse error") {
  std::string text = kTinyGame;
  text.replace(text.find("\"1/2\""), 5, "\"half\"");
  CHECK_THROWS_AS(parse_game_text(text), ParseError);
  text = kTinyGame;
  text.replace(text.find("\"1/2\""), 5, "0.5");
  CHECK_THROWS_AS(parse_game_text(text), ParseError);
}

TEST_CASE("unknown action names are rejected") {
  std::string text = kTinyGame;
  text.replace(text.find("[\"a2\", \"b2\"]"), 12, "[\"a9\", \"b2\"]");
  CHECK_THROWS_WITH_AS(parse_game_text(text),
                       doctest::Contains("unknown action"), ParseError);
}

TEST_CASE("network game file") {
  const char* text = R"({
    "nodes": 2,
    "values": [
      {"edges": [], "values": [0, 1]},
      {"edges": [[1, 2]], "values": [1, 0]}
    ]
  })";
  const ParsedInput input = parse_game_text(text);
  REQUIRE(std::holds_alternative<NetworkGame>(input));
  const NetworkGame& g = std::get<NetworkGame>(input);
  CHECK(g.num_networks() == 2);
  CHECK(g.value(0, 1) == 1);
}

TEST_CASE("malformed edge list is rejected") {
  const char* text = R"({
    "nodes": 2,
    "values": [
      {"edges": [], "values": [0, 1]},
      {"edges": [[1, 1]], "values": [1, 0]}
    ]
  })";
  CHECK_THROWS_WITH_AS(parse_game_text(text),
                       doctest::Contains("malformed edge"), ParseError);
}

TEST_CASE("incomplete network table is rejected") {
  const char* text = R"({
    "nodes": 2,
    "values": [{"edges": [], "values": [0, 1]}]
  })";
  CHECK_THROWS_WITH_AS(parse_game_text(text),
                       doctest::Contains("missing value row"), ParseError);
}

TEST_CASE("unknown document kind") {
  CHECK_THROWS_WITH_AS(parse_game_text("{\"games\": 1}"),
                       doctest::Contains("cannot infer"), ParseError);
  CHECK_THROWS_AS(parse_game_text("not json"), ParseError);
}

TEST_CASE("checked-in example files parse and analyze") {
  const auto pd = parse_game_file(std::string(CBR_DATA_DIR) +
                                  "/prisoners_dilemma.json");
  REQUIRE(std::holds_alternative<Game>(pd));
  CHECK(find_equilibria_scan(std::get<Game>(pd), ImprovementMode::kStrict)
            .empty());

  const auto ex2 = parse_game_file(std::string(CBR_DATA_DIR) +
                                   "/example2.json");
  REQUIRE(std::holds_alternative<Game>(ex2));
  const Game& g = std::get<Game>(ex2);
  CHECK(find_equilibria_scan(g, ImprovementMode::kStrict) ==
        std::vector<int>{g.index_of({0, 0})});

  const auto net = parse_game_file(std::string(CBR_DATA_DIR) +
                                   "/net3_total_edges.json");
  REQUIRE(std::holds_alternative<NetworkGame>(net));
  CHECK(find_strongly_stable(std::get<NetworkGame>(net)) ==
        std::vector<NetworkMask>{7});
}
