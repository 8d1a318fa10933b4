#ifndef CBR_GAME_HPP
#define CBR_GAME_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbr/rational.hpp"

namespace cbr {

// Practical limits for exact analysis.
inline constexpr int kMaxProfiles = 1 << 16;
inline constexpr int kMaxPlayersForCoalitions = 16;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Action profile: one action index per player, entry i in [0, |A_i|).
using Profile = std::vector<int>;

// Coalition: nonempty subset of players as a bitmask (bit i = player i).
using Coalition = std::uint32_t;

inline int coalition_size(Coalition s) { return __builtin_popcount(s); }
inline bool coalition_contains(Coalition s, int player) {
  return (s >> player) & 1u;
}

// Human-readable coalition label with 1-based players, e.g. "{1,2}".
std::string coalition_label(Coalition s);

// Finite strategic game with an exact rational payoff for every
// (player, profile) pair. Immutable after construction.
class Game {
 public:
  // payoffs[k][i] = payoff of player i at profile index k.
  Game(std::vector<int> action_counts,
       std::vector<std::vector<Rational>> payoffs,
       std::vector<std::vector<std::string>> action_names = {});

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  int num_actions(int player) const { return action_counts_[player]; }
  const std::vector<int>& action_counts() const { return action_counts_; }
  int num_profiles() const { return num_profiles_; }

  // Lexicographic profile<->index bijection (player 0 most significant).
  int index_of(const Profile& p) const;
  Profile profile_at(int index) const;

  const Rational& payoff(int player, int profile_index) const {
    return payoffs_[profile_index][player];
  }
  const Rational& payoff(int player, const Profile& p) const {
    return payoffs_[index_of(p)][player];
  }

  const std::string& action_name(int player, int action) const {
    return action_names_[player][action];
  }
  std::string profile_label(int index) const;

 private:
  std::vector<int> action_counts_;
  int num_profiles_;
  std::vector<std::vector<Rational>> payoffs_;
  std::vector<std::vector<std::string>> action_names_;
};

// Unvalidated game description as produced by a parser; payoff entries may
// be missing or duplicated.
struct RawGame {
  int num_players = 0;
  std::vector<std::vector<std::string>> action_names;
  struct Entry {
    Profile profile;
    std::vector<Rational> values;
  };
  std::vector<Entry> entries;
};

// Checks totality, ranges and caps; returns a valid Game or throws
// ValidationError listing every defect found.
Game validate_game(const RawGame& raw);

// All profiles in lexicographic order (index order).
std::vector<Profile> enumerate_profiles(const Game& g);

// All 2^n - 1 nonempty coalitions, ascending bitmask order.
std::vector<Coalition> enumerate_coalitions(int num_players);

}  // namespace cbr

#endif
