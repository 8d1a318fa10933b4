#ifndef CBR_DEVSYSTEM_HPP
#define CBR_DEVSYSTEM_HPP

#include <string>
#include <vector>

#include "cbr/deviation.hpp"
#include "cbr/game.hpp"

namespace cbr {

// Common view of a coalitional deviation process over a finite state space.
// Strategic games and network formation games both implement it, so the
// chain analyses (transition laws, stationary distributions, resistances)
// are written once against this interface.
class DeviationSystem {
 public:
  virtual ~DeviationSystem() = default;

  virtual int num_states() const = 0;
  virtual int num_players() const = 0;

  // States reachable from `state` via a move of coalition `s`;
  // always contains `state` itself.
  virtual std::vector<int> reachable(Coalition s, int state) const = 0;

  // Improving moves of coalition `s` at `state`; never contains `state`.
  virtual std::vector<int> improving(Coalition s, int state) const = 0;

  virtual std::string state_label(int state) const = 0;
};

// Strategic game under a fixed improvement mode.
class GameSystem final : public DeviationSystem {
 public:
  GameSystem(const Game& g, ImprovementMode mode) : game_(g), mode_(mode) {}

  int num_states() const override { return game_.num_profiles(); }
  int num_players() const override { return game_.num_players(); }
  std::vector<int> reachable(Coalition s, int state) const override {
    return reachable_profiles(game_, s, state).members;
  }
  std::vector<int> improving(Coalition s, int state) const override {
    return improving_set(game_, s, state, mode_).members;
  }
  std::string state_label(int state) const override {
    return game_.profile_label(state);
  }

  const Game& game() const { return game_; }
  ImprovementMode mode() const { return mode_; }

 private:
  const Game& game_;
  ImprovementMode mode_;
};

}  // namespace cbr

#endif
