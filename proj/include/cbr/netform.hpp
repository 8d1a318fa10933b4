#ifndef CBR_NETFORM_HPP
#define CBR_NETFORM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cbr/devsystem.hpp"
#include "cbr/equilibrium.hpp"

namespace cbr {

// Exhaustive analysis enumerates all 2^(n(n-1)/2) networks.
inline constexpr int kMaxNetformChainNodes = 5;
inline constexpr int kMaxNetformStabilityNodes = 6;

// Simple undirected network on n nodes, stored as a bitmask over the
// canonical edge order (0,1),(0,2),...,(1,2),... (i<j lexicographic).
using NetworkMask = std::uint32_t;

int num_edge_slots(int num_nodes);                 // n(n-1)/2
int edge_slot(int num_nodes, int i, int j);        // i != j
bool has_link(NetworkMask g, int num_nodes, int i, int j);
std::string network_label(NetworkMask g, int num_nodes);  // "{1-2,2-3}"

// Network formation game: an exact value for every player at every network.
class NetworkGame {
 public:
  // values[g][i] = payoff of player i at network mask g.
  NetworkGame(int num_nodes, std::vector<std::vector<Rational>> values);

  int num_nodes() const { return num_nodes_; }
  int num_networks() const { return 1 << num_edge_slots(num_nodes_); }
  const Rational& value(int player, NetworkMask g) const {
    return values_[g][player];
  }

 private:
  int num_nodes_;
  std::vector<std::vector<Rational>> values_;
};

// Definition-7 obtainability: added links need both endpoints in S,
// deleted links need at least one endpoint in S.
bool obtainable(NetworkMask from, NetworkMask to, Coalition s, int num_nodes);

// G(S,g): all networks obtainable from g via S; contains g.
std::vector<NetworkMask> network_reachable(const NetworkGame& game,
                                           Coalition s, NetworkMask g);

// Improving deviations of S at g. Weak mode is the Jackson-van den
// Nouweland notion the model uses; strict mode is exposed for parity with
// the strategic-game side.
std::vector<NetworkMask> network_improving_set(
    const NetworkGame& game, Coalition s, NetworkMask g,
    ImprovementMode mode = ImprovementMode::kWeak);

// Networks no coalition can improve upon.
std::vector<NetworkMask> find_strongly_stable(
    const NetworkGame& game, ImprovementMode mode = ImprovementMode::kWeak);

RecurrentStructure network_recurrent_structure(
    const NetworkGame& game, ImprovementMode mode = ImprovementMode::kWeak);

// Adapter into the chain module: states are network masks.
class NetworkSystem final : public DeviationSystem {
 public:
  NetworkSystem(const NetworkGame& game,
                ImprovementMode mode = ImprovementMode::kWeak);

  int num_states() const override;
  int num_players() const override;
  std::vector<int> reachable(Coalition s, int state) const override;
  std::vector<int> improving(Coalition s, int state) const override;
  std::string state_label(int state) const override;

  const NetworkGame& game() const { return game_; }
  ImprovementMode mode() const { return mode_; }

 private:
  const NetworkGame& game_;
  ImprovementMode mode_;
};

}  // namespace cbr

#endif
