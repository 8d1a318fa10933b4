#include "cbr/netform.hpp"

#include <algorithm>
#include <cassert>

namespace cbr {

int num_edge_slots(int num_nodes) { return num_nodes * (num_nodes - 1) / 2; }

int edge_slot(int num_nodes, int i, int j) {
  assert(i != j && i >= 0 && j >= 0 && i < num_nodes && j < num_nodes);
  if (i > j) std::swap(i, j);
  // slots of pairs (0,1),(0,2),...,(0,n-1),(1,2),...
  return i * num_nodes - i * (i + 1) / 2 + (j - i - 1);
}

bool has_link(NetworkMask g, int num_nodes, int i, int j) {
  return (g >> edge_slot(num_nodes, i, j)) & 1u;
}

std::string network_label(NetworkMask g, int num_nodes) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < num_nodes; ++i) {
    for (int j = i + 1; j < num_nodes; ++j) {
      if (!has_link(g, num_nodes, i, j)) continue;
      if (!first) out += ",";
      out += std::to_string(i + 1) + "-" + std::to_string(j + 1);
      first = false;
    }
  }
  return out + "}";
}

NetworkGame::NetworkGame(int num_nodes,
                         std::vector<std::vector<Rational>> values)
    : num_nodes_(num_nodes), values_(std::move(values)) {
  if (num_nodes < 1) {
    throw ValidationError("network game needs at least one node");
  }
  if (num_nodes > kMaxNetformStabilityNodes) {
    throw CapError("network analysis capped at " +
                   std::to_string(kMaxNetformStabilityNodes) + " nodes");
  }
  const size_t expected = 1u << num_edge_slots(num_nodes);
  if (values_.size() != expected) {
    throw ValidationError("value table must cover all " +
                          std::to_string(expected) + " networks");
  }
  for (const auto& row : values_) {
    if (static_cast<int>(row.size()) != num_nodes) {
      throw ValidationError("each value row needs one rational per player");
    }
  }
}

bool obtainable(NetworkMask from, NetworkMask to, Coalition s, int num_nodes) {
  const NetworkMask added = to & ~from;
  const NetworkMask deleted = from & ~to;
  for (int i = 0; i < num_nodes; ++i) {
    for (int j = i + 1; j < num_nodes; ++j) {
      const NetworkMask bit = 1u << edge_slot(num_nodes, i, j);
      if (added & bit) {
        if (!coalition_contains(s, i) || !coalition_contains(s, j)) {
          return false;
        }
      }
      if (deleted & bit) {
        if (!coalition_contains(s, i) && !coalition_contains(s, j)) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

bool network_improves(const NetworkGame& game, Coalition s, NetworkMask g,
                      NetworkMask candidate, ImprovementMode mode) {
  if (candidate == g) return false;
  if (mode == ImprovementMode::kStrict) {
    for (int i = 0; i < game.num_nodes(); ++i) {
      if (!coalition_contains(s, i)) continue;
      if (!(game.value(i, candidate) > game.value(i, g))) return false;
    }
    return true;
  }
  bool some_strict = false;
  for (int i = 0; i < game.num_nodes(); ++i) {
    if (!coalition_contains(s, i)) continue;
    if (game.value(i, candidate) < game.value(i, g)) return false;
    if (game.value(i, candidate) > game.value(i, g)) some_strict = true;
  }
  return some_strict;
}

void check_stability_cap(const NetworkGame& game) {
  if (game.num_nodes() > kMaxNetformStabilityNodes) {
    throw CapError("exhaustive network enumeration capped at " +
                   std::to_string(kMaxNetformStabilityNodes) + " nodes");
  }
}

}  // namespace

std::vector<NetworkMask> network_reachable(const NetworkGame& game,
                                           Coalition s, NetworkMask g) {
  check_stability_cap(game);
  std::vector<NetworkMask> out;
  const int total = game.num_networks();
  for (int candidate = 0; candidate < total; ++candidate) {
    if (obtainable(g, candidate, s, game.num_nodes())) {
      out.push_back(candidate);
    }
  }
  return out;
}

std::vector<NetworkMask> network_improving_set(const NetworkGame& game,
                                               Coalition s, NetworkMask g,
                                               ImprovementMode mode) {
  check_stability_cap(game);
  std::vector<NetworkMask> out;
  const int total = game.num_networks();
  for (int candidate = 0; candidate < total; ++candidate) {
    if (obtainable(g, candidate, s, game.num_nodes()) &&
        network_improves(game, s, g, candidate, mode)) {
      out.push_back(candidate);
    }
  }
  return out;
}

std::vector<NetworkMask> find_strongly_stable(const NetworkGame& game,
                                              ImprovementMode mode) {
  std::vector<NetworkMask> out;
  const auto coalitions = enumerate_coalitions(game.num_nodes());
  for (int g = 0; g < game.num_networks(); ++g) {
    bool stable = true;
    for (Coalition s : coalitions) {
      if (!network_improving_set(game, s, g, mode).empty()) {
        stable = false;
        break;
      }
    }
    if (stable) out.push_back(g);
  }
  return out;
}

RecurrentStructure network_recurrent_structure(const NetworkGame& game,
                                               ImprovementMode mode) {
  NetworkSystem sys(game, mode);
  return recurrent_structure(build_deviation_graph(sys, mode));
}

NetworkSystem::NetworkSystem(const NetworkGame& game, ImprovementMode mode)
    : game_(game), mode_(mode) {
  // full chain analysis enumerates all network pairs; tighter cap
  if (game.num_nodes() > kMaxNetformChainNodes) {
    throw CapError("network chain analysis capped at " +
                   std::to_string(kMaxNetformChainNodes) + " nodes");
  }
}

int NetworkSystem::num_states() const { return game_.num_networks(); }
int NetworkSystem::num_players() const { return game_.num_nodes(); }

std::vector<int> NetworkSystem::reachable(Coalition s, int state) const {
  const auto nets = network_reachable(game_, s, state);
  return std::vector<int>(nets.begin(), nets.end());
}

std::vector<int> NetworkSystem::improving(Coalition s, int state) const {
  const auto nets = network_improving_set(game_, s, state, mode_);
  return std::vector<int>(nets.begin(), nets.end());
}

std::string NetworkSystem::state_label(int state) const {
  return network_label(state, game_.num_nodes());
}

}  // namespace cbr
