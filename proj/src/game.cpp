#include "cbr/game.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cbr {

std::string coalition_label(Coalition s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!coalition_contains(s, i)) continue;
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

Game::Game(std::vector<int> action_counts,
           std::vector<std::vector<Rational>> payoffs,
           std::vector<std::vector<std::string>> action_names)
    : action_counts_(std::move(action_counts)),
      payoffs_(std::move(payoffs)),
      action_names_(std::move(action_names)) {
  assert(!action_counts_.empty());
  long long total = 1;
  for (int c : action_counts_) {
    assert(c >= 1);
    total *= c;
    assert(total <= kMaxProfiles);
  }
  num_profiles_ = static_cast<int>(total);
  assert(static_cast<int>(payoffs_.size()) == num_profiles_);
  if (action_names_.empty()) {
    // default names: a1..,b1..,c1.. per player
    for (int i = 0; i < num_players(); ++i) {
      std::vector<std::string> names;
      const char letter = static_cast<char>('a' + (i % 26));
      for (int k = 0; k < action_counts_[i]; ++k) {
        names.push_back(std::string(1, letter) + std::to_string(k + 1));
      }
      action_names_.push_back(std::move(names));
    }
  }
}

int Game::index_of(const Profile& p) const {
  assert(static_cast<int>(p.size()) == num_players());
  int index = 0;
  for (int i = 0; i < num_players(); ++i) {
    assert(p[i] >= 0 && p[i] < action_counts_[i]);
    index = index * action_counts_[i] + p[i];
  }
  return index;
}

Profile Game::profile_at(int index) const {
  assert(index >= 0 && index < num_profiles_);
  Profile p(num_players());
  for (int i = num_players() - 1; i >= 0; --i) {
    p[i] = index % action_counts_[i];
    index /= action_counts_[i];
  }
  return p;
}

std::string Game::profile_label(int index) const {
  const Profile p = profile_at(index);
  std::string out = "(";
  for (int i = 0; i < num_players(); ++i) {
    if (i) out += ",";
    out += action_names_[i][p[i]];
  }
  return out + ")";
}

Game validate_game(const RawGame& raw) {
  std::vector<std::string> defects;
  if (raw.num_players < 1) {
    throw ValidationError("game must have at least one player");
  }
  if (static_cast<int>(raw.action_names.size()) != raw.num_players) {
    throw ValidationError("expected " + std::to_string(raw.num_players) +
                          " action lists, got " +
                          std::to_string(raw.action_names.size()));
  }
  std::vector<int> counts;
  long long total = 1;
  for (int i = 0; i < raw.num_players; ++i) {
    if (raw.action_names[i].empty()) {
      throw ValidationError("player " + std::to_string(i + 1) +
                            " has an empty action set");
    }
    counts.push_back(static_cast<int>(raw.action_names[i].size()));
    total *= counts.back();
    if (total > kMaxProfiles) {
      throw CapError("profile space exceeds the exact-analysis cap of " +
                     std::to_string(kMaxProfiles) + " profiles");
    }
  }
  if (raw.num_players > kMaxPlayersForCoalitions) {
    throw CapError("coalition enumeration capped at " +
                   std::to_string(kMaxPlayersForCoalitions) + " players");
  }

  Game skeleton(counts, std::vector<std::vector<Rational>>(
                            static_cast<size_t>(total),
                            std::vector<Rational>(raw.num_players)),
                raw.action_names);

  std::vector<std::vector<Rational>> payoffs(
      static_cast<size_t>(total), std::vector<Rational>(raw.num_players));
  std::vector<bool> seen(static_cast<size_t>(total), false);
  for (const auto& entry : raw.entries) {
    if (static_cast<int>(entry.profile.size()) != raw.num_players ||
        static_cast<int>(entry.values.size()) != raw.num_players) {
      defects.push_back("payoff record has wrong arity");
      continue;
    }
    bool in_range = true;
    for (int i = 0; i < raw.num_players; ++i) {
      if (entry.profile[i] < 0 || entry.profile[i] >= counts[i]) {
        in_range = false;
      }
    }
    if (!in_range) {
      defects.push_back("payoff record references an unknown action");
      continue;
    }
    const int k = skeleton.index_of(entry.profile);
    if (seen[k]) {
      defects.push_back("duplicate payoff row for profile " +
                        skeleton.profile_label(k));
      continue;
    }
    seen[k] = true;
    payoffs[k] = entry.values;
  }
  for (int k = 0; k < static_cast<int>(total); ++k) {
    if (!seen[k]) {
      defects.push_back("missing payoff row for profile " +
                        skeleton.profile_label(k));
    }
  }
  if (!defects.empty()) {
    std::ostringstream msg;
    msg << "invalid game:";
    for (const auto& d : defects) msg << "\n  " << d;
    throw ValidationError(msg.str());
  }
  return Game(counts, std::move(payoffs), raw.action_names);
}

std::vector<Profile> enumerate_profiles(const Game& g) {
  std::vector<Profile> out;
  out.reserve(g.num_profiles());
  for (int k = 0; k < g.num_profiles(); ++k) out.push_back(g.profile_at(k));
  return out;
}

std::vector<Coalition> enumerate_coalitions(int num_players) {
  if (num_players < 1) {
    throw ValidationError("coalition enumeration needs at least one player");
  }
  if (num_players > kMaxPlayersForCoalitions) {
    throw CapError("coalition enumeration capped at " +
                   std::to_string(kMaxPlayersForCoalitions) + " players");
  }
  std::vector<Coalition> out;
  const Coalition all = (num_players == 32) ? ~0u : ((1u << num_players) - 1);
  out.reserve(all);
  for (Coalition s = 1; s <= all; ++s) out.push_back(s);
  return out;
}

}  // namespace cbr
