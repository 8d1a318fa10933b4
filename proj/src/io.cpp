#include "cbr/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cbr {

namespace {

using nlohmann::json;

Rational parse_value(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    return Rational(v.get<long long>());
  }
  if (v.is_string()) {
    const auto parsed = parse_rational(v.get<std::string>());
    if (parsed) return *parsed;
  }
  throw ParseError(where + ": expected an integer or a \"p/q\" string, got " +
                   v.dump());
}

Game parse_strategic(const json& doc) {
  RawGame raw;
  raw.num_players = doc.at("players").get<int>();
  const json& actions = doc.at("actions");
  if (!actions.is_array()) throw ParseError("\"actions\" must be an array");
  for (const auto& list : actions) {
    std::vector<std::string> names;
    for (const auto& name : list) names.push_back(name.get<std::string>());
    raw.action_names.push_back(std::move(names));
  }

  auto action_index = [&raw](int player, const std::string& name) {
    const auto& names = raw.action_names[player];
    for (size_t k = 0; k < names.size(); ++k) {
      if (names[k] == name) return static_cast<int>(k);
    }
    throw ParseError("unknown action \"" + name + "\" for player " +
                     std::to_string(player + 1));
  };

  const json& payoffs = doc.at("payoffs");
  if (!payoffs.is_array()) throw ParseError("\"payoffs\" must be an array");
  int row = 0;
  for (const auto& record : payoffs) {
    ++row;
    const std::string where = "payoff row " + std::to_string(row);
    RawGame::Entry entry;
    const json& profile = record.at("profile");
    if (static_cast<int>(profile.size()) != raw.num_players) {
      throw ParseError(where + ": profile needs one action per player");
    }
    for (int i = 0; i < raw.num_players; ++i) {
      entry.profile.push_back(action_index(i, profile[i].get<std::string>()));
    }
    const json& values = record.at("values");
    if (static_cast<int>(values.size()) != raw.num_players) {
      throw ParseError(where + ": needs one payoff per player");
    }
    for (const auto& v : values) entry.values.push_back(parse_value(v, where));
    raw.entries.push_back(std::move(entry));
  }
  return validate_game(raw);
}

NetworkGame parse_network(const json& doc) {
  const int nodes = doc.at("nodes").get<int>();
  if (nodes < 1 || nodes > kMaxNetformStabilityNodes) {
    throw ParseError("\"nodes\" must be between 1 and " +
                     std::to_string(kMaxNetformStabilityNodes));
  }
  const int total = 1 << num_edge_slots(nodes);
  std::vector<std::vector<Rational>> values(total);
  std::vector<bool> seen(total, false);

  const json& records = doc.at("values");
  if (!records.is_array()) throw ParseError("\"values\" must be an array");
  int row = 0;
  for (const auto& record : records) {
    ++row;
    const std::string where = "value row " + std::to_string(row);
    NetworkMask mask = 0;
    for (const auto& edge : record.at("edges")) {
      if (!edge.is_array() || edge.size() != 2) {
        throw ParseError(where + ": each edge must be a [i, j] pair");
      }
      const int i = edge[0].get<int>();
      const int j = edge[1].get<int>();
      if (i < 1 || j < 1 || i > nodes || j > nodes || i == j) {
        throw ParseError(where + ": malformed edge [" + std::to_string(i) +
                         "," + std::to_string(j) + "]");
      }
      mask |= 1u << edge_slot(nodes, i - 1, j - 1);
    }
    if (seen[mask]) {
      throw ParseError(where + ": duplicate network " +
                       network_label(mask, nodes));
    }
    seen[mask] = true;
    const json& row_values = record.at("values");
    if (static_cast<int>(row_values.size()) != nodes) {
      throw ParseError(where + ": needs one value per player");
    }
    for (const auto& v : row_values) {
      values[mask].push_back(parse_value(v, where));
    }
  }
  for (int g = 0; g < total; ++g) {
    if (!seen[g]) {
      throw ParseError("missing value row for network " +
                       network_label(g, nodes));
    }
  }
  return NetworkGame(nodes, std::move(values));
}

}  // namespace

ParsedInput parse_game_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  try {
    if (doc.contains("players")) return parse_strategic(doc);
    if (doc.contains("nodes")) return parse_network(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  throw ParseError(
      "cannot infer document kind: expected a \"players\" (strategic game) "
      "or \"nodes\" (network game) key");
}

ParsedInput parse_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game_text(buffer.str());
}

}  // namespace cbr
