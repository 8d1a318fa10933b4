#ifndef CBR_IO_HPP
#define CBR_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "cbr/game.hpp"
#include "cbr/netform.hpp"

namespace cbr {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ParsedInput = std::variant<Game, NetworkGame>;

// Parses the JSON game description (see docs/formats.md). The document
// kind is inferred from the header key: "players" -> strategic game,
// "nodes" -> network formation game. Throws ParseError on grammar
// violations and ValidationError on semantic defects.
ParsedInput parse_game_text(const std::string& text);
ParsedInput parse_game_file(const std::string& path);

}  // namespace cbr

#endif
