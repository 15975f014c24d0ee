#pragma once

// Name-based lookup of the built-in games, shared by the CLI and the HTTP service.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "montyq/engine.hpp"
#include "montyq/games.hpp"
#include "montyq/serialize.hpp"

namespace montyq::catalog {

struct GameRequest {
  std::string game;
  std::optional<games::EpistemicParams> params;  // psi-epistemic only; absent means q = 0
  int state = 1;                                 // psi-ontic / psi-epistemic only
};

class UnknownGame : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// classic, ignorant, psi-ontic, psi-epistemic, monty-teleport
const std::vector<std::string>& game_names();

// Throws UnknownGame, or std::out_of_range for bad parameters or state.
engine::GameSpec make_game(const GameRequest& request);

// Reads "game", "q1".."q3" and "state" from a JSON object whose values may
// be strings or numbers. Throws std::invalid_argument.
GameRequest request_from_json(const serialize::Json& j);
serialize::Json to_json(const GameRequest& request);

// Door counts and parameter schemas for every catalog entry.
serialize::Json catalog_json();

}  // namespace montyq::catalog
