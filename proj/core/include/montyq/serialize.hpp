#pragma once

// JSON wire formats. Rationals travel as {"num": int, "den": int}; integers
// beyond 64 bits are carried as decimal strings. Door indices are zero-based.

#include <nlohmann/json.hpp>

#include "montyq/engine.hpp"
#include "montyq/rational.hpp"

namespace montyq::serialize {

using Json = nlohmann::json;

Json to_json(const Rational& r);
// Accepts {"num","den"} objects, "num/den" strings and integers.
Rational rational_from_json(const Json& j);

Json to_json(const engine::GameSpec& spec);
// Throws std::invalid_argument on malformed documents. Does not validate
// the game itself; call engine::validate for that.
engine::GameSpec game_spec_from_json(const Json& j);

Json to_json(const engine::GameAnalysis& a);
engine::GameAnalysis analysis_from_json(const Json& j);

Json to_json(const engine::SimulationReport& r);
engine::SimulationReport simulation_report_from_json(const Json& j);

}  // namespace montyq::serialize
