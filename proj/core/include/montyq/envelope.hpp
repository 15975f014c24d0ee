#pragma once

// The machine-readable result document printed by the CLI and returned by
// the HTTP analysis endpoints.

#include <cstdint>
#include <map>
#include <string>

#include "montyq/catalog.hpp"
#include "montyq/engine.hpp"
#include "montyq/rational.hpp"
#include "montyq/serialize.hpp"
#include "montyq/teleport.hpp"

namespace montyq {

std::string version();

/// Exact results serialize as {"num","den"}; each one is also mirrored into
/// float_results under the same key as its decimal value.
struct OutputEnvelope {
  std::string command;
  serialize::Json parameters = serialize::Json::object();
  std::map<std::string, Rational> exact_results;
  std::map<std::string, double> float_results;
  serialize::Json metadata = {{"version", version()}};
  serialize::Json data;  // optional structured payload (tables); null when absent

  friend bool operator==(const OutputEnvelope&, const OutputEnvelope&) = default;
};

serialize::Json to_json(const OutputEnvelope& e);
// Inverse of to_json; mirrored decimals are dropped again. Throws std::invalid_argument.
OutputEnvelope envelope_from_json(const serialize::Json& j);

// Keys: opens_prize, opens_goat, win_stick, win_switch, win_stick_and_goat,
// win_switch_and_goat, win_stick_given_goat, win_switch_given_goat,
// advantage_given_goat.
OutputEnvelope analysis_envelope(const catalog::GameRequest& request);

OutputEnvelope simulation_envelope(const catalog::GameRequest& request, engine::Strategy strategy,
                                   std::uint64_t trials, std::uint64_t seed);

// Keys psi<h>_phi<i>; data carries the 4x4 table.
OutputEnvelope born_envelope();

OutputEnvelope unreliable_envelope(teleport::BellLabel bell = {0, 0});

OutputEnvelope teleport_simulation_envelope(teleport::Mode mode, engine::Strategy strategy, std::uint64_t trials,
                                            std::uint64_t seed);

}  // namespace montyq
