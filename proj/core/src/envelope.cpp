#include "montyq/envelope.hpp"

#include <cmath>

#include "montyq/qcore.hpp"

#ifndef MONTYQ_VERSION
#define MONTYQ_VERSION "0.0.0"
#endif

namespace montyq {

using serialize::Json;

std::string version() { return MONTYQ_VERSION; }

Json to_json(const OutputEnvelope& e) {
  Json exact = Json::object();
  Json floats = Json::object();
  for (const auto& [k, v] : e.float_results) floats[k] = v;
  for (const auto& [k, v] : e.exact_results) {
    exact[k] = serialize::to_json(v);
    floats[k] = to_double(v);
  }
  Json meta = e.metadata;
  if (!meta.contains("version")) meta["version"] = version();
  Json out{{"command", e.command},
           {"parameters", e.parameters},
           {"exact_results", std::move(exact)},
           {"float_results", std::move(floats)},
           {"metadata", std::move(meta)}};
  if (!e.data.is_null()) out["data"] = e.data;
  return out;
}

OutputEnvelope envelope_from_json(const Json& j) {
  try {
    OutputEnvelope e;
    e.command = j.at("command").get<std::string>();
    e.parameters = j.at("parameters");
    for (const auto& [k, v] : j.at("exact_results").items()) e.exact_results[k] = serialize::rational_from_json(v);
    for (const auto& [k, v] : j.at("float_results").items())
      if (!e.exact_results.contains(k)) e.float_results[k] = v.get<double>();
    e.metadata = j.at("metadata");
    if (j.contains("data")) e.data = j.at("data");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed envelope: ") + ex.what());
  }
}

OutputEnvelope analysis_envelope(const catalog::GameRequest& request) {
  const auto spec = catalog::make_game(request);
  const auto a = engine::enumerate_joint(spec);
  OutputEnvelope e;
  e.command = "analyze";
  e.parameters = catalog::to_json(request);
  e.parameters["label"] = spec.label();
  e.parameters["doors"] = spec.door_count();
  e.exact_results["opens_prize"] = a.p_opens_prize;
  e.exact_results["opens_goat"] = a.p_opens_goat;
  e.exact_results["win_stick"] = a.p_win_stick();
  e.exact_results["win_switch"] = a.p_win_switch();
  e.exact_results["win_stick_and_goat"] = a.p_win_stick_and_goat;
  e.exact_results["win_switch_and_goat"] = a.p_win_switch_and_goat;
  if (a.p_win_stick_given_goat) {
    e.exact_results["win_stick_given_goat"] = *a.p_win_stick_given_goat;
    e.exact_results["win_switch_given_goat"] = *a.p_win_switch_given_goat;
    e.exact_results["advantage_given_goat"] = *a.p_win_switch_given_goat - *a.p_win_stick_given_goat;
  }
  return e;
}

OutputEnvelope simulation_envelope(const catalog::GameRequest& request, engine::Strategy strategy,
                                   std::uint64_t trials, std::uint64_t seed) {
  const auto spec = catalog::make_game(request);
  const auto a = engine::enumerate_joint(spec);
  const auto r = engine::simulate(spec, strategy, trials, seed);
  OutputEnvelope e;
  e.command = "simulate";
  e.parameters = catalog::to_json(request);
  e.parameters["strategy"] = std::string(engine::to_string(strategy));
  if (a.p_win_stick_given_goat) {
    Rational exact = strategy == engine::Strategy::stick         ? *a.p_win_stick_given_goat
                     : strategy == engine::Strategy::switch_door ? *a.p_win_switch_given_goat
                                                                 : (*a.p_win_stick_given_goat + *a.p_win_switch_given_goat) / 2;
    e.exact_results["exact_win_given_goat"] = exact;
    const double p = to_double(exact);
    const double sigma = r.goat_reveals ? std::sqrt(p * (1 - p) / static_cast<double>(r.goat_reveals)) : 0.0;
    e.float_results["sigma"] = sigma;
    e.float_results["z_score"] = sigma > 0 ? (r.empirical_win_given_goat - p) / sigma : 0.0;
  }
  e.float_results["empirical_win_given_goat"] = r.empirical_win_given_goat;
  e.float_results["empirical_win"] = static_cast<double>(r.wins) / static_cast<double>(r.trials);
  e.metadata.update({{"seed", seed}, {"trials", trials}, {"report", serialize::to_json(r)}});
  return e;
}

OutputEnvelope born_envelope() {
  const auto t = qcore::born_matrix();
  OutputEnvelope e;
  e.command = "born-matrix";
  Json table = Json::array();
  for (std::size_t h = 0; h < 4; ++h) {
    Json row = Json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      e.exact_results["psi" + std::to_string(h + 1) + "_phi" + std::to_string(i + 1)] = t.at(h, i);
      row.push_back(serialize::to_json(t.at(h, i)));
    }
    table.push_back(std::move(row));
  }
  e.parameters = {{"rows", {"psi1", "psi2", "psi3", "psi4"}}, {"cols", {"phi1", "phi2", "phi3", "phi4"}}};
  const auto states = qcore::pbr_states();
  const auto basis = qcore::pbr_basis();
  e.data = {{"table", std::move(table)}, {"antidistinguishable", qcore::is_antidistinguishable(states, basis)}};
  return e;
}

OutputEnvelope unreliable_envelope(teleport::BellLabel bell) {
  const auto r = teleport::unreliable_analysis(bell);
  OutputEnvelope e;
  e.command = "teleport analyze";
  e.parameters = {{"mode", "unreliable"}, {"bell", bell.to_string()}};
  for (unsigned d = 0; d < 2; ++d) {
    const std::string s = std::to_string(d);
    e.exact_results["received_bit_" + s] = r.p_received[d];
    e.exact_results["win_stick_and_bit_" + s] = r.stick_and[d];
    e.exact_results["win_switch_and_bit_" + s] = r.switch_and[d];
    e.exact_results["win_stick_given_bit_" + s] = r.stick_given[d];
    e.exact_results["win_switch_given_bit_" + s] = r.switch_given[d];
  }
  return e;
}

OutputEnvelope teleport_simulation_envelope(teleport::Mode mode, engine::Strategy strategy, std::uint64_t trials,
                                            std::uint64_t seed) {
  const auto t = teleport::simulate_teleport(mode, strategy, trials, seed);
  OutputEnvelope e;
  e.command = "teleport simulate";
  e.parameters = {{"mode", std::string(teleport::to_string(mode))},
                  {"strategy", std::string(engine::to_string(strategy))},
                  {"condition", t.condition}};
  e.float_results["empirical_win_given_condition"] = t.report.empirical_win_given_goat;
  e.float_results["empirical_win"] = static_cast<double>(t.wins_all) / static_cast<double>(trials);
  e.float_results["mean_fidelity"] = t.mean_fidelity;
  e.float_results["min_fidelity"] = t.min_fidelity;
  e.metadata.update({{"seed", seed}, {"trials", trials}, {"report", serialize::to_json(t.report)}});
  return e;
}

}  // namespace montyq
