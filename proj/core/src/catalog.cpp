#include "montyq/catalog.hpp"

#include <algorithm>

#include "montyq/teleport.hpp"

namespace montyq::catalog {

using serialize::Json;

const std::vector<std::string>& game_names() {
  static const std::vector<std::string> names{"classic", "ignorant", "psi-ontic", "psi-epistemic", "monty-teleport"};
  return names;
}

engine::GameSpec make_game(const GameRequest& r) {
  if (r.game == "classic") return games::classic_game();
  if (r.game == "ignorant") return games::ignorant_game();
  if (r.game == "psi-ontic") return games::psi_ontic_game(r.state);
  if (r.game == "psi-epistemic") return games::psi_epistemic_game(r.params.value_or(games::EpistemicParams{}), r.state);
  if (r.game == "monty-teleport") return teleport::monty_teleport_game();
  throw UnknownGame("unknown game '" + r.game + "'");
}

namespace {

Rational read_rational(const Json& v) {
  if (v.is_number_float()) {
    // Only exactly representable (dyadic) decimals pass parse_rational.
    return parse_rational(Json(v).dump());
  }
  return serialize::rational_from_json(v);
}

}  // namespace

GameRequest request_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("game") || !j.at("game").is_string())
    throw std::invalid_argument("request needs a string field 'game'");
  GameRequest r;
  r.game = j.at("game").get<std::string>();
  const Json& src = j.contains("params") && j.at("params").is_object() ? j.at("params") : j;
  if (src.contains("q1") || src.contains("q2") || src.contains("q3")) {
    games::EpistemicParams p;
    if (src.contains("q1")) p.q1 = read_rational(src.at("q1"));
    if (src.contains("q2")) p.q2 = read_rational(src.at("q2"));
    if (src.contains("q3")) p.q3 = read_rational(src.at("q3"));
    r.params = p;
  }
  const Json* state = src.contains("state") ? &src.at("state") : (j.contains("state") ? &j.at("state") : nullptr);
  if (state) {
    if (state->is_number_integer())
      r.state = state->get<int>();
    else if (state->is_string())
      r.state = std::stoi(state->get<std::string>());
    else
      throw std::invalid_argument("state must be an integer 1..4");
  }
  return r;
}

Json to_json(const GameRequest& r) {
  Json j{{"game", r.game}};
  if (r.game == "psi-ontic" || r.game == "psi-epistemic") j["state"] = r.state;
  if (r.game == "psi-epistemic") {
    const auto p = r.params.value_or(games::EpistemicParams{});
    j["q1"] = to_string(p.q1);
    j["q2"] = to_string(p.q2);
    j["q3"] = to_string(p.q3);
    j["q"] = to_string(p.q());
  }
  return j;
}

Json catalog_json() {
  const Json state_schema{{"type", "integer"}, {"minimum", 1}, {"maximum", 4}, {"default", 1}};
  auto q_schema = [](const char* max) {
    return Json{{"type", "rational"}, {"format", "num/den"}, {"minimum", "0"}, {"maximum", max}, {"default", "0"}};
  };
  Json out = Json::array();
  for (const auto& name : game_names()) {
    const auto spec = make_game({name, std::nullopt, 1});
    Json params = Json::object();
    if (name == "psi-ontic" || name == "psi-epistemic") params["state"] = state_schema;
    if (name == "psi-epistemic") {
      params["q1"] = q_schema("1/4");
      params["q2"] = q_schema("1/4");
      params["q3"] = q_schema("1/2");
    }
    Json labels = Json::array();
    for (std::size_t d = 0; d < spec.door_count(); ++d) labels.push_back(spec.door_name(d));
    out.push_back({{"name", name}, {"doors", spec.door_count()}, {"door_labels", labels}, {"parameters", params}});
  }
  return out;
}

}  // namespace montyq::catalog
