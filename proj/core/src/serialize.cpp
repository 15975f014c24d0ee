#include "montyq/serialize.hpp"

#include <limits>
#include <stdexcept>

namespace montyq::serialize {

using engine::GameAnalysis;
using engine::GameSpec;

namespace {

Json int_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt int_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if (denominator_of(r) != 1) throw std::invalid_argument("expected an integer");
    return numerator_of(r);
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json rational_array(const std::vector<Rational>& v, std::size_t offset, std::size_t n) {
  Json out = Json::array();
  for (std::size_t m = 0; m < n; ++m) out.push_back(to_json(v[offset + m]));
  return out;
}

void read_row(const Json& j, std::vector<Rational>& dest, std::size_t offset, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw std::invalid_argument(std::string(what) + ": expected an array of " + std::to_string(n) + " rationals");
  for (std::size_t m = 0; m < n; ++m) dest[offset + m] = rational_from_json(j[m]);
}

void read_matrix(const Json& j, std::vector<Rational>& dest, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) + " rows");
  for (std::size_t r = 0; r < n; ++r) read_row(j[r], dest, r * n, n, what);
}

void read_tensor(const Json& j, std::vector<Rational>& dest, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) + " blocks");
  for (std::size_t a = 0; a < n; ++a) {
    if (!j[a].is_array() || j[a].size() != n) throw std::invalid_argument(std::string(what) + ": ragged block");
    for (std::size_t b = 0; b < n; ++b) read_row(j[a][b], dest, (a * n + b) * n, n, what);
  }
}

Json optional_rational(const std::optional<Rational>& r) { return r ? to_json(*r) : Json(nullptr); }

std::optional<Rational> optional_rational_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return rational_from_json(j);
}

}  // namespace

Json to_json(const Rational& r) { return Json{{"num", int_to_json(numerator_of(r))}, {"den", int_to_json(denominator_of(r))}}; }

Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    const BigInt den = int_from_json(field(j, "den"));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(int_from_json(field(j, "num")), den);
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

Json to_json(const GameSpec& spec) {
  const std::size_t n = spec.door_count();
  Json contestant = Json::array();
  for (std::size_t i = 0; i < n; ++i) contestant.push_back(rational_array(spec.contestant_table(), i * n, n));
  Json host = Json::array();
  Json sw = Json::array();
  for (std::size_t a = 0; a < n; ++a) {
    Json hb = Json::array();
    Json sb = Json::array();
    for (std::size_t b = 0; b < n; ++b) {
      hb.push_back(rational_array(spec.host_table(), (a * n + b) * n, n));
      sb.push_back(rational_array(spec.switch_table(), (a * n + b) * n, n));
    }
    host.push_back(std::move(hb));
    sw.push_back(std::move(sb));
  }
  Json out{{"label", spec.label()},
           {"doors", n},
           {"prize_dist", rational_array(spec.prize_table(), 0, n)},
           {"contestant_dist", std::move(contestant)},
           {"host_policy", std::move(host)},
           {"switch_policy", std::move(sw)}};
  if (!spec.door_labels().empty()) out["door_labels"] = spec.door_labels();
  return out;
}

GameSpec game_spec_from_json(const Json& j) {
  try {
    const Json& doors = field(j, "doors");
    if (!doors.is_number_unsigned() || doors.get<std::size_t>() == 0 || doors.get<std::size_t>() > 64)
      throw std::invalid_argument("doors must be an integer in 1..64");
    const std::size_t n = doors.get<std::size_t>();
    GameSpec spec(n, j.value("label", std::string{}));
    if (j.contains("door_labels")) spec.set_door_labels(j.at("door_labels").get<std::vector<std::string>>());
    read_row(field(j, "prize_dist"), spec.prize_table(), 0, n, "prize_dist");
    read_matrix(field(j, "contestant_dist"), spec.contestant_table(), n, "contestant_dist");
    read_tensor(field(j, "host_policy"), spec.host_table(), n, "host_policy");
    read_tensor(field(j, "switch_policy"), spec.switch_table(), n, "switch_policy");
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed game spec: ") + e.what());
  }
}

Json to_json(const GameAnalysis& a) {
  Json joint = Json::array();
  for (const auto& e : a.joint)
    joint.push_back({{"prize", e.prize},
                     {"pick", e.pick},
                     {"reveal", e.reveal},
                     {"target", e.target ? Json(*e.target) : Json(nullptr)},
                     {"p", to_json(e.probability)}});
  return {{"joint", std::move(joint)},
          {"opens_prize", to_json(a.p_opens_prize)},
          {"opens_goat", to_json(a.p_opens_goat)},
          {"win_stick_and_goat", to_json(a.p_win_stick_and_goat)},
          {"win_switch_and_goat", to_json(a.p_win_switch_and_goat)},
          {"win_stick_given_goat", optional_rational(a.p_win_stick_given_goat)},
          {"win_switch_given_goat", optional_rational(a.p_win_switch_given_goat)}};
}

GameAnalysis analysis_from_json(const Json& j) {
  try {
    GameAnalysis a;
    for (const auto& e : field(j, "joint")) {
      std::optional<std::size_t> target;
      if (!e.at("target").is_null()) target = e.at("target").get<std::size_t>();
      a.joint.push_back({e.at("prize").get<std::size_t>(), e.at("pick").get<std::size_t>(),
                         e.at("reveal").get<std::size_t>(), target, rational_from_json(e.at("p"))});
    }
    a.p_opens_prize = rational_from_json(field(j, "opens_prize"));
    a.p_opens_goat = rational_from_json(field(j, "opens_goat"));
    a.p_win_stick_and_goat = rational_from_json(field(j, "win_stick_and_goat"));
    a.p_win_switch_and_goat = rational_from_json(field(j, "win_switch_and_goat"));
    a.p_win_stick_given_goat = optional_rational_from(field(j, "win_stick_given_goat"));
    a.p_win_switch_given_goat = optional_rational_from(field(j, "win_switch_given_goat"));
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed analysis: ") + e.what());
  }
}

Json to_json(const engine::SimulationReport& r) {
  return {{"trials", r.trials},
          {"seed", r.seed},
          {"strategy", std::string(engine::to_string(r.strategy))},
          {"wins", r.wins},
          {"goat_reveals", r.goat_reveals},
          {"prize_reveals", r.prize_reveals},
          {"empirical_win_given_goat", r.empirical_win_given_goat}};
}

engine::SimulationReport simulation_report_from_json(const Json& j) {
  try {
    engine::SimulationReport r;
    r.trials = field(j, "trials").get<std::uint64_t>();
    r.seed = field(j, "seed").get<std::uint64_t>();
    r.strategy = engine::parse_strategy(field(j, "strategy").get<std::string>());
    r.wins = field(j, "wins").get<std::uint64_t>();
    r.goat_reveals = field(j, "goat_reveals").get<std::uint64_t>();
    r.prize_reveals = field(j, "prize_reveals").get<std::uint64_t>();
    r.empirical_win_given_goat = field(j, "empirical_win_given_goat").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed simulation report: ") + e.what());
  }
}

}  // namespace montyq::serialize
