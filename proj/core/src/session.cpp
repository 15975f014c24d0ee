#include "montyq/session.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>

#include "montyq/envelope.hpp"

namespace montyq::session {

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::awaiting_pick: return "awaiting_pick";
    case Phase::awaiting_decision: return "awaiting_decision";
    case Phase::finished: return "finished";
  }
  return "finished";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::win: return "win";
    case Outcome::lose: return "lose";
    case Outcome::host_opened_prize: return "host_opened_prize";
  }
  return "lose";
}

namespace {

std::string new_token() {
  std::random_device rd;
  std::array<unsigned, 4> words{rd(), rd(), rd(), rd()};
  char buf[33];
  std::snprintf(buf, sizeof buf, "%08x%08x%08x%08x", words[0], words[1], words[2], words[3]);
  return buf;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

std::uint64_t read_seed(const Json& body) {
  if (!body.is_object() || !body.contains("seed")) return fresh_seed();
  const Json& seed = body.at("seed");
  if (seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<long long>() >= 0))
    return seed.get<std::uint64_t>();
  throw ApiError(400, "seed must be a non-negative integer");
}

std::string tally_key(const catalog::GameRequest& r) { return catalog::to_json(r).dump(); }

catalog::GameRequest parse_request(const Json& body) {
  try {
    return catalog::request_from_json(body);
  } catch (const std::exception& e) {
    throw ApiError(400, e.what());
  }
}

std::size_t read_door(const Json& body, const engine::GameSpec& spec, const char* key) {
  if (!body.is_object() || !body.contains(key) || !body.at(key).is_number_integer())
    throw ApiError(400, std::string("body needs an integer '") + key + "'");
  const auto door = body.at(key).get<long long>();
  if (door < 1 || door > static_cast<long long>(spec.door_count()))
    throw ApiError(400, "door must be in 1.." + std::to_string(spec.door_count()));
  return static_cast<std::size_t>(door - 1);
}

}  // namespace

SessionService::SessionService(SessionConfig config) : config_(std::move(config)) {
  if (config_.transcript_path) {
    transcript_.open(*config_.transcript_path, std::ios::app);
    if (!transcript_) throw std::runtime_error("cannot open transcript file " + config_.transcript_path->string());
  }
}

Json SessionService::create(const Json& body) {
  const auto now = Clock::now();
  bool sweep = false;
  {
    std::shared_lock lock(sessions_mutex_);
    sweep = now - last_sweep_ > std::min<Clock::duration>(config_.idle_timeout, std::chrono::minutes(1));
  }
  if (sweep) expire_idle(now);
  auto entry = std::make_shared<Entry>();
  Session& s = entry->session;
  s.request = parse_request(body);
  try {
    s.spec = catalog::make_game(s.request);
    s.sampler = std::make_shared<const engine::GameSampler>(s.spec);
  } catch (const std::exception& e) {
    throw ApiError(400, e.what());
  }
  s.seed = read_seed(body);
  s.rng = Rng(s.seed);
  s.prize = s.sampler->prize(s.rng);
  s.id = new_token();
  s.last_access = Clock::now();

  Json params = catalog::to_json(s.request);
  record(s, {{"event", "create"}, {"game", s.request.game}, {"params", params}, {"doors", s.spec.door_count()}});
  Json out = view(s);
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_.emplace(s.id, std::move(entry));
  }
  return out;
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError(404, "unknown session '" + id + "'");
  return it->second;
}

Json SessionService::pick(const std::string& id, const Json& body) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  s.last_access = Clock::now();
  if (s.phase != Phase::awaiting_pick)
    throw ApiError(409, "session is " + std::string(to_string(s.phase)) + ", not awaiting_pick");
  const std::size_t door = read_door(body, s.spec, "door");
  if (!s.sampler->host_defined(s.prize, door)) throw ApiError(422, "host policy is undefined for this pick");

  s.picked = door;
  s.revealed = s.sampler->reveal(s.rng, s.prize, door);
  const bool prize_revealed = *s.revealed == s.prize;
  Json event{{"event", "pick"},
             {"picked", door + 1},
             {"revealed_door", *s.revealed + 1},
             {"revealed", prize_revealed ? "prize" : "goat"}};
  if (prize_revealed) {
    s.phase = Phase::finished;
    s.outcome = Outcome::host_opened_prize;
    event["outcome"] = std::string(to_string(*s.outcome));
    tally(s);
  } else {
    s.phase = Phase::awaiting_decision;
  }
  record(s, event);
  return view(s);
}

Json SessionService::decide(const std::string& id, const Json& body) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  s.last_access = Clock::now();
  if (s.phase != Phase::awaiting_decision)
    throw ApiError(409, "session is " + std::string(to_string(s.phase)) + ", not awaiting_decision");
  if (!body.is_object() || !body.contains("action") || !body.at("action").is_string())
    throw ApiError(400, "body needs 'action': 'stick' or 'switch'");
  const auto action = body.at("action").get<std::string>();
  if (action == "stick") {
    s.final_door = *s.picked;
    s.switched = false;
  } else if (action == "switch") {
    std::size_t target;
    if (body.contains("door")) {
      target = read_door(body, s.spec, "door");
      if (target == *s.picked || target == *s.revealed)
        throw ApiError(400, "switch target must differ from the picked and revealed doors");
    } else {
      if (!s.sampler->switch_defined(*s.picked, *s.revealed)) throw ApiError(422, "switch policy undefined here");
      target = s.sampler->switch_target(s.rng, *s.picked, *s.revealed);
    }
    s.final_door = target;
    s.switched = true;
  } else {
    throw ApiError(400, "action must be 'stick' or 'switch'");
  }
  s.outcome = *s.final_door == s.prize ? Outcome::win : Outcome::lose;
  s.phase = Phase::finished;
  tally(s);
  record(s, {{"event", "decision"},
             {"action", action},
             {"final_door", *s.final_door + 1},
             {"outcome", std::string(to_string(*s.outcome))},
             {"prize_door", s.prize + 1}});
  return view(s);
}

Json SessionService::get(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  entry->session.last_access = Clock::now();
  return view(entry->session);
}

Json SessionService::view(const Session& s) const {
  Json labels = Json::array();
  for (std::size_t d = 0; d < s.spec.door_count(); ++d) labels.push_back(s.spec.door_name(d));
  Json out{{"id", s.id},
           {"game", s.request.game},
           {"params", catalog::to_json(s.request)},
           {"door_count", s.spec.door_count()},
           {"door_labels", std::move(labels)},
           {"phase", std::string(to_string(s.phase))}};
  if (s.picked) out["picked"] = *s.picked + 1;
  if (s.revealed) {
    out["revealed_door"] = *s.revealed + 1;
    out["revealed"] = *s.revealed == s.prize ? "prize" : "goat";
  }
  if (s.phase == Phase::awaiting_decision) {
    Json remaining = Json::array();
    for (std::size_t d = 0; d < s.spec.door_count(); ++d)
      if (d != *s.picked && d != *s.revealed) remaining.push_back(d + 1);
    out["switch_options"] = std::move(remaining);
  }
  if (s.phase == Phase::finished) {
    out["outcome"] = std::string(to_string(*s.outcome));
    if (s.final_door) out["final_door"] = *s.final_door + 1;
    if (s.switched) out["decision"] = *s.switched ? "switch" : "stick";
    out["prize_door"] = s.prize + 1;
    out["seed"] = s.seed;
    out["transcript"] = s.transcript;
  }
  return out;
}

void SessionService::record(Session& s, const Json& event) {
  s.transcript.push_back(event);
  if (!transcript_.is_open()) return;
  Json line = event;
  line["session"] = s.id;
  std::lock_guard lock(transcript_mutex_);
  transcript_ << line.dump() << '\n';
  transcript_.flush();
}

void SessionService::tally(const Session& s) {
  std::lock_guard lock(tally_mutex_);
  Tally& t = tallies_[tally_key(s.request)];
  ++t.finished;
  if (*s.outcome == Outcome::host_opened_prize) {
    ++t.host_opened_prize;
    return;
  }
  const bool won = *s.outcome == Outcome::win;
  if (*s.switched) {
    ++t.switch_games;
    t.switch_wins += won;
  } else {
    ++t.stick_games;
    t.stick_wins += won;
  }
}

Json SessionService::stats(const catalog::GameRequest& request) const {
  Json exact;
  try {
    exact = to_json(analysis_envelope(request)).at("exact_results");
  } catch (const std::exception& e) {
    throw ApiError(400, e.what());
  }
  Tally t;
  {
    std::lock_guard lock(tally_mutex_);
    if (auto it = tallies_.find(tally_key(request)); it != tallies_.end()) t = it->second;
  }
  auto rate = [](std::uint64_t wins, std::uint64_t games) {
    return games ? static_cast<double>(wins) / static_cast<double>(games) : 0.0;
  };
  const std::uint64_t goat = t.stick_games + t.switch_games;
  return {{"game", catalog::to_json(request)},
          {"exact", std::move(exact)},
          {"tallies",
           {{"finished", t.finished},
            {"host_opened_prize", t.host_opened_prize},
            {"goat_reveals", goat},
            {"stick", {{"games", t.stick_games}, {"wins", t.stick_wins}, {"win_rate_given_goat", rate(t.stick_wins, t.stick_games)}}},
            {"switch",
             {{"games", t.switch_games}, {"wins", t.switch_wins}, {"win_rate_given_goat", rate(t.switch_wins, t.switch_games)}}},
            {"empirical_opens_prize", rate(t.host_opened_prize, t.finished)}}}};
}

Json SessionService::simulate(const Json& body) const {
  const auto request = parse_request(body);
  try {
    const auto strategy = engine::parse_strategy(body.value("strategy", std::string("switch")));
    const auto trials = body.value("trials", std::uint64_t{10'000});
    if (trials == 0 || trials > config_.max_batch_trials)
      throw ApiError(400, "trials must be in 1.." + std::to_string(config_.max_batch_trials));
    const auto seed = read_seed(body);
    return to_json(simulation_envelope(request, strategy, trials, seed));
  } catch (const ApiError&) {
    throw;
  } catch (const std::exception& e) {
    throw ApiError(400, e.what());
  }
}

std::size_t SessionService::expire_idle(Clock::time_point now) {
  std::unique_lock lock(sessions_mutex_);
  last_sweep_ = now;
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
    if (session_lock.owns_lock() && now - it->second->session.last_access > config_.idle_timeout) {
      session_lock.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionService::size() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

}  // namespace montyq::session
