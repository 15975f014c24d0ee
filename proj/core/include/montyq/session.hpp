#pragma once

// Turn-by-turn game sessions for human contestants. Transport-agnostic:
// every call takes and returns JSON bodies; the HTTP server is a thin shell
// over this class. Doors on this surface are numbered from 1.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

#include "montyq/catalog.hpp"
#include "montyq/engine.hpp"
#include "montyq/rng.hpp"
#include "montyq/serialize.hpp"

namespace montyq::session {

using serialize::Json;
using Clock = std::chrono::steady_clock;

enum class Phase { awaiting_pick, awaiting_decision, finished };
enum class Outcome { win, lose, host_opened_prize };

std::string_view to_string(Phase p);
std::string_view to_string(Outcome o);

/// An error carrying the HTTP status the server should answer with.
class ApiError : public std::runtime_error {
 public:
  ApiError(int status, const std::string& message) : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct SessionConfig {
  std::chrono::seconds idle_timeout{3600};
  std::optional<std::filesystem::path> transcript_path;  // JSON lines, append-only
  std::uint64_t max_batch_trials = 10'000'000;
};

struct Session {
  std::string id;
  catalog::GameRequest request;
  engine::GameSpec spec;
  std::shared_ptr<const engine::GameSampler> sampler;
  Phase phase = Phase::awaiting_pick;
  std::size_t prize = 0;
  std::optional<std::size_t> picked;
  std::optional<std::size_t> revealed;
  std::optional<std::size_t> final_door;
  std::optional<bool> switched;
  std::optional<Outcome> outcome;
  std::uint64_t seed = 0;
  Rng rng{0};
  Clock::time_point last_access;
  Json transcript = Json::array();
};

class SessionService {
 public:
  explicit SessionService(SessionConfig config = {});

  // {"game", "params"?: {q1,q2,q3,state}, "seed"?} -> session view
  Json create(const Json& body);
  // {"door": 1..n} -> reveal event and next phase
  Json pick(const std::string& id, const Json& body);
  // {"action": "stick"} | {"action": "switch", "door"?: n} -> outcome with disclosure
  Json decide(const std::string& id, const Json& body);
  Json get(const std::string& id);
  // Exact analysis plus tallies of finished sessions of that game.
  Json stats(const catalog::GameRequest& request) const;
  // Server-side batch of simulated games: {"game", "params"?, "strategy", "trials", "seed"?}
  Json simulate(const Json& body) const;

  // Drops sessions idle longer than the configured timeout; returns the count.
  // create() calls this at most once per sweep interval.
  std::size_t expire_idle(Clock::time_point now = Clock::now());
  std::size_t size() const;

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
  };
  struct Tally {
    std::uint64_t finished = 0;
    std::uint64_t host_opened_prize = 0;
    std::uint64_t stick_games = 0, stick_wins = 0;
    std::uint64_t switch_games = 0, switch_wins = 0;
  };

  std::shared_ptr<Entry> find(const std::string& id);
  void record(Session& s, const Json& event);
  void tally(const Session& s);
  Json view(const Session& s) const;

  SessionConfig config_;
  mutable std::shared_mutex sessions_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
  Clock::time_point last_sweep_ = Clock::now();
  mutable std::mutex tally_mutex_;
  std::map<std::string, Tally> tallies_;
  std::mutex transcript_mutex_;
  std::ofstream transcript_;
};

}  // namespace montyq::session
