#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "montyq/session.hpp"

namespace montyq::session {
namespace {

int status_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ApiError& e) {
    return e.status();
  }
  return 0;
}

TEST(SessionTest, CreateReportsDoorCounts) {
  SessionService svc;
  EXPECT_EQ(svc.create({{"game", "classic"}}).at("door_count"), 3);
  EXPECT_EQ(svc.create({{"game", "psi-ontic"}}).at("door_count"), 4);
  const auto t = svc.create({{"game", "monty-teleport"}});
  EXPECT_EQ(t.at("door_labels"), (Json{"00", "01", "10", "11"}));
  EXPECT_EQ(t.at("phase"), "awaiting_pick");
}

TEST(SessionTest, NothingLeaksBeforeTheEnd) {
  SessionService svc;
  auto v = svc.create({{"game", "classic"}, {"seed", 4}});
  for (const char* key : {"prize_door", "seed", "transcript", "outcome"}) EXPECT_FALSE(v.contains(key)) << key;
  const std::string id = v.at("id");
  v = svc.pick(id, {{"door", 1}});
  for (const char* key : {"prize_door", "seed", "transcript"}) EXPECT_FALSE(v.contains(key)) << key;
  EXPECT_FALSE(svc.get(id).contains("prize_door"));
  EXPECT_EQ(v.at("switch_options").size(), 1u);
  v = svc.decide(id, {{"action", "stick"}});
  EXPECT_TRUE(v.contains("prize_door"));
  EXPECT_EQ(v.at("seed"), 4);
  EXPECT_EQ(v.at("transcript").size(), 3u);
}

TEST(SessionTest, PsiOnticHostOpensTheForbiddenDoor) {
  SessionService svc;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::string id = svc.create({{"game", "psi-ontic"}, {"seed", seed}}).at("id");
    const auto v = svc.pick(id, {{"door", 2}});
    EXPECT_EQ(v.at("revealed_door"), 1);
  }
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::string id = svc.create({{"game", "psi-ontic"}, {"seed", seed}}).at("id");
    const int r = svc.pick(id, {{"door", 1}}).at("revealed_door");
    EXPECT_NE(r, 1);
    seen.insert(r);
  }
  EXPECT_EQ(seen, (std::set<int>{2, 3, 4}));
}

TEST(SessionTest, PrizeRevealFinishesTheGame) {
  SessionService svc;
  int prize_reveals = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::string id = svc.create({{"game", "psi-ontic"}, {"seed", seed}}).at("id");
    const auto v = svc.pick(id, {{"door", 1}});  // only the forbidden pick lets the host choose
    if (v.at("revealed") == "prize") {
      ++prize_reveals;
      EXPECT_EQ(v.at("phase"), "finished");
      EXPECT_EQ(v.at("outcome"), "host_opened_prize");
      EXPECT_EQ(status_of([&] { svc.decide(id, {{"action", "stick"}}); }), 409);
    }
  }
  EXPECT_GT(prize_reveals, 0);
}

TEST(SessionTest, ClassicHostIsUniformWhenThePickIsThePrize) {
  SessionService svc;
  std::map<int, int> counts;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const std::string id = svc.create({{"game", "classic"}, {"seed", seed}}).at("id");
    const auto v = svc.pick(id, {{"door", 1}});
    EXPECT_EQ(v.at("revealed"), "goat");
    const auto done = svc.decide(id, {{"action", "stick"}});
    if (done.at("prize_door") == 1) {
      ++hits;
      ++counts[v.at("revealed_door").get<int>()];
    }
  }
  ASSERT_GT(hits, 500);
  EXPECT_EQ(counts.size(), 2u);
  const double share = static_cast<double>(counts[2]) / hits;
  EXPECT_NEAR(share, 0.5, 3 * std::sqrt(0.25 / hits));
}

TEST(SessionTest, ErrorStatuses) {
  SessionService svc;
  EXPECT_EQ(status_of([&] { svc.get("nope"); }), 404);
  EXPECT_EQ(status_of([&] { svc.create({{"game", "deal-or-no-deal"}}); }), 400);
  EXPECT_EQ(status_of([&] { svc.create({{"game", "psi-ontic"}, {"state", 9}}); }), 400);
  EXPECT_EQ(status_of([&] { svc.create({{"game", "psi-epistemic"}, {"params", {{"q1", "1/2"}}}}); }), 400);
  const std::string id = svc.create({{"game", "classic"}, {"seed", 1}}).at("id");
  EXPECT_EQ(status_of([&] { svc.decide(id, {{"action", "stick"}}); }), 409);
  EXPECT_EQ(status_of([&] { svc.pick(id, {{"door", 4}}); }), 400);
  EXPECT_EQ(status_of([&] { svc.pick(id, {{"door", "1"}}); }), 400);
  const auto v = svc.pick(id, {{"door", 1}});
  EXPECT_EQ(status_of([&] { svc.pick(id, {{"door", 1}}); }), 409);
  EXPECT_EQ(status_of([&] { svc.decide(id, {{"action", "switch"}, {"door", 1}}); }), 400);
  EXPECT_EQ(status_of([&] { svc.decide(id, {{"action", "switch"}, {"door", v.at("revealed_door")}}); }), 400);
  EXPECT_EQ(status_of([&] { svc.decide(id, {{"action", "dance"}}); }), 400);
  const int other = v.at("switch_options").at(0);
  EXPECT_EQ(svc.decide(id, {{"action", "switch"}, {"door", other}}).at("final_door"), other);
}

TEST(SessionTest, ReplayIsDeterministic) {
  SessionService a, b;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto play = [&](SessionService& svc) {
      const std::string id = svc.create({{"game", "psi-epistemic"}, {"params", {{"q1", "1/8"}}}, {"seed", seed}}).at("id");
      auto v = svc.pick(id, {{"door", 3}});
      if (v.at("phase") == "awaiting_decision") v = svc.decide(id, {{"action", "switch"}});
      v.erase("id");
      return v;
    };
    EXPECT_EQ(play(a), play(b));
  }
}

TEST(SessionTest, IdsAreDistinctEvenForEqualSeeds) {
  SessionService svc;
  EXPECT_NE(svc.create({{"game", "classic"}, {"seed", 1}}).at("id"), svc.create({{"game", "classic"}, {"seed", 1}}).at("id"));
}

TEST(SessionTest, StatsTallyFinishedGames) {
  SessionService svc;
  int switch_wins = 0, switch_games = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::string id = svc.create({{"game", "classic"}, {"seed", seed}}).at("id");
    svc.pick(id, {{"door", 2}});
    const auto v = svc.decide(id, {{"action", "switch"}});
    ++switch_games;
    switch_wins += v.at("outcome") == "win";
  }
  const auto s = svc.stats({"classic", std::nullopt, 1});
  EXPECT_EQ(s.at("tallies").at("switch").at("games"), switch_games);
  EXPECT_EQ(s.at("tallies").at("switch").at("wins"), switch_wins);
  EXPECT_EQ(s.at("tallies").at("stick").at("games"), 0);
  EXPECT_EQ(s.at("exact").at("win_switch_given_goat"), (Json{{"num", 2}, {"den", 3}}));
  EXPECT_EQ(svc.stats({"psi-ontic", std::nullopt, 1}).at("tallies").at("finished"), 0);
}

TEST(SessionTest, SimulateEndpointBody) {
  SessionService svc;
  const auto r = svc.simulate({{"game", "psi-ontic"}, {"strategy", "switch"}, {"trials", 20000}, {"seed", 5}});
  EXPECT_EQ(r.at("command"), "simulate");
  EXPECT_EQ(r.at("metadata").at("seed"), 5);
  EXPECT_EQ(status_of([&] { svc.simulate({{"game", "classic"}, {"trials", 0}}); }), 400);
  EXPECT_EQ(status_of([&] { svc.simulate({{"game", "classic"}, {"strategy", "pray"}}); }), 400);
}

TEST(SessionTest, IdleSessionsExpire) {
  SessionService svc({std::chrono::seconds(10), std::nullopt, 1000});
  const std::string id = svc.create({{"game", "classic"}}).at("id");
  EXPECT_EQ(svc.expire_idle(Clock::now()), 0u);
  EXPECT_EQ(svc.expire_idle(Clock::now() + std::chrono::seconds(11)), 1u);
  EXPECT_EQ(svc.size(), 0u);
  EXPECT_EQ(status_of([&] { svc.get(id); }), 404);
}

TEST(SessionTest, TranscriptFileHasOneLinePerEvent) {
  const auto path = std::filesystem::temp_directory_path() / "montyq_session_transcript.jsonl";
  std::filesystem::remove(path);
  {
    SessionService svc({std::chrono::seconds(60), path, 1000});
    const std::string id = svc.create({{"game", "classic"}, {"seed", 2}}).at("id");
    svc.pick(id, {{"door", 3}});
    svc.decide(id, {{"action", "stick"}});
  }
  std::ifstream in(path);
  std::vector<Json> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(Json::parse(line));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0].at("event"), "create");
  EXPECT_EQ(lines[2].at("event"), "decision");
  EXPECT_EQ(lines[0].at("session"), lines[2].at("session"));
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace montyq::session
