// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "brute_force.hpp"
#include "generators.hpp"
#include "montyq/catalog.hpp"
#include "montyq/engine.hpp"
#include "montyq/games.hpp"
#include "montyq/qcore.hpp"
#include "montyq/server.hpp"
#include "montyq/session.hpp"
#include "montyq/teleport.hpp"

namespace {

using namespace montyq;
using Json = serialize::Json;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct Criterion {
  std::string name;
  double budget_seconds;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

std::string str(const Rational& r) { return to_string(r); }

bool within(double empirical, double p, std::uint64_t n, double* band = nullptr) {
  const double b = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  if (band) *band = b;
  return std::abs(empirical - p) <= b;
}

Outcome born_matrix() {
  Outcome o;
  const auto t = qcore::born_matrix();
  const std::array<Rational, 4> first{0, frac(1, 4), frac(1, 4), frac(1, 2)};
  for (std::size_t i = 0; i < 4; ++i) o.require(t.at(0, i) == first[i], "row 1 entry " + std::to_string(i + 1) + " = " + str(t.at(0, i)));
  std::vector<Rational> expected{0, frac(1, 4), frac(1, 4), frac(1, 2)};
  for (std::size_t h = 0; h < 4; ++h) {
    o.require(t.at(h, h) == 0, "diagonal " + std::to_string(h + 1) + " nonzero");
    std::vector<Rational> row(t.entries[h].begin(), t.entries[h].end());
    std::sort(row.begin(), row.end());
    o.require(row == expected, "row " + std::to_string(h + 1) + " is not a permutation of {0,1/4,1/4,1/2}");
  }
  const auto basis = qcore::pbr_basis();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const auto ip = qcore::inner(basis[i], basis[j]);
      o.require(i == j ? ip == qcore::ExactAmplitude::one() : ip.is_zero(),
                "basis <" + std::to_string(i + 1) + "|" + std::to_string(j + 1) + "> = " + ip.to_string());
    }
  return o;
}

Outcome classic() {
  Outcome o;
  const auto a = engine::enumerate_joint(games::classic_game());
  o.require(a.p_win_switch() == frac(2, 3), "switch " + str(a.p_win_switch()));
  o.require(a.p_win_stick() == frac(1, 3), "stick " + str(a.p_win_stick()));
  return o;
}

Outcome ignorant() {
  Outcome o;
  const auto a = engine::enumerate_joint(games::ignorant_game());
  o.require(a.p_opens_prize == frac(1, 3), "opens prize " + str(a.p_opens_prize));
  o.require(a.p_win_stick_given_goat == frac(1, 2), "stick|goat");
  o.require(a.p_win_switch_given_goat == frac(1, 2), "switch|goat");
  return o;
}

Outcome psi_ontic() {
  Outcome o;
  const auto a = engine::enumerate_joint(games::psi_ontic_game());
  o.require(a.p_opens_prize == frac(1, 12), "opens prize " + str(a.p_opens_prize));
  o.require(a.p_opens_goat == frac(11, 12), "opens goat " + str(a.p_opens_goat));
  o.require(a.p_win_stick_given_goat == frac(3, 11), "stick|goat");
  o.require(a.p_win_switch_given_goat == frac(4, 11), "switch|goat");
  return o;
}

Outcome psi_epistemic() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  auto check = [&](const games::EpistemicParams& p, const std::string& tag) {
    const auto a = engine::enumerate_joint(games::psi_epistemic_game(p));
    const Rational q = p.q1 + p.q2 + p.q3;
    const Rational stick = Rational(3) / (11 - 8 * q);
    const Rational sw = (4 - 4 * q) / (11 - 8 * q);
    o.require(a.p_win_stick_given_goat == stick && a.p_win_switch_given_goat == sw, tag + " at q = " + str(q));
    return a;
  };
  for (int t = 0; t < 100; ++t) check(testing::random_epistemic(rng), "random set " + std::to_string(t));
  const Rational q = frac(1, 5);
  const auto base = check(games::split_q(q, {1, 1, 1}), "split 1:1:1");
  for (const std::array<Rational, 3> ratio : {std::array<Rational, 3>{1, 0, 0}, {0, 0, 1}, {3, 1, 2}, {0, 5, 1}}) {
    const auto a = check(games::split_q(q, ratio), "split");
    o.require(a.p_win_stick_given_goat == base.p_win_stick_given_goat &&
                  a.p_win_switch_given_goat == base.p_win_switch_given_goat,
              "split invariance broken");
  }
  const auto at = check(games::split_q(frac(1, 4), {1, 1, 1}), "crossover");
  o.require(at.p_win_stick_given_goat == at.p_win_switch_given_goat, "stick != switch at q = 1/4");
  o.require(at.p_win_stick_given_goat == frac(1, 3), "crossover value " + str(*at.p_win_stick_given_goat));
  return o;
}

void compare(Outcome& o, const std::string& name, const engine::GameAnalysis& a, const testing::BruteForceResult& b) {
  o.require(b.total == 1, name + ": oracle mass " + str(b.total));
  o.require(a.p_opens_prize == b.opens_prize, name + ": opens prize");
  o.require(a.p_win_stick_and_goat == b.stick_and_goat, name + ": stick and goat");
  o.require(a.p_win_switch_and_goat == b.switch_and_goat, name + ": switch and goat");
  o.require(a.p_win_stick_given_goat == b.stick_given_goat, name + ": stick|goat");
  o.require(a.p_win_switch_given_goat == b.switch_given_goat, name + ": switch|goat");
}

Outcome brute_force() {
  Outcome o;
  compare(o, "classic", engine::enumerate_joint(games::classic_game()), testing::brute_force(testing::classic_rules()));
  compare(o, "ignorant", engine::enumerate_joint(games::ignorant_game()), testing::brute_force(testing::ignorant_rules()));
  compare(o, "psi-ontic", engine::enumerate_joint(games::psi_ontic_game()), testing::brute_force(testing::psi_rules(0, 0, 0)));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 25; ++t) {
    const auto p = testing::random_epistemic(rng);
    compare(o, "psi-epistemic", engine::enumerate_joint(games::psi_epistemic_game(p)),
            testing::brute_force(testing::psi_rules(p.q1, p.q2, p.q3)));
  }
  compare(o, "monty-teleport", engine::enumerate_joint(teleport::monty_teleport_game()),
          testing::brute_force(testing::monty_teleport_rules()));
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  constexpr std::uint64_t kTrials = 1'000'000;
  std::vector<catalog::GameRequest> requests;
  for (const auto& name : catalog::game_names()) requests.push_back({name, std::nullopt, 1});
  requests.push_back({"psi-epistemic", games::EpistemicParams{frac(1, 10), frac(1, 20), frac(1, 5)}, 1});
  std::uint64_t seed = 1000;
  int retries = 0;
  for (const auto& req : requests) {
    const auto spec = catalog::make_game(req);
    const auto a = engine::enumerate_joint(spec);
    for (auto strategy : {engine::Strategy::stick, engine::Strategy::switch_door, engine::Strategy::per_trial_random}) {
      const Rational exact = strategy == engine::Strategy::stick         ? *a.p_win_stick_given_goat
                             : strategy == engine::Strategy::switch_door ? *a.p_win_switch_given_goat
                                                                         : (*a.p_win_stick_given_goat + *a.p_win_switch_given_goat) / 2;
      const double p = to_double(exact);
      bool pass = false;
      std::ostringstream last;
      for (int attempt = 0; attempt < 2 && !pass; ++attempt) {
        if (attempt) ++retries;
        const auto r = engine::simulate(spec, strategy, kTrials, ++seed);
        double band = 0;
        pass = within(r.empirical_win_given_goat, p, r.goat_reveals, &band);
        last.str("");
        last << req.game << "/" << engine::to_string(strategy) << " " << r.empirical_win_given_goat << " vs " << p
             << " (band " << band << ")";
      }
      o.require(pass, last.str());
    }
  }
  if (o.ok) o.detail = std::to_string(requests.size() * 3) + " cells, " + std::to_string(retries) + " retries";
  return o;
}

Outcome teleport_fidelity() {
  Outcome o;
  Rng rng(31415);
  double worst = 1.0;
  for (int t = 0; t < 1000; ++t) {
    const auto psi = teleport::haar_random(rng);
    for (const teleport::TwoBits bell : {teleport::TwoBits{0, 0}, teleport::TwoBits{1, 1}}) {
      const auto branches = teleport::teleport_step(psi, bell);
      for (const auto& b : branches) {
        const auto fixed = teleport::apply(teleport::correction_for(bell, b.result), b.bob_state);
        worst = std::min(worst, teleport::fidelity(psi, fixed));
      }
      // exact restoration, sign included, on the (11,11) branch
      if (bell == teleport::TwoBits{1, 1}) {
        const auto& b = branches[3];
        const auto fixed = teleport::apply(teleport::correction_for(bell, b.result), b.bob_state);
        o.require(std::abs(fixed.alpha - psi.alpha) + std::abs(fixed.beta - psi.beta) < 1e-10, "(11,11) sign");
      }
    }
  }
  o.require(teleport::correction_for({1, 1}, {1, 1}) == teleport::CorrectionOp::negI, "(11,11) correction is not -I");
  o.require(worst >= teleport::kFidelityThreshold, "min fidelity " + std::to_string(worst));
  if (o.ok) o.detail = "8000 branches";
  return o;
}

Outcome monty_teleport() {
  Outcome o;
  const auto a = engine::enumerate_joint(teleport::monty_teleport_game());
  o.require(a.p_win_stick() == frac(2, 8), "stick " + str(a.p_win_stick()));
  o.require(a.p_win_switch() == frac(3, 8), "switch " + str(a.p_win_switch()));
  return o;
}

Outcome unreliable() {
  Outcome o;
  const auto r = teleport::unreliable_analysis();
  o.require(r.p_received[0] == frac(1, 2), "P(bit 0) " + str(r.p_received[0]));
  o.require(r.stick_given[0] == frac(1, 2), "stick|0 " + str(r.stick_given[0]));
  o.require(r.switch_given[0] == frac(1, 4), "switch|0 " + str(r.switch_given[0]));
  // Oracle: four equally likely results, each bit position equally likely to survive.
  std::array<Rational, 2> p{}, stick{}, sw{};
  for (int ab = 0; ab < 4; ++ab)
    for (int pos = 0; pos < 2; ++pos) {
      const int d = pos == 0 ? ab >> 1 : ab & 1;
      std::vector<int> consistent;
      for (int door = 0; door < 4; ++door)
        if ((door >> 1) == d || (door & 1) == d) consistent.push_back(door);
      std::vector<int> others;
      std::copy_if(consistent.begin(), consistent.end(), std::back_inserter(others), [](int door) { return door != 0; });
      p[d] += frac(1, 8);
      if (ab == 0) stick[d] += frac(1, 8);
      if (std::find(others.begin(), others.end(), ab) != others.end())
        sw[d] += frac(1, 8) / static_cast<long long>(others.size());
    }
  for (int d = 0; d < 2; ++d) {
    o.require(r.p_received[d] == p[d], "P(bit " + std::to_string(d) + ")");
    o.require(r.stick_given[d] == stick[d] / p[d], "stick|" + std::to_string(d));
    o.require(r.switch_given[d] == sw[d] / p[d], "switch|" + std::to_string(d));
  }
  o.require(r.stick_given[1] == 0 && r.switch_given[1] == frac(1, 3), "bit-1 values");
  return o;
}

Outcome session_api() {
  Outcome o;
  server::ServerOptions opts;
  opts.port = 0;
  server::HttpServer srv(opts);
  const int port = srv.bind();
  std::thread thread([&] { srv.serve(); });
  while (!srv.running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));

  httplib::Client client("127.0.0.1", port);
  client.set_keep_alive(true);
  client.set_tcp_nodelay(true);
  auto call = [&](const std::string& path, const Json& body) {
    auto r = client.Post(path, body.dump(), "application/json");
    if (!r || (r->status != 200 && r->status != 201))
      throw std::runtime_error(path + " failed" + (r ? ": " + r->body : std::string()));
    return Json::parse(r->body);
  };

  constexpr int kSessions = 100'000;
  std::mt19937_64 picks(99);
  std::uniform_int_distribution<int> door(1, 4);
  std::uint64_t goat = 0, wins = 0;
  Json kept;
  try {
    for (int s = 0; s < kSessions; ++s) {
      const std::string id = call("/sessions", {{"game", "psi-ontic"}, {"seed", s}}).at("id");
      auto v = call("/sessions/" + id + "/pick", {{"door", door(picks)}});
      if (v.at("revealed") == "prize") continue;
      ++goat;
      v = call("/sessions/" + id + "/decision", {{"action", "switch"}});
      wins += v.at("outcome") == "win";
      if (kept.is_null()) kept = v;
    }
  } catch (const std::exception& e) {
    o.require(false, e.what());
  }
  srv.stop();
  thread.join();
  if (!o.ok) return o;

  double band = 0;
  const double rate = static_cast<double>(wins) / static_cast<double>(goat);
  o.require(within(rate, 4.0 / 11.0, goat, &band), "switch|goat " + std::to_string(rate));

  // Replay the kept transcript through a fresh service with the disclosed seed.
  session::SessionService fresh;
  const Json& events = kept.at("transcript");
  const std::string id = fresh.create({{"game", "psi-ontic"}, {"seed", kept.at("seed")}}).at("id");
  fresh.pick(id, {{"door", events.at(1).at("picked")}});
  const auto replay = fresh.decide(id, {{"action", events.at(2).at("action")}});
  o.require(replay.at("transcript") == events, "replayed transcript differs");
  o.require(replay.at("prize_door") == kept.at("prize_door"), "replayed prize differs");

  std::ostringstream d;
  d << kSessions << " sessions over HTTP, " << goat << " goat reveals, switch|goat " << rate << " (4/11 +- " << band << ")";
  if (o.ok) o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"born-matrix", 1.0, born_matrix},
      {"classic-game", 0, classic},
      {"ignorant-game", 0, ignorant},
      {"psi-ontic-game", 0, psi_ontic},
      {"psi-epistemic-game", 5.0, psi_epistemic},
      {"brute-force-oracle", 0, brute_force},
      {"monte-carlo", 60.0, monte_carlo},
      {"teleport-fidelity", 0, teleport_fidelity},
      {"monty-teleport", 0, monty_teleport},
      {"unreliable-teleport", 0, unreliable},
      {"session-api", 0, session_api},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs >= c.budget_seconds) {
      std::ostringstream msg;
      msg << "took " << secs << " s, budget " << c.budget_seconds << " s";
      o.require(false, msg.str());
    }
    failed += !o.ok;
    std::printf("%s %-20s %8.3fs  %s\n", o.ok ? "PASS" : "FAIL", c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed;
}
