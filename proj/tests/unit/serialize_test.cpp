#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "montyq/catalog.hpp"
#include "montyq/envelope.hpp"
#include "montyq/games.hpp"
#include "montyq/serialize.hpp"

namespace montyq::serialize {
namespace {

TEST(RationalJsonTest, ObjectForm) {
  const auto j = to_json(frac(3, 11));
  EXPECT_EQ(j, (Json{{"num", 3}, {"den", 11}}));
  EXPECT_EQ(rational_from_json(j), frac(3, 11));
  EXPECT_EQ(rational_from_json(Json("4/12")), frac(1, 3));
  EXPECT_EQ(rational_from_json(Json(2)), 2);
}

TEST(RationalJsonTest, BeyondSixtyFourBits) {
  const Rational big = Rational(BigInt("123456789012345678901234567890"), BigInt(7));
  const auto j = to_json(big);
  EXPECT_TRUE(j.at("num").is_string());
  EXPECT_EQ(rational_from_json(j), big);
}

TEST(RationalJsonTest, RejectsMalformed) {
  EXPECT_THROW(rational_from_json(Json{{"num", 1}}), std::invalid_argument);
  EXPECT_THROW(rational_from_json(Json{{"num", 1}, {"den", 0}}), std::invalid_argument);
  EXPECT_THROW(rational_from_json(Json(0.5)), std::invalid_argument);
  EXPECT_THROW(rational_from_json(Json::array()), std::invalid_argument);
}

TEST(GameSpecJsonTest, RandomSpecsRoundTrip) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto g = testing::random_valid_spec(rng, 3 + t % 3);
    const auto j = to_json(g);
    EXPECT_EQ(game_spec_from_json(j), g);
    EXPECT_EQ(game_spec_from_json(Json::parse(j.dump())), g);
  }
}

TEST(GameSpecJsonTest, CatalogRoundTripKeepsLabels) {
  for (const auto& name : catalog::game_names()) {
    const auto g = catalog::make_game({name, std::nullopt, 1});
    EXPECT_EQ(game_spec_from_json(to_json(g)), g) << name;
  }
}

TEST(GameSpecJsonTest, StableKeys) {
  const auto j = to_json(games::classic_game());
  for (const char* key : {"label", "doors", "prize_dist", "contestant_dist", "host_policy", "switch_policy"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(GameSpecJsonTest, RejectsWrongShapes) {
  auto j = to_json(games::classic_game());
  j["host_policy"] = Json::array();
  EXPECT_THROW(game_spec_from_json(j), std::invalid_argument);
  EXPECT_THROW(game_spec_from_json(Json::object()), std::invalid_argument);
  auto k = to_json(games::classic_game());
  k["prize_dist"] = Json::array({1, 0});
  EXPECT_THROW(game_spec_from_json(k), std::invalid_argument);
}

TEST(AnalysisJsonTest, RoundTrip) {
  for (const auto& name : catalog::game_names()) {
    const auto a = engine::enumerate_joint(catalog::make_game({name, std::nullopt, 1}));
    EXPECT_EQ(analysis_from_json(Json::parse(to_json(a).dump())), a) << name;
  }
}

TEST(SimulationReportJsonTest, RoundTrip) {
  const auto r = engine::simulate(games::psi_ontic_game(), engine::Strategy::per_trial_random, 1000, 8);
  EXPECT_EQ(simulation_report_from_json(Json::parse(to_json(r).dump())), r);
}

TEST(EnvelopeTest, AnalysisRoundTrip) {
  catalog::GameRequest req{"psi-epistemic", games::EpistemicParams{frac(1, 8), frac(1, 16), frac(1, 16)}, 2};
  const auto e = analysis_envelope(req);
  const auto j = to_json(e);
  EXPECT_EQ(envelope_from_json(Json::parse(j.dump())), e);
  for (const char* key : {"command", "parameters", "exact_results", "float_results", "metadata"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j.at("metadata").contains("version"));
}

TEST(EnvelopeTest, FloatsMirrorExacts) {
  const auto j = to_json(analysis_envelope({"psi-ontic", std::nullopt, 1}));
  for (const auto& [key, value] : j.at("exact_results").items()) {
    ASSERT_TRUE(j.at("float_results").contains(key)) << key;
    EXPECT_DOUBLE_EQ(j.at("float_results").at(key).get<double>(), to_double(rational_from_json(value)));
  }
  EXPECT_EQ(rational_from_json(j.at("exact_results").at("win_switch_given_goat")), frac(4, 11));
}

TEST(EnvelopeTest, SimulationAndBornRoundTrip) {
  const auto s = simulation_envelope({"classic", std::nullopt, 1}, engine::Strategy::switch_door, 2000, 3);
  EXPECT_EQ(envelope_from_json(Json::parse(to_json(s).dump())), s);
  const auto b = born_envelope();
  EXPECT_EQ(envelope_from_json(Json::parse(to_json(b).dump())), b);
  EXPECT_EQ(b.exact_results.at("psi1_phi1"), 0);
  EXPECT_EQ(b.data.at("antidistinguishable"), true);
}

TEST(EnvelopeTest, RejectsMissingCommand) {
  EXPECT_THROW(envelope_from_json(Json::object()), std::invalid_argument);
}

}  // namespace
}  // namespace montyq::serialize
