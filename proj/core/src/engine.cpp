#include "montyq/engine.hpp"

#include <sstream>

namespace montyq::engine {

GameSpec::GameSpec(std::size_t door_count, std::string label)
    : n_(door_count),
      label_(std::move(label)),
      prize_(door_count),
      contestant_(door_count * door_count),
      host_(door_count * door_count * door_count),
      switch_(door_count * door_count * door_count) {}

std::string GameSpec::door_name(std::size_t door) const {
  if (door < door_labels_.size()) return door_labels_[door];
  return std::to_string(door + 1);
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << distribution;
  if (!indices.empty()) {
    os << '[';
    for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
    os << ']';
  }
  os << ": " << message;
  return os.str();
}

namespace {

std::string join_violations(const std::vector<Violation>& v) {
  std::string s = "invalid game spec";
  for (const auto& x : v) s += "; " + x.to_string();
  return s;
}

Rational row_sum(const std::vector<Rational>& t, std::size_t offset, std::size_t n) {
  Rational s = 0;
  for (std::size_t m = 0; m < n; ++m) s += t[offset + m];
  return s;
}

}  // namespace

InvalidGameSpec::InvalidGameSpec(std::vector<Violation> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate(const GameSpec& spec) {
  std::vector<Violation> out;
  const std::size_t n = spec.door_count();
  if (n < 3) {
    out.push_back({"door_count", {}, "door count below 3 leaves no switch target"});
    return out;
  }
  if (spec.prize_table().size() != n || spec.contestant_table().size() != n * n ||
      spec.host_table().size() != n * n * n || spec.switch_table().size() != n * n * n) {
    out.push_back({"game", {}, "table sizes do not match door count"});
    return out;
  }
  if (!spec.door_labels().empty() && spec.door_labels().size() != n)
    out.push_back({"door_labels", {}, "door label count does not match door count"});

  auto check_nonneg = [&](const std::vector<Rational>& t, const char* name) {
    for (std::size_t m = 0; m < t.size(); ++m)
      if (t[m] < 0) {
        out.push_back({name, {m}, "negative probability"});
        return;
      }
  };
  check_nonneg(spec.prize_table(), "prize_dist");
  check_nonneg(spec.contestant_table(), "contestant_dist");
  check_nonneg(spec.host_table(), "host_policy");
  check_nonneg(spec.switch_table(), "switch_policy");

  if (row_sum(spec.prize_table(), 0, n) != 1)
    out.push_back({"prize_dist", {}, "prize distribution not normalized"});

  for (std::size_t i = 0; i < n; ++i)
    if (row_sum(spec.contestant_table(), i * n, n) != 1)
      out.push_back({"contestant_dist", {i}, "contestant distribution not normalized"});

  // goat_reach[j*n+k]: probability mass reaching a goat reveal k after pick j
  std::vector<Rational> goat_reach(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational reach = spec.prize(i) * spec.contestant(i, j);
      if (reach == 0) continue;
      if (spec.host(i, j, j) != 0) out.push_back({"host_policy", {i, j, j}, "host opens picked door"});
      if (row_sum(spec.host_table(), (i * n + j) * n, n) != 1)
        out.push_back({"host_policy", {i, j}, "host policy not normalized"});
      for (std::size_t k = 0; k < n; ++k)
        if (k != i) goat_reach[j * n + k] += reach * spec.host(i, j, k);
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k || goat_reach[j * n + k] == 0) continue;
      if (spec.switching(j, k, j) != 0 || spec.switching(j, k, k) != 0)
        out.push_back({"switch_policy", {j, k}, "switch target is the picked or revealed door"});
      if (row_sum(spec.switch_table(), (j * n + k) * n, n) != 1)
        out.push_back({"switch_policy", {j, k}, "switch policy not normalized"});
    }
  }
  return out;
}

void require_valid(const GameSpec& spec) {
  auto v = validate(spec);
  if (!v.empty()) throw InvalidGameSpec(std::move(v));
}

GameAnalysis enumerate_joint(const GameSpec& spec) {
  require_valid(spec);
  const std::size_t n = spec.door_count();
  GameAnalysis a;
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.prize(i) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational pij = spec.prize(i) * spec.contestant(i, j);
      if (pij == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const Rational pijk = pij * spec.host(i, j, k);
        if (pijk == 0) continue;
        if (k == i) {
          a.p_opens_prize += pijk;
          a.joint.push_back({i, j, k, std::nullopt, pijk});
          continue;
        }
        if (i == j) a.p_win_stick_and_goat += pijk;
        for (std::size_t l = 0; l < n; ++l) {
          const Rational p = pijk * spec.switching(j, k, l);
          if (p == 0) continue;
          if (l == i) a.p_win_switch_and_goat += p;
          a.joint.push_back({i, j, k, l, p});
        }
      }
    }
  }
  a.p_opens_goat = 1 - a.p_opens_prize;
  if (a.p_opens_goat != 0) {
    a.p_win_stick_given_goat = a.p_win_stick_and_goat / a.p_opens_goat;
    a.p_win_switch_given_goat = a.p_win_switch_and_goat / a.p_opens_goat;
  }
  return a;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::stick: return "stick";
    case Strategy::switch_door: return "switch";
    case Strategy::per_trial_random: return "random";
  }
  return "stick";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "stick") return Strategy::stick;
  if (text == "switch") return Strategy::switch_door;
  if (text == "random" || text == "per-trial-random") return Strategy::per_trial_random;
  throw std::invalid_argument("unknown strategy '" + std::string(text) + "' (stick|switch|random)");
}

namespace {

// Cumulative rows; rows whose exact sum is not 1 become all-zero (undefined).
std::vector<double> cumulative(const std::vector<Rational>& t, std::size_t n) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t off = 0; off < t.size(); off += n) {
    if (row_sum(t, off, n) != 1) continue;
    Rational acc = 0;
    for (std::size_t m = 0; m < n; ++m) {
      acc += t[off + m];
      out[off + m] = to_double(acc);
    }
  }
  return out;
}

}  // namespace

GameSampler::GameSampler(const GameSpec& spec) : n_(spec.door_count()) {
  require_valid(spec);
  prize_ = cumulative(spec.prize_table(), n_);
  contestant_ = cumulative(spec.contestant_table(), n_);
  host_ = cumulative(spec.host_table(), n_);
  switch_ = cumulative(spec.switch_table(), n_);
}

std::size_t GameSampler::draw(const std::vector<double>& cdf, std::size_t offset, Rng& rng) const {
  const double u = rng.uniform01();
  for (std::size_t m = 0; m < n_; ++m)
    if (u < cdf[offset + m]) return m;
  throw std::logic_error("sampled a distribution row the game leaves undefined");
}

SimulationReport simulate(const GameSpec& spec, Strategy strategy, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("simulation needs at least one trial");
  const GameSampler sampler(spec);
  Rng rng(seed);
  SimulationReport r;
  r.trials = trials;
  r.seed = seed;
  r.strategy = strategy;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t prize = sampler.prize(rng);
    const std::size_t pick = sampler.pick(rng, prize);
    const std::size_t reveal = sampler.reveal(rng, prize, pick);
    if (reveal == prize) {
      ++r.prize_reveals;
      continue;
    }
    ++r.goat_reveals;
    bool stick = strategy == Strategy::stick;
    if (strategy == Strategy::per_trial_random) stick = rng.coin();
    const std::size_t final_door = stick ? pick : sampler.switch_target(rng, pick, reveal);
    if (final_door == prize) ++r.wins;
  }
  r.empirical_win_given_goat =
      r.goat_reveals ? static_cast<double>(r.wins) / static_cast<double>(r.goat_reveals) : 0.0;
  return r;
}

}  // namespace montyq::engine
