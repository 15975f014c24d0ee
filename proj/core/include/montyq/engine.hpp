#pragma once

// Finite Monty Hall games: exact joint-probability enumeration over
// (prize, pick, reveal, switch target) and seeded Monte Carlo sampling.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "montyq/rational.hpp"
#include "montyq/rng.hpp"

namespace montyq::engine {

/// A complete finite game. All doors are zero-based internally.
///
/// Tables are conditional distributions:
///   prize(i)            P(A_i)
///   contestant(i, j)    P(B_j | A_i)
///   host(i, j, k)       P(C_k | B_j, A_i)
///   switching(j, k, l)  P(D_l | C_k, B_j), the switch target after a goat reveal
class GameSpec {
 public:
  GameSpec() = default;
  GameSpec(std::size_t door_count, std::string label);

  std::size_t door_count() const { return n_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  // Display names for doors; "1".."n" unless overridden.
  std::string door_name(std::size_t door) const;
  const std::vector<std::string>& door_labels() const { return door_labels_; }
  void set_door_labels(std::vector<std::string> labels) { door_labels_ = std::move(labels); }

  Rational& prize(std::size_t i) { return prize_.at(i); }
  const Rational& prize(std::size_t i) const { return prize_.at(i); }
  Rational& contestant(std::size_t i, std::size_t j) { return contestant_.at(i * n_ + j); }
  const Rational& contestant(std::size_t i, std::size_t j) const { return contestant_.at(i * n_ + j); }
  Rational& host(std::size_t i, std::size_t j, std::size_t k) { return host_.at((i * n_ + j) * n_ + k); }
  const Rational& host(std::size_t i, std::size_t j, std::size_t k) const {
    return host_.at((i * n_ + j) * n_ + k);
  }
  Rational& switching(std::size_t j, std::size_t k, std::size_t l) { return switch_.at((j * n_ + k) * n_ + l); }
  const Rational& switching(std::size_t j, std::size_t k, std::size_t l) const {
    return switch_.at((j * n_ + k) * n_ + l);
  }

  // Flat row-major storage, exposed for serialization.
  const std::vector<Rational>& prize_table() const { return prize_; }
  const std::vector<Rational>& contestant_table() const { return contestant_; }
  const std::vector<Rational>& host_table() const { return host_; }
  const std::vector<Rational>& switch_table() const { return switch_; }
  std::vector<Rational>& prize_table() { return prize_; }
  std::vector<Rational>& contestant_table() { return contestant_; }
  std::vector<Rational>& host_table() { return host_; }
  std::vector<Rational>& switch_table() { return switch_; }

  friend bool operator==(const GameSpec&, const GameSpec&) = default;

 private:
  std::size_t n_ = 0;
  std::string label_;
  std::vector<std::string> door_labels_;
  std::vector<Rational> prize_;
  std::vector<Rational> contestant_;
  std::vector<Rational> host_;
  std::vector<Rational> switch_;
};

struct Violation {
  std::string distribution;          // "prize_dist", "host_policy", ...
  std::vector<std::size_t> indices;  // zero-based
  std::string message;

  std::string to_string() const;
};

// Empty iff the spec is a well-formed game. Never throws.
std::vector<Violation> validate(const GameSpec& spec);

class InvalidGameSpec : public std::invalid_argument {
 public:
  explicit InvalidGameSpec(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Throws InvalidGameSpec when validate() is non-empty.
void require_valid(const GameSpec& spec);

struct JointEntry {
  std::size_t prize;
  std::size_t pick;
  std::size_t reveal;
  std::optional<std::size_t> target;  // empty when the host revealed the prize
  Rational probability;

  friend bool operator==(const JointEntry&, const JointEntry&) = default;
};

struct GameAnalysis {
  std::vector<JointEntry> joint;  // non-zero outcomes only
  Rational p_opens_prize;
  Rational p_opens_goat;
  Rational p_win_stick_and_goat;
  Rational p_win_switch_and_goat;
  // Empty only for a game whose host always reveals the prize.
  std::optional<Rational> p_win_stick_given_goat;
  std::optional<Rational> p_win_switch_given_goat;

  // A host revealing the prize ends the game as a loss, so the unconditional
  // win probabilities coincide with the goat-joint ones.
  const Rational& p_win_stick() const { return p_win_stick_and_goat; }
  const Rational& p_win_switch() const { return p_win_switch_and_goat; }

  friend bool operator==(const GameAnalysis&, const GameAnalysis&) = default;
};

// Exact chain-rule enumeration. Throws InvalidGameSpec.
GameAnalysis enumerate_joint(const GameSpec& spec);

enum class Strategy { stick, switch_door, per_trial_random };

std::string_view to_string(Strategy s);
// Accepts "stick", "switch", "random"/"per-trial-random". Throws std::invalid_argument.
Strategy parse_strategy(std::string_view text);

struct SimulationReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::stick;
  std::uint64_t wins = 0;
  std::uint64_t goat_reveals = 0;
  std::uint64_t prize_reveals = 0;
  double empirical_win_given_goat = 0.0;

  friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/// Inverse-CDF sampler over a validated spec. Cumulative tables are built
/// from the exact rationals, so the last reachable entry of every row has
/// cumulative weight exactly 1.0.
class GameSampler {
 public:
  explicit GameSampler(const GameSpec& spec);  // throws InvalidGameSpec

  std::size_t door_count() const { return n_; }

  std::size_t prize(Rng& rng) const { return draw(prize_, 0, rng); }
  std::size_t pick(Rng& rng, std::size_t prize) const { return draw(contestant_, prize * n_, rng); }
  std::size_t reveal(Rng& rng, std::size_t prize, std::size_t pick) const {
    return draw(host_, (prize * n_ + pick) * n_, rng);
  }
  std::size_t switch_target(Rng& rng, std::size_t pick, std::size_t reveal) const {
    return draw(switch_, (pick * n_ + reveal) * n_, rng);
  }

  // False for a (prize, pick) pair the host table leaves undefined.
  bool host_defined(std::size_t prize, std::size_t pick) const {
    return host_[((prize * n_ + pick) * n_) + n_ - 1] > 0.5;
  }
  bool switch_defined(std::size_t pick, std::size_t reveal) const {
    return switch_[((pick * n_ + reveal) * n_) + n_ - 1] > 0.5;
  }

 private:
  std::size_t draw(const std::vector<double>& cdf, std::size_t offset, Rng& rng) const;

  std::size_t n_;
  std::vector<double> prize_, contestant_, host_, switch_;
};

// Sequential seeded simulation; identical inputs give identical reports.
// Throws InvalidGameSpec, or std::invalid_argument for trials == 0.
SimulationReport simulate(const GameSpec& spec, Strategy strategy, std::uint64_t trials, std::uint64_t seed);

}  // namespace montyq::engine
