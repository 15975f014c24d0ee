#pragma once

// Qubit teleportation as a three-qubit state-vector simulation, the Monty
// Hall reading of it, and the lost-bit channel analysis.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "montyq/engine.hpp"
#include "montyq/rational.hpp"
#include "montyq/rng.hpp"

namespace montyq::teleport {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kFidelityThreshold = 1.0 - 1e-10;

struct QubitState {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  double norm_squared() const { return std::norm(alpha) + std::norm(beta); }
  bool is_normalized() const;
};

// Haar-uniform pure state: cos(theta) uniform on [-1,1], phi uniform on [0, 2pi).
QubitState haar_random(Rng& rng);

// |<a|b>|^2; insensitive to global phase.
double fidelity(const QubitState& a, const QubitState& b);

/// Two classical bits. Doubles as a Bell label |beta_xy> (first = x,
/// second = y), Alice's measurement result ab, and a door of the
/// teleportation game (door index 2*first + second).
struct TwoBits {
  unsigned first = 0;
  unsigned second = 0;

  std::size_t index() const { return 2 * first + second; }
  static TwoBits from_index(std::size_t i) { return {static_cast<unsigned>(i >> 1), static_cast<unsigned>(i & 1)}; }
  std::string to_string() const { return std::string{char('0' + first), char('0' + second)}; }

  friend bool operator==(const TwoBits&, const TwoBits&) = default;
};

using BellLabel = TwoBits;

// Parses "00".."11"; throws std::invalid_argument.
TwoBits parse_bits(std::string_view text);

// Signed Pauli operators Bob may apply. ZX is the product Z*X (X first).
enum class CorrectionOp { I, X, Z, ZX, negI, negX, negZ, negZX };

std::string_view to_string(CorrectionOp op);
std::array<std::array<int, 2>, 2> matrix(CorrectionOp op);
QubitState apply(CorrectionOp op, const QubitState& s);

struct Branch {
  TwoBits result;         // Alice's measured bits ab
  double probability;     // Born weight, 1/4 for every normalized input
  QubitState bob_state;   // Bob's qubit before correction, normalized
};

// psi (x) beta_xy, CNOT on Alice's pair, Hadamard on her first qubit, then
// the four measurement branches. Throws std::invalid_argument for an
// unnormalized input.
std::array<Branch, 4> teleport_step(const QubitState& input, BellLabel bell);

// Operator restoring psi exactly (sign included) from the (bell, ab) branch.
CorrectionOp correction_for(BellLabel bell, TwoBits alice_result);

// Doors {00,01,10,11}; contestant fixed on 00; host opens a uniform door
// that is neither the contestant's nor the prize; uniform two-way switch.
engine::GameSpec monty_teleport_game();

// Doors whose bits include `bit`: the set Bob cannot rule out when only one
// bit of unknown position arrives.
std::vector<TwoBits> consistent_doors(unsigned bit);

struct UnreliableReport {
  BellLabel bell;
  std::array<Rational, 2> p_received;       // P(received bit d)
  std::array<Rational, 2> stick_and;        // P(win by sticking, bit d)
  std::array<Rational, 2> switch_and;       // P(win by uniform switch, bit d)
  std::array<Rational, 2> stick_given;      // conditioned on bit d
  std::array<Rational, 2> switch_given;
};

// Alice's result uniform over four; the surviving bit position uniform;
// Bob sees only the surviving value. Sticking means keeping door `bell`;
// switching picks uniformly among the other value-consistent doors.
UnreliableReport unreliable_analysis(BellLabel bell = {0, 0});

enum class Channel { perfect, one_bit_lost };
enum class Mode { standard, monty, unreliable };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view text);  // throws std::invalid_argument

/// One run of the protocol from input to Bob's corrected qubit.
struct TeleportSession {
  QubitState input;
  BellLabel bell;
  TwoBits alice_result;
  Channel channel = Channel::perfect;
  std::optional<unsigned> received_bit;  // set for the one-bit-lost channel
  std::optional<TwoBits> revealed;       // Alice's goat door cd in monty mode
  TwoBits bob_door;                      // the door whose correction Bob applied
  CorrectionOp bob_action = CorrectionOp::I;
  double fidelity = 0.0;

  bool won() const { return fidelity >= kFidelityThreshold; }
};

TeleportSession run_session(Mode mode, engine::Strategy strategy, Rng& rng);

/// Simulation counts. `report.goat_reveals` counts trials in the
/// conditioning event named by `condition`; `report.wins` counts wins inside
/// it. Standard and monty modes condition on every trial.
struct TeleportReport {
  engine::SimulationReport report;
  Mode mode = Mode::standard;
  std::string condition;
  std::uint64_t wins_all = 0;
  double min_fidelity = 1.0;
  double mean_fidelity = 0.0;
};

// Throws std::invalid_argument for trials == 0.
TeleportReport simulate_teleport(Mode mode, engine::Strategy strategy, std::uint64_t trials, std::uint64_t seed);

}  // namespace montyq::teleport
