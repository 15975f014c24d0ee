#include "montyq/teleport.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace montyq::teleport {

bool QubitState::is_normalized() const { return std::abs(norm_squared() - 1.0) <= kNormTolerance; }

QubitState haar_random(Rng& rng) {
  const double cos_theta = 2.0 * rng.uniform01() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform01();
  const double c = std::sqrt((1.0 + cos_theta) / 2.0);
  const double s = std::sqrt((1.0 - cos_theta) / 2.0);
  return {Complex(c, 0.0), std::polar(s, phi)};
}

double fidelity(const QubitState& a, const QubitState& b) {
  return std::norm(std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta);
}

TwoBits parse_bits(std::string_view text) {
  if (text.size() != 2 || (text[0] != '0' && text[0] != '1') || (text[1] != '0' && text[1] != '1'))
    throw std::invalid_argument("expected two bits such as 01, got '" + std::string(text) + "'");
  return {static_cast<unsigned>(text[0] - '0'), static_cast<unsigned>(text[1] - '0')};
}

std::string_view to_string(CorrectionOp op) {
  switch (op) {
    case CorrectionOp::I: return "I";
    case CorrectionOp::X: return "X";
    case CorrectionOp::Z: return "Z";
    case CorrectionOp::ZX: return "ZX";
    case CorrectionOp::negI: return "negI";
    case CorrectionOp::negX: return "negX";
    case CorrectionOp::negZ: return "negZ";
    case CorrectionOp::negZX: return "negZX";
  }
  return "I";
}

std::array<std::array<int, 2>, 2> matrix(CorrectionOp op) {
  switch (op) {
    case CorrectionOp::I: return {{{1, 0}, {0, 1}}};
    case CorrectionOp::X: return {{{0, 1}, {1, 0}}};
    case CorrectionOp::Z: return {{{1, 0}, {0, -1}}};
    case CorrectionOp::ZX: return {{{0, 1}, {-1, 0}}};
    case CorrectionOp::negI: return {{{-1, 0}, {0, -1}}};
    case CorrectionOp::negX: return {{{0, -1}, {-1, 0}}};
    case CorrectionOp::negZ: return {{{-1, 0}, {0, 1}}};
    case CorrectionOp::negZX: return {{{0, -1}, {1, 0}}};
  }
  return {{{1, 0}, {0, 1}}};
}

QubitState apply(CorrectionOp op, const QubitState& s) {
  const auto m = matrix(op);
  return {double(m[0][0]) * s.alpha + double(m[0][1]) * s.beta, double(m[1][0]) * s.alpha + double(m[1][1]) * s.beta};
}

std::array<Branch, 4> teleport_step(const QubitState& input, BellLabel bell) {
  if (!input.is_normalized()) throw std::invalid_argument("teleport input is not normalized");

  // Amplitude index (q0 << 2) | (q1 << 1) | q2; q0 = psi, q1 = Alice's half, q2 = Bob's.
  std::array<Complex, 8> amp{};
  const double r = std::numbers::sqrt2 / 2.0;
  const double sign = bell.first ? -1.0 : 1.0;
  const unsigned y = bell.second;
  const unsigned ybar = 1 - y;
  const std::array<Complex, 2> psi{input.alpha, input.beta};
  for (unsigned q0 = 0; q0 < 2; ++q0) {
    amp[(q0 << 2) | (0u << 1) | y] += psi[q0] * r;
    amp[(q0 << 2) | (1u << 1) | ybar] += psi[q0] * r * sign;
  }

  // CNOT, control q0, target q1
  for (unsigned q2 = 0; q2 < 2; ++q2) std::swap(amp[(1u << 2) | (0u << 1) | q2], amp[(1u << 2) | (1u << 1) | q2]);

  // Hadamard on q0
  for (unsigned rest = 0; rest < 4; ++rest) {
    const Complex a0 = amp[rest];
    const Complex a1 = amp[4 | rest];
    amp[rest] = (a0 + a1) * r;
    amp[4 | rest] = (a0 - a1) * r;
  }

  std::array<Branch, 4> out{};
  for (std::size_t ab = 0; ab < 4; ++ab) {
    const Complex b0 = amp[(ab << 1) | 0];
    const Complex b1 = amp[(ab << 1) | 1];
    const double p = std::norm(b0) + std::norm(b1);
    const double scale = p > 0.0 ? 1.0 / std::sqrt(p) : 0.0;
    out[ab] = {TwoBits::from_index(ab), p, {b0 * scale, b1 * scale}};
  }
  return out;
}

CorrectionOp correction_for(BellLabel bell, TwoBits alice_result) {
  // Bob's pre-correction qubit for (bell xy, result ab), with s = (-1)^x:
  //   b = 0:  alpha|y>    + (-1)^a s beta|ybar>
  //   b = 1:  s alpha|ybar> + (-1)^a beta|y>
  // so psi -> U psi with U a signed permutation; the correction is U^T.
  const int s = bell.first ? -1 : 1;
  const int sa = alice_result.first ? -1 : 1;
  const unsigned y = bell.second;
  const unsigned ybar = 1 - y;

  unsigned alpha_pos, beta_pos;
  int alpha_sign, beta_sign;
  if (alice_result.second == 0) {
    alpha_pos = y, alpha_sign = 1;
    beta_pos = ybar, beta_sign = sa * s;
  } else {
    alpha_pos = ybar, alpha_sign = s;
    beta_pos = y, beta_sign = sa;
  }

  std::array<std::array<int, 2>, 2> inv{};
  inv[0][alpha_pos] = alpha_sign;
  inv[1][beta_pos] = beta_sign;

  for (auto op : {CorrectionOp::I, CorrectionOp::X, CorrectionOp::Z, CorrectionOp::ZX, CorrectionOp::negI,
                  CorrectionOp::negX, CorrectionOp::negZ, CorrectionOp::negZX})
    if (matrix(op) == inv) return op;
  throw std::logic_error("correction is not a signed Pauli operator");
}

engine::GameSpec monty_teleport_game() {
  engine::GameSpec g(4, "monty-teleport");
  g.set_door_labels({"00", "01", "10", "11"});
  for (std::size_t i = 0; i < 4; ++i) {
    g.prize(i) = frac(1, 4);
    g.contestant(i, 0) = 1;
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const long long options = i == j ? 3 : 2;
      for (std::size_t k = 0; k < 4; ++k)
        if (k != i && k != j) g.host(i, j, k) = frac(1, options);
    }
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) {
      if (j == k) continue;
      for (std::size_t l = 0; l < 4; ++l)
        if (l != j && l != k) g.switching(j, k, l) = frac(1, 2);
    }
  return g;
}

std::vector<TwoBits> consistent_doors(unsigned bit) {
  std::vector<TwoBits> out;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto d = TwoBits::from_index(i);
    if (d.first == bit || d.second == bit) out.push_back(d);
  }
  return out;
}

UnreliableReport unreliable_analysis(BellLabel bell) {
  UnreliableReport r{bell, {}, {}, {}, {}, {}};
  const Rational p_result = frac(1, 4);
  const Rational p_position = frac(1, 2);
  for (std::size_t ab = 0; ab < 4; ++ab) {
    const auto result = TwoBits::from_index(ab);
    for (unsigned position = 0; position < 2; ++position) {
      const unsigned d = position == 0 ? result.first : result.second;
      const Rational p = p_result * p_position;
      r.p_received[d] += p;
      if (result == bell) r.stick_and[d] += p;
      std::vector<TwoBits> targets;
      for (const auto& door : consistent_doors(d))
        if (!(door == bell)) targets.push_back(door);
      for (const auto& door : targets)
        if (door == result) r.switch_and[d] += p / static_cast<long long>(targets.size());
    }
  }
  for (unsigned d = 0; d < 2; ++d) {
    r.stick_given[d] = r.stick_and[d] / r.p_received[d];
    r.switch_given[d] = r.switch_and[d] / r.p_received[d];
  }
  return r;
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::standard: return "standard";
    case Mode::monty: return "monty";
    case Mode::unreliable: return "unreliable";
  }
  return "standard";
}

Mode parse_mode(std::string_view text) {
  if (text == "standard") return Mode::standard;
  if (text == "monty") return Mode::monty;
  if (text == "unreliable") return Mode::unreliable;
  throw std::invalid_argument("unknown teleport mode '" + std::string(text) + "' (standard|monty|unreliable)");
}

namespace {

std::size_t below(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n));
}

TwoBits uniform_choice(Rng& rng, const std::vector<TwoBits>& options) { return options[below(rng, options.size())]; }

bool wants_stick(engine::Strategy strategy, Rng& rng) {
  if (strategy == engine::Strategy::per_trial_random) return rng.coin();
  return strategy == engine::Strategy::stick;
}

}  // namespace

TeleportSession run_session(Mode mode, engine::Strategy strategy, Rng& rng) {
  TeleportSession s;
  s.input = haar_random(rng);
  s.bell = {0, 0};
  const auto branches = teleport_step(s.input, s.bell);

  const double u = rng.uniform01();
  double acc = 0.0;
  std::size_t ab = 3;
  for (std::size_t m = 0; m < 4; ++m) {
    acc += branches[m].probability;
    if (u < acc) {
      ab = m;
      break;
    }
  }
  s.alice_result = TwoBits::from_index(ab);

  switch (mode) {
    case Mode::standard:
      s.bob_door = s.alice_result;
      break;
    case Mode::monty: {
      std::vector<TwoBits> goats;
      for (std::size_t i = 0; i < 4; ++i)
        if (i != s.bell.index() && i != ab) goats.push_back(TwoBits::from_index(i));
      s.revealed = uniform_choice(rng, goats);
      if (wants_stick(strategy, rng)) {
        s.bob_door = s.bell;
      } else {
        std::vector<TwoBits> targets;
        for (std::size_t i = 0; i < 4; ++i)
          if (i != s.bell.index() && i != s.revealed->index()) targets.push_back(TwoBits::from_index(i));
        s.bob_door = uniform_choice(rng, targets);
      }
      break;
    }
    case Mode::unreliable: {
      s.channel = Channel::one_bit_lost;
      s.received_bit = rng.coin() ? s.alice_result.first : s.alice_result.second;
      if (wants_stick(strategy, rng)) {
        s.bob_door = s.bell;
      } else {
        std::vector<TwoBits> targets;
        for (const auto& door : consistent_doors(*s.received_bit))
          if (!(door == s.bell)) targets.push_back(door);
        s.bob_door = uniform_choice(rng, targets);
      }
      break;
    }
  }

  s.bob_action = correction_for(s.bell, s.bob_door);
  s.fidelity = fidelity(s.input, apply(s.bob_action, branches[ab].bob_state));
  return s;
}

TeleportReport simulate_teleport(Mode mode, engine::Strategy strategy, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("simulation needs at least one trial");
  TeleportReport t;
  t.mode = mode;
  t.condition = mode == Mode::unreliable ? "received bit 0" : "all trials";
  t.report.trials = trials;
  t.report.seed = seed;
  t.report.strategy = strategy;
  Rng rng(seed);
  double fidelity_sum = 0.0;
  for (std::uint64_t n = 0; n < trials; ++n) {
    const auto s = run_session(mode, strategy, rng);
    fidelity_sum += s.fidelity;
    t.min_fidelity = std::min(t.min_fidelity, s.fidelity);
    const bool in_condition = mode != Mode::unreliable || *s.received_bit == 0;
    if (s.won()) ++t.wins_all;
    if (in_condition) {
      ++t.report.goat_reveals;
      if (s.won()) ++t.report.wins;
    } else {
      ++t.report.prize_reveals;
    }
  }
  t.mean_fidelity = fidelity_sum / static_cast<double>(trials);
  t.report.empirical_win_given_goat =
      t.report.goat_reveals ? static_cast<double>(t.report.wins) / static_cast<double>(t.report.goat_reveals) : 0.0;
  return t;
}

}  // namespace montyq::teleport
