#include "montyq/games.hpp"

#include <stdexcept>

#include "montyq/qcore.hpp"

namespace montyq::games {

using engine::GameSpec;

namespace {

void uniform_switch(GameSpec& g) {
  const std::size_t n = g.door_count();
  const Rational w = frac(1, static_cast<long long>(n - 2));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      for (std::size_t l = 0; l < n; ++l)
        if (l != j && l != k) g.switching(j, k, l) = w;
    }
}

void uniform_contestant(GameSpec& g) {
  const std::size_t n = g.door_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.contestant(i, j) = frac(1, static_cast<long long>(n));
}

std::size_t forbidden_door(int state) {
  if (state < 1 || state > 4) throw std::out_of_range("preparation state must be 1..4");
  return static_cast<std::size_t>(state - 1);
}

// The host trusts the Born rule: door `forbidden` is always a goat.
GameSpec born_trusting_game(const std::array<Rational, 4>& prize, std::size_t forbidden, std::string label) {
  GameSpec g(4, std::move(label));
  for (std::size_t i = 0; i < 4; ++i) g.prize(i) = prize[i];
  uniform_contestant(g);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) {
        if (j == forbidden)
          g.host(i, j, k) = k != forbidden ? frac(1, 3) : Rational(0);
        else
          g.host(i, j, k) = k == forbidden ? Rational(1) : Rational(0);
      }
  uniform_switch(g);
  return g;
}

}  // namespace

std::vector<std::string> EpistemicParams::violations() const {
  std::vector<std::string> out;
  auto check = [&](const Rational& v, const Rational& hi, const char* name) {
    if (v < 0 || v > hi) out.push_back(std::string(name) + " = " + to_string(v) + " outside [0, " + to_string(hi) + "]");
  };
  check(q1, frac(1, 4), "q1");
  check(q2, frac(1, 4), "q2");
  check(q3, frac(1, 2), "q3");
  return out;
}

GameSpec classic_game() {
  GameSpec g(3, "classic");
  for (std::size_t i = 0; i < 3; ++i) g.prize(i) = frac(1, 3);
  uniform_contestant(g);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        if (k == j || k == i) continue;
        g.host(i, j, k) = i == j ? frac(1, 2) : Rational(1);
      }
  uniform_switch(g);
  return g;
}

GameSpec ignorant_game() {
  GameSpec g(3, "ignorant");
  for (std::size_t i = 0; i < 3; ++i) g.prize(i) = frac(1, 3);
  uniform_contestant(g);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        if (k != j) g.host(i, j, k) = frac(1, 2);
  uniform_switch(g);
  return g;
}

GameSpec psi_ontic_game(int state) {
  const std::size_t forbidden = forbidden_door(state);
  const auto row = qcore::born_matrix().row(forbidden);
  return born_trusting_game(row, forbidden, "psi-ontic (state " + std::to_string(state) + ")");
}

GameSpec psi_epistemic_game(const EpistemicParams& params, int state) {
  const std::size_t forbidden = forbidden_door(state);
  if (auto v = params.violations(); !v.empty()) {
    std::string msg = "epistemic parameters out of range";
    for (const auto& s : v) msg += "; " + s;
    throw std::out_of_range(msg);
  }
  auto row = qcore::born_matrix().row(forbidden);
  bool first_quarter = true;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i == forbidden) {
      row[i] += params.q();
    } else if (row[i] == frac(1, 2)) {
      row[i] -= params.q3;
    } else {
      row[i] -= first_quarter ? params.q1 : params.q2;
      first_quarter = false;
    }
  }
  return born_trusting_game(row, forbidden,
                            "psi-epistemic (state " + std::to_string(state) + ", q=" + to_string(params.q()) + ")");
}

Rational epistemic_stick_closed_form(const Rational& q) { return Rational(3) / (11 - 8 * q); }

Rational epistemic_switch_closed_form(const Rational& q) { return (4 - 4 * q) / (11 - 8 * q); }

std::vector<SweepRow> sweep_epistemic(std::span<const EpistemicParams> params, int state) {
  std::vector<SweepRow> rows;
  rows.reserve(params.size());
  for (const auto& p : params) {
    SweepRow row{p, {}, {}, {}, {}};
    try {
      const auto a = engine::enumerate_joint(psi_epistemic_game(p, state));
      row.stick = a.p_win_stick_given_goat;
      row.switching = a.p_win_switch_given_goat;
      row.advantage = *row.switching - *row.stick;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

EpistemicParams split_q(const Rational& q, const std::array<Rational, 3>& ratio) {
  const Rational total = ratio[0] + ratio[1] + ratio[2];
  if (total <= 0 || ratio[0] < 0 || ratio[1] < 0 || ratio[2] < 0)
    throw std::invalid_argument("split ratios must be non-negative with a positive sum");
  return {q * ratio[0] / total, q * ratio[1] / total, q * ratio[2] / total};
}

}  // namespace montyq::games
