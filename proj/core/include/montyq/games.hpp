#pragma once

// Constructors for the classic, ignorant, psi-ontic and psi-epistemic games.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "montyq/engine.hpp"
#include "montyq/rational.hpp"

namespace montyq::games {

/// Deformation of the Born prize row: the forbidden door gets q = q1+q2+q3,
/// taken from the two 1/4 doors (q1, q2 in door order) and the 1/2 door (q3).
struct EpistemicParams {
  Rational q1 = 0;
  Rational q2 = 0;
  Rational q3 = 0;

  Rational q() const { return q1 + q2 + q3; }

  // Bound violations: 0 <= q1,q2 <= 1/4 and 0 <= q3 <= 1/2.
  std::vector<std::string> violations() const;

  friend bool operator==(const EpistemicParams&, const EpistemicParams&) = default;
};

// The value of q at which sticking and switching tie.
inline Rational crossover_q() { return frac(1, 4); }

engine::GameSpec classic_game();
engine::GameSpec ignorant_game();

// `state` selects the preparation |Psi_state>, 1..4; the host treats the
// outcome door with zero Born weight as a guaranteed goat.
// Throws std::out_of_range for a bad state.
engine::GameSpec psi_ontic_game(int state = 1);

// Throws std::out_of_range when params violate their bounds or state is bad.
engine::GameSpec psi_epistemic_game(const EpistemicParams& params, int state = 1);

// Stick/switch conditionals as closed forms in q.
Rational epistemic_stick_closed_form(const Rational& q);   // 3/(11-8q)
Rational epistemic_switch_closed_form(const Rational& q);  // (4-4q)/(11-8q)

struct SweepRow {
  EpistemicParams params;
  std::optional<Rational> stick;      // win | goat
  std::optional<Rational> switching;  // win | goat
  std::optional<Rational> advantage;  // switching - stick
  std::string error;                  // set when params are invalid

  Rational q() const { return params.q(); }
  bool ok() const { return error.empty(); }
};

// Runs the exact enumerator for each parameter triple; invalid triples
// produce a row carrying the error instead of values.
std::vector<SweepRow> sweep_epistemic(std::span<const EpistemicParams> params, int state = 1);

// Splits q across (q1,q2,q3) in proportion to `ratio` (equal split = {1,1,1}).
EpistemicParams split_q(const Rational& q, const std::array<Rational, 3>& ratio);

}  // namespace montyq::games
