#pragma once

// Independent brute-force enumerator used only by tests. It walks every
// (prize, pick, reveal, target) tuple, including zero-probability ones, and
// evaluates each event predicate directly; it shares no code with
// engine::enumerate_joint beyond reading the input tables.

#include <functional>
#include <optional>

#include "montyq/engine.hpp"
#include "montyq/rational.hpp"

namespace montyq::testing {

struct Rules {
  std::size_t doors;
  std::function<Rational(std::size_t)> prize;
  std::function<Rational(std::size_t, std::size_t)> pick;
  std::function<Rational(std::size_t, std::size_t, std::size_t)> host;
  std::function<Rational(std::size_t, std::size_t, std::size_t)> target;
};

struct BruteForceResult {
  Rational total;
  Rational opens_prize;
  Rational stick_and_goat;
  Rational switch_and_goat;
  std::optional<Rational> stick_given_goat;
  std::optional<Rational> switch_given_goat;
};

inline BruteForceResult brute_force(const Rules& r) {
  BruteForceResult out;
  const std::size_t n = r.doors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational abc = r.host(i, j, k) * r.pick(i, j) * r.prize(i);
        if (k == i) {
          out.total += abc;
          out.opens_prize += abc;
          continue;
        }
        for (std::size_t l = 0; l < n; ++l) {
          const Rational abcd = r.target(j, k, l) * abc;
          out.total += abcd;
          if (i == j) out.stick_and_goat += abcd;
          if (l == i && l != j && l != k) out.switch_and_goat += abcd;
        }
      }
  const Rational goat = out.total - out.opens_prize;
  if (goat != 0) {
    out.stick_given_goat = out.stick_and_goat / goat;
    out.switch_given_goat = out.switch_and_goat / goat;
  }
  return out;
}

inline Rules rules_from(const engine::GameSpec& g) {
  return {g.door_count(),
          [&g](std::size_t i) { return g.prize(i); },
          [&g](std::size_t i, std::size_t j) { return g.contestant(i, j); },
          [&g](std::size_t i, std::size_t j, std::size_t k) { return g.host(i, j, k); },
          [&g](std::size_t j, std::size_t k, std::size_t l) { return g.switching(j, k, l); }};
}

// Game rules written straight from the textbook descriptions, with no use
// of the catalog constructors.
inline Rational uniform_other(std::size_t n, std::size_t j, std::size_t k, std::size_t l) {
  if (j == k || l == j || l == k) return 0;
  return Rational(1) / static_cast<long long>(n - 2);
}

inline Rules classic_rules() {
  return {3, [](std::size_t) { return frac(1, 3); }, [](std::size_t, std::size_t) { return frac(1, 3); },
          [](std::size_t i, std::size_t j, std::size_t k) -> Rational {
            if (i == j && j != k) return frac(1, 2);
            if (i != j && j != k && i != k) return 1;
            return 0;
          },
          [](std::size_t j, std::size_t k, std::size_t l) { return uniform_other(3, j, k, l); }};
}

inline Rules ignorant_rules() {
  return {3, [](std::size_t) { return frac(1, 3); }, [](std::size_t, std::size_t) { return frac(1, 3); },
          [](std::size_t, std::size_t j, std::size_t k) -> Rational { return j == k ? Rational(0) : frac(1, 2); },
          [](std::size_t j, std::size_t k, std::size_t l) { return uniform_other(3, j, k, l); }};
}

// Door 0 is the Born-forbidden outcome; prize row (q, 1/4-q1, 1/4-q2, 1/2-q3).
inline Rules psi_rules(Rational q1, Rational q2, Rational q3) {
  return {4,
          [=](std::size_t i) -> Rational {
            switch (i) {
              case 0: return q1 + q2 + q3;
              case 1: return frac(1, 4) - q1;
              case 2: return frac(1, 4) - q2;
              default: return frac(1, 2) - q3;
            }
          },
          [](std::size_t, std::size_t) { return frac(1, 4); },
          [](std::size_t, std::size_t j, std::size_t k) -> Rational {
            if (j == 0) return k == 0 ? Rational(0) : frac(1, 3);
            return k == 0 ? Rational(1) : Rational(0);
          },
          [](std::size_t j, std::size_t k, std::size_t l) { return uniform_other(4, j, k, l); }};
}

// Contestant fixed on door 0 ("00"); host avoids the pick and the prize.
inline Rules monty_teleport_rules() {
  return {4, [](std::size_t) { return frac(1, 4); },
          [](std::size_t, std::size_t j) -> Rational { return j == 0 ? 1 : 0; },
          [](std::size_t i, std::size_t j, std::size_t k) -> Rational {
            if (j != 0) return 0;
            if (i == 0) return k != 0 ? frac(1, 3) : Rational(0);
            return (k != 0 && k != i) ? frac(1, 2) : Rational(0);
          },
          [](std::size_t j, std::size_t k, std::size_t l) { return uniform_other(4, j, k, l); }};
}

}  // namespace montyq::testing
