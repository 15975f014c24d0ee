#pragma once

// Exact real amplitudes over Q(sqrt 2), the PBR preparation states, the
// entangled measurement basis, and their Born-rule table.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "montyq/rational.hpp"

namespace montyq::qcore {

/// A real number (a + b*sqrt(2)) / 2^log2denom held in reduced form.
///
/// The constructor cancels common factors of two until either a or b is odd
/// or the exponent reaches zero, so two amplitudes are equal exactly when
/// their fields are equal.
class ExactAmplitude {
 public:
  ExactAmplitude() = default;
  ExactAmplitude(BigInt a, BigInt b, std::uint32_t log2denom);

  static ExactAmplitude zero() { return {}; }
  static ExactAmplitude one() { return {1, 0, 0}; }
  static ExactAmplitude inv_sqrt2() { return {0, 1, 1}; }  // sqrt(2)/2
  static ExactAmplitude half() { return {1, 0, 1}; }

  const BigInt& rational_part() const { return a_; }
  const BigInt& sqrt2_part() const { return b_; }
  std::uint32_t log2denom() const { return k_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  // Throws std::domain_error when the sqrt(2) component is non-zero.
  Rational to_rational() const;
  double to_double() const;
  std::string to_string() const;

  ExactAmplitude squared_magnitude() const { return *this * *this; }

  friend ExactAmplitude operator+(const ExactAmplitude& x, const ExactAmplitude& y);
  friend ExactAmplitude operator-(const ExactAmplitude& x, const ExactAmplitude& y);
  friend ExactAmplitude operator*(const ExactAmplitude& x, const ExactAmplitude& y);
  ExactAmplitude operator-() const { return {-a_, -b_, k_}; }

  friend bool operator==(const ExactAmplitude&, const ExactAmplitude&) = default;

 private:
  BigInt a_ = 0;
  BigInt b_ = 0;
  std::uint32_t k_ = 0;
};

/// A normalized state vector with exact amplitudes. Construction rejects
/// vectors whose squared norm is not exactly one.
class Ket {
 public:
  explicit Ket(std::vector<ExactAmplitude> amplitudes);

  std::size_t dim() const { return amps_.size(); }
  const ExactAmplitude& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const ExactAmplitude> amplitudes() const { return amps_; }

  friend bool operator==(const Ket&, const Ket&) = default;

 private:
  std::vector<ExactAmplitude> amps_;
};

Ket ket0();
Ket ket1();
Ket ket_plus();
Ket ket_minus();

Ket tensor(const Ket& a, const Ket& b);

// Real inner product; throws std::invalid_argument on dimension mismatch.
ExactAmplitude inner(const Ket& a, const Ket& b);

// |<outcome|state>|^2 as an exact rational. Throws std::invalid_argument on
// dimension mismatch and std::domain_error if the overlap squared is irrational.
Rational born_probability(const Ket& outcome, const Ket& state);

// |Psi_1..4> = |00>, |0+>, |+0>, |++>, in that order.
std::array<Ket, 4> pbr_states();
// |Phi_1..4>, the entangled basis whose i-th outcome never occurs for |Psi_i>.
std::array<Ket, 4> pbr_basis();

/// Born probabilities with rows indexed by preparation state and columns by
/// measurement outcome, both zero-based in the order of pbr_states()/pbr_basis().
struct ProbabilityTable {
  std::array<std::array<Rational, 4>, 4> entries;

  const Rational& at(std::size_t state, std::size_t outcome) const {
    return entries.at(state).at(outcome);
  }
  const std::array<Rational, 4>& row(std::size_t state) const { return entries.at(state); }
};

ProbabilityTable born_matrix();

// True iff born_probability(basis[i], states[i]) == 0 for every i.
// Throws std::invalid_argument if the sequences differ in length.
bool is_antidistinguishable(std::span<const Ket> states, std::span<const Ket> basis);

}  // namespace montyq::qcore
