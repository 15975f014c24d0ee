#include "montyq/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace montyq::qcore {

namespace {

BigInt pow2(std::uint32_t e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

std::vector<ExactAmplitude> scaled_sum(const ExactAmplitude& s, std::span<const ExactAmplitude> x,
                                       std::span<const ExactAmplitude> y) {
  std::vector<ExactAmplitude> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * (x[i] + y[i]);
  return out;
}

}  // namespace

ExactAmplitude::ExactAmplitude(BigInt a, BigInt b, std::uint32_t log2denom)
    : a_(std::move(a)), b_(std::move(b)), k_(log2denom) {
  if (a_ == 0 && b_ == 0) {
    k_ = 0;
    return;
  }
  while (k_ > 0 && a_ % 2 == 0 && b_ % 2 == 0) {
    a_ /= 2;
    b_ /= 2;
    --k_;
  }
}

Rational ExactAmplitude::to_rational() const {
  if (b_ != 0) throw std::domain_error("amplitude " + to_string() + " is irrational");
  return Rational(a_, pow2(k_));
}

double ExactAmplitude::to_double() const {
  return (a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(2.0)) / std::ldexp(1.0, static_cast<int>(k_));
}

std::string ExactAmplitude::to_string() const {
  std::string s = "(" + a_.str() + " + " + b_.str() + "*sqrt2)";
  if (k_ > 0) s += "/2^" + std::to_string(k_);
  return s;
}

ExactAmplitude operator+(const ExactAmplitude& x, const ExactAmplitude& y) {
  const std::uint32_t k = std::max(x.k_, y.k_);
  const BigInt sx = pow2(k - x.k_);
  const BigInt sy = pow2(k - y.k_);
  return {x.a_ * sx + y.a_ * sy, x.b_ * sx + y.b_ * sy, k};
}

ExactAmplitude operator-(const ExactAmplitude& x, const ExactAmplitude& y) { return x + (-y); }

ExactAmplitude operator*(const ExactAmplitude& x, const ExactAmplitude& y) {
  // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r, r = sqrt(2)
  return {x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.k_ + y.k_};
}

Ket::Ket(std::vector<ExactAmplitude> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw std::invalid_argument("ket must have positive dimension");
  ExactAmplitude norm;
  for (const auto& a : amps_) norm = norm + a.squared_magnitude();
  if (norm != ExactAmplitude::one())
    throw std::invalid_argument("ket is not normalized: squared norm " + norm.to_string());
}

Ket ket0() { return Ket({ExactAmplitude::one(), ExactAmplitude::zero()}); }
Ket ket1() { return Ket({ExactAmplitude::zero(), ExactAmplitude::one()}); }
Ket ket_plus() { return Ket({ExactAmplitude::inv_sqrt2(), ExactAmplitude::inv_sqrt2()}); }
Ket ket_minus() { return Ket({ExactAmplitude::inv_sqrt2(), -ExactAmplitude::inv_sqrt2()}); }

Ket tensor(const Ket& a, const Ket& b) {
  std::vector<ExactAmplitude> out;
  out.reserve(a.dim() * b.dim());
  for (const auto& x : a.amplitudes())
    for (const auto& y : b.amplitudes()) out.push_back(x * y);
  return Ket(std::move(out));
}

ExactAmplitude inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("inner product of kets with dimensions " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()));
  ExactAmplitude sum;
  for (std::size_t i = 0; i < a.dim(); ++i) sum = sum + a[i] * b[i];
  return sum;
}

Rational born_probability(const Ket& outcome, const Ket& state) {
  return inner(outcome, state).squared_magnitude().to_rational();
}

std::array<Ket, 4> pbr_states() {
  return {tensor(ket0(), ket0()), tensor(ket0(), ket_plus()), tensor(ket_plus(), ket0()),
          tensor(ket_plus(), ket_plus())};
}

std::array<Ket, 4> pbr_basis() {
  const auto s = ExactAmplitude::inv_sqrt2();
  auto pair = [&](const Ket& a, const Ket& b, const Ket& c, const Ket& d) {
    return Ket(scaled_sum(s, tensor(a, b).amplitudes(), tensor(c, d).amplitudes()));
  };
  return {pair(ket0(), ket1(), ket1(), ket0()), pair(ket0(), ket_minus(), ket1(), ket_plus()),
          pair(ket_plus(), ket1(), ket_minus(), ket0()),
          pair(ket_plus(), ket_minus(), ket_minus(), ket_plus())};
}

ProbabilityTable born_matrix() {
  const auto states = pbr_states();
  const auto basis = pbr_basis();
  ProbabilityTable t;
  for (std::size_t h = 0; h < 4; ++h)
    for (std::size_t i = 0; i < 4; ++i) t.entries[h][i] = born_probability(basis[i], states[h]);
  return t;
}

bool is_antidistinguishable(std::span<const Ket> states, std::span<const Ket> basis) {
  if (states.size() != basis.size())
    throw std::invalid_argument("antidistinguishability needs equal-length state and basis lists");
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!inner(basis[i], states[i]).is_zero()) return false;
  return true;
}

}  // namespace montyq::qcore
