#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string_view>

#include "dualvc/radical.hpp"

namespace dualvc {

namespace float_backend {

/// Absolute tolerance for sign decisions on binary floating point.
inline constexpr double kTau = 0x1p-20;

/// Sign with |x| <= tau resolved as 0.
inline int sign(double x, double tau = kTau) {
  if (std::fabs(x) <= tau) return 0;
  return x > 0 ? 1 : -1;
}

double value(const RadicalValue& x);

/// Evaluates in double precision; results within tau of zero are escalated
/// to the exact sign of `x`.
int sign(const RadicalValue& x, double tau = kTau);

double step_value(int q, const Alpha& alpha, int q_max);

}  // namespace float_backend

/// Exact backend: LP values are elements of Q(alpha^(1/4)).
struct ExactField {
  using Value = RadicalValue;
  static constexpr std::string_view kName = "exact";

  Alpha alpha;

  [[nodiscard]] Value zero() const { return Value(alpha); }
  [[nodiscard]] Value from_rational(const Rational& r) const { return Value(alpha, r); }
  [[nodiscard]] Value step(int q, int q_max) const { return step_value(q, alpha, q_max); }
  [[nodiscard]] static Value scale(const Value& x, const Rational& k) { return x * k; }
  [[nodiscard]] static int sign(const Value& x) { return x.sign(); }
  [[nodiscard]] static double approx(const Value& x) { return x.to_double(); }
};

/// Fast backend over double with the documented tolerance; there is no exact
/// shadow in the evaluation loop, so near-zero decisions resolve as 0.
struct FloatField {
  using Value = double;
  static constexpr std::string_view kName = "float";

  Alpha alpha;
  double tau = float_backend::kTau;

  [[nodiscard]] Value zero() const { return 0.0; }
  [[nodiscard]] Value from_rational(const Rational& r) const { return r.to_double(); }
  [[nodiscard]] Value step(int q, int q_max) const { return float_backend::step_value(q, alpha, q_max); }
  [[nodiscard]] static Value scale(Value x, const Rational& k) { return x * k.to_double(); }
  [[nodiscard]] int sign(Value x) const { return float_backend::sign(x, tau); }
  [[nodiscard]] static double approx(Value x) { return x; }
};

template <class F>
concept LpField = requires(const F f, const typename F::Value v, const Rational r) {
  { f.zero() } -> std::same_as<typename F::Value>;
  { f.from_rational(r) } -> std::same_as<typename F::Value>;
  { f.step(0, 0) } -> std::same_as<typename F::Value>;
  { f.sign(v) } -> std::same_as<int>;
  { F::approx(v) } -> std::same_as<double>;
  { v + v } -> std::convertible_to<typename F::Value>;
  { v - v } -> std::convertible_to<typename F::Value>;
  { f.scale(v, r) } -> std::same_as<typename F::Value>;
  f.alpha;
};

}  // namespace dualvc
