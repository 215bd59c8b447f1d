#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "dualvc/rational.hpp"

namespace dualvc {

/// Rate of step-size change together with the canonical basis used to
/// represent powers of its fourth root.
///
/// Writing beta for the positive real fourth root of `value`, every quantity
/// the heuristics produce lives in Q(beta). The basis {1, beta, ..., beta^(dim-1)}
/// is linearly independent over Q, and `reduction` = beta^dim is an integer:
///   dim 1: value is a perfect fourth power t^4, beta = t, reduction = t
///   dim 2: value is s^2 but not a fourth power, reduction = s
///   dim 4: otherwise, reduction = value
struct Alpha {
  std::int64_t value = 2;
  int basis_dim = 4;
  std::int64_t reduction = 2;

  friend bool operator==(const Alpha&, const Alpha&) = default;
};

/// Throws std::invalid_argument for alpha < 2.
Alpha canonicalize_alpha(std::int64_t alpha);

/// Smallest k >= 0 with alpha^k >= w_max.
int ceil_log(std::int64_t alpha, std::int64_t w_max);

/// Largest quarter-exponent a step size may reach: 4 * (ceil(log_alpha W_max) + 1).
int max_step_exponent(std::int64_t alpha, std::int64_t w_max);

/// An exact element of Q(alpha^(1/4)), stored as coefficients over the
/// canonical basis of its Alpha. Coefficients at or above `basis_dim` are
/// always zero.
class RadicalValue {
 public:
  RadicalValue() = default;
  explicit RadicalValue(const Alpha& alpha) : alpha_(alpha) {}
  RadicalValue(const Alpha& alpha, Rational constant);

  /// coeff * beta^power, reduced into the canonical basis.
  static RadicalValue monomial(const Alpha& alpha, Rational coeff, int power);

  /// Builds a value from coefficients of beta^0..beta^3 (as written in dual
  /// dumps); entries beyond the basis are folded in with the reduction rule.
  static RadicalValue from_quarter_coeffs(const Alpha& alpha, std::span<const Rational, 4> coeffs);

  [[nodiscard]] const Alpha& alpha() const { return alpha_; }
  [[nodiscard]] const Rational& coeff(int k) const { return coeffs_.at(k); }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_rational() const;
  [[nodiscard]] int sign() const;
  [[nodiscard]] double to_double() const;
  /// "c0 c1 c2 c3" with every coefficient formatted as p/q.
  [[nodiscard]] std::string coeff_str() const;

  RadicalValue& operator+=(const RadicalValue& rhs);
  RadicalValue& operator-=(const RadicalValue& rhs);
  RadicalValue& operator*=(const RadicalValue& rhs);
  RadicalValue& operator*=(const Rational& k);

  friend RadicalValue operator+(RadicalValue a, const RadicalValue& b) { return a += b; }
  friend RadicalValue operator-(RadicalValue a, const RadicalValue& b) { return a -= b; }
  friend RadicalValue operator*(RadicalValue a, const RadicalValue& b) { return a *= b; }
  friend RadicalValue operator*(RadicalValue a, const Rational& k) { return a *= k; }
  friend RadicalValue operator*(const Rational& k, RadicalValue a) { return a *= k; }
  RadicalValue operator-() const;

  friend bool operator==(const RadicalValue& a, const RadicalValue& b);

 private:
  void require_same_alpha(const RadicalValue& rhs) const;

  Alpha alpha_;
  std::array<Rational, 4> coeffs_{};
};

inline RadicalValue radical_add(const RadicalValue& a, const RadicalValue& b) { return a + b; }
inline RadicalValue radical_sub(const RadicalValue& a, const RadicalValue& b) { return a - b; }
inline RadicalValue radical_scale(const RadicalValue& a, const Rational& k) { return a * k; }
inline int radical_sign(const RadicalValue& a) { return a.sign(); }

/// alpha^(q/4). Throws std::out_of_range unless 0 <= q <= q_max.
RadicalValue step_value(int q, const Alpha& alpha, int q_max);

std::ostream& operator<<(std::ostream& os, const RadicalValue& value);

}  // namespace dualvc
