#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dualvc {

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in 64 bits are stored
/// inline and handled with 128-bit intermediate arithmetic; anything larger
/// is promoted to a heap-allocated GMP rational and demoted again as soon as
/// it fits. The evaluation loop of the search heuristics works almost
/// entirely on small integers, so the common path never touches GMP.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  /// Parses "p", "-p" or "p/q" (q != 0); the result is reduced.
  static Rational parse(std::string_view text);

  [[nodiscard]] int sign() const;
  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] mpq_class to_mpq() const;
  /// Always "p/q" with q >= 1, e.g. "3/1", "-7/2".
  [[nodiscard]] std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  void assign_big(mpq_class value);
  void assign_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace dualvc
