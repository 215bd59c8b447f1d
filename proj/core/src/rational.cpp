#include "dualvc/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace dualvc {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 value) {
  const bool negative = value < 0;
  u128 magnitude = negative ? -static_cast<u128>(value) : static_cast<u128>(value);
  const auto hi = static_cast<std::uint64_t>(magnitude >> 64);
  const auto lo = static_cast<std::uint64_t>(magnitude);
  mpz_class out(static_cast<unsigned long>(hi));  // NOLINT(google-runtime-int)
  out <<= 64;
  out += mpz_class(static_cast<unsigned long>(lo));  // NOLINT(google-runtime-int)
  if (negative) out = -out;
  return out;
}

bool fits(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  assign_wide(num, den);
}

Rational::Rational(const mpq_class& value) { assign_big(value); }

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpq_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("malformed rational literal: " + std::string(text));
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
  q.canonicalize();
  return Rational(q);
}

void Rational::assign_big(mpq_class value) {
  value.canonicalize();
  if (fits(value.get_num()) && fits(value.get_den())) {
    num_ = value.get_num().get_si();
    den_ = value.get_den().get_si();
    big_.reset();
    return;
  }
  if (big_) {
    *big_ = std::move(value);
  } else {
    big_ = std::make_unique<mpq_class>(std::move(value));
  }
}

void Rational::assign_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den != 1) {
    const u128 mag = num < 0 ? -static_cast<u128>(num) : static_cast<u128>(num);
    const u128 g = gcd_u128(mag, static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (num >= kMin64 && num <= kMax64 && den <= kMax64) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  assign_big(mpq_class(to_mpz(num), to_mpz(den)));
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

double Rational::to_double() const {
  if (big_) return big_->get_d();
  if (den_ == 1) return static_cast<double>(num_);
  return static_cast<double>(num_) / static_cast<double>(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));  // NOLINT
  return q;
}

std::string Rational::str() const {
  if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t out = 0;
      if (!__builtin_add_overflow(num_, rhs.num_, &out)) {
        num_ = out;
        return *this;
      }
    }
    assign_wide(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t out = 0;
      if (!__builtin_sub_overflow(num_, rhs.num_, &out)) {
        num_ = out;
        return *this;
      }
    }
    assign_wide(static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_,
                static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t out = 0;
      if (!__builtin_mul_overflow(num_, rhs.num_, &out)) {
        num_ = out;
        return *this;
      }
    }
    assign_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
    return *this;
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

Rational Rational::operator-() const {
  if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) return Rational(-num_, den_);
  return Rational(mpq_class(-to_mpq()));
}

bool operator==(const Rational& lhs, const Rational& rhs) {
  if (!lhs.big_ && !rhs.big_) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  // Both sides are canonical, so a small value never equals a big one.
  if (lhs.big_ && rhs.big_) return *lhs.big_ == *rhs.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (!lhs.big_ && !rhs.big_) {
    const i128 a = static_cast<i128>(lhs.num_) * rhs.den_;
    const i128 b = static_cast<i128>(rhs.num_) * lhs.den_;
    return a <=> b;
  }
  const int c = cmp(lhs.to_mpq(), rhs.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace dualvc
