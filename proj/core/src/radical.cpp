#include "dualvc/radical.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dualvc {
namespace {

using i128 = __int128;

// Largest r with r^k <= n, for n >= 0 and k in {2, 4}.
std::int64_t integer_root(std::int64_t n, int k) {
  auto pow_k = [k](i128 r) {
    i128 out = 1;
    for (int i = 0; i < k; ++i) out *= r;
    return out;
  };
  auto r = static_cast<std::int64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  while (r > 0 && pow_k(r) > n) --r;
  while (pow_k(r + 1) <= n) ++r;
  return r;
}

// Interval bounds on beta = value^(1/4) with `bits` fractional bits.
void beta_bounds(const Alpha& alpha, unsigned long bits, mpq_class& lo, mpq_class& hi) {  // NOLINT
  mpz_class scaled;
  mpz_class r;
  if (alpha.basis_dim == 4) {
    scaled = mpz_class(static_cast<long>(alpha.value)) << (4 * bits);  // NOLINT
    mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), 4);
  } else {
    scaled = mpz_class(static_cast<long>(alpha.reduction)) << (2 * bits);  // NOLINT
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
  }
  mpz_class den = mpz_class(1) << bits;
  lo = mpq_class(r, den);
  hi = mpq_class(r + 1, den);
  lo.canonicalize();
  hi.canonicalize();
}

}  // namespace

Alpha canonicalize_alpha(std::int64_t alpha) {
  if (alpha < 2) throw std::invalid_argument("alpha must be an integer >= 2");
  const std::int64_t t = integer_root(alpha, 4);
  if (static_cast<i128>(t) * t * t * t == alpha) return Alpha{alpha, 1, t};
  const std::int64_t s = integer_root(alpha, 2);
  if (static_cast<i128>(s) * s == alpha) return Alpha{alpha, 2, s};
  return Alpha{alpha, 4, alpha};
}

int ceil_log(std::int64_t alpha, std::int64_t w_max) {
  if (alpha < 2) throw std::invalid_argument("alpha must be an integer >= 2");
  int k = 0;
  i128 power = 1;
  while (power < w_max) {
    power *= alpha;
    ++k;
  }
  return k;
}

int max_step_exponent(std::int64_t alpha, std::int64_t w_max) { return 4 * (ceil_log(alpha, w_max) + 1); }

RadicalValue::RadicalValue(const Alpha& alpha, Rational constant) : alpha_(alpha) {
  coeffs_[0] = std::move(constant);
}

RadicalValue RadicalValue::monomial(const Alpha& alpha, Rational coeff, int power) {
  if (power < 0) throw std::out_of_range("negative radical exponent");
  RadicalValue out(alpha);
  const int dim = alpha.basis_dim;
  for (int i = 0; i < power / dim; ++i) coeff *= Rational(alpha.reduction);
  out.coeffs_[power % dim] = std::move(coeff);
  return out;
}

RadicalValue RadicalValue::from_quarter_coeffs(const Alpha& alpha, std::span<const Rational, 4> coeffs) {
  RadicalValue out(alpha);
  for (int k = 0; k < 4; ++k) {
    if (coeffs[k].is_zero()) continue;
    out += monomial(alpha, coeffs[k], k);
  }
  return out;
}

bool RadicalValue::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool RadicalValue::is_rational() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) return false;
  }
  return true;
}

int RadicalValue::sign() const {
  if (is_rational()) return coeffs_[0].sign();

  // Fast filter: a double evaluation whose error is far below the margin.
  const double beta = std::pow(static_cast<double>(alpha_.value), 0.25);
  double sum = 0.0;
  double magnitude = 0.0;
  double power = 1.0;
  bool finite = true;
  for (int k = 0; k < alpha_.basis_dim; ++k) {
    const double term = coeffs_[k].to_double() * power;
    finite = finite && std::isfinite(term);
    sum += term;
    magnitude += std::fabs(term);
    power *= beta;
  }
  if (finite && std::fabs(sum) > magnitude * 1e-12) return sum > 0 ? 1 : -1;

  // Exact interval refinement. Canonical nonzero vectors represent nonzero
  // reals, so the loop terminates.
  std::array<mpq_class, 4> c;
  for (int k = 0; k < alpha_.basis_dim; ++k) c[k] = coeffs_[k].to_mpq();
  for (unsigned long bits = 64;; bits *= 2) {  // NOLINT(google-runtime-int)
    mpq_class beta_lo;
    mpq_class beta_hi;
    beta_bounds(alpha_, bits, beta_lo, beta_hi);
    mpq_class lo = c[0];
    mpq_class hi = c[0];
    mpq_class pow_lo = 1;
    mpq_class pow_hi = 1;
    for (int k = 1; k < alpha_.basis_dim; ++k) {
      pow_lo *= beta_lo;
      pow_hi *= beta_hi;
      const mpq_class& ck = c[k];
      if (sgn(ck) >= 0) {
        lo += ck * pow_lo;
        hi += ck * pow_hi;
      } else {
        lo += ck * pow_hi;
        hi += ck * pow_lo;
      }
    }
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
  }
}

double RadicalValue::to_double() const {
  const double beta = std::pow(static_cast<double>(alpha_.value), 0.25);
  double sum = 0.0;
  double power = 1.0;
  for (int k = 0; k < alpha_.basis_dim; ++k) {
    sum += coeffs_[k].to_double() * power;
    power *= beta;
  }
  return sum;
}

std::string RadicalValue::coeff_str() const {
  // Dumps use the beta^0..beta^3 layout regardless of basis size.
  std::string out;
  for (int k = 0; k < 4; ++k) {
    if (k > 0) out += ' ';
    out += k < alpha_.basis_dim ? coeffs_[k].str() : std::string("0/1");
  }
  return out;
}

void RadicalValue::require_same_alpha(const RadicalValue& rhs) const {
  if (alpha_ != rhs.alpha_) throw std::invalid_argument("radical operands use different alpha");
}

RadicalValue& RadicalValue::operator+=(const RadicalValue& rhs) {
  require_same_alpha(rhs);
  for (int k = 0; k < alpha_.basis_dim; ++k) {
    if (!rhs.coeffs_[k].is_zero()) coeffs_[k] += rhs.coeffs_[k];
  }
  return *this;
}

RadicalValue& RadicalValue::operator-=(const RadicalValue& rhs) {
  require_same_alpha(rhs);
  for (int k = 0; k < alpha_.basis_dim; ++k) {
    if (!rhs.coeffs_[k].is_zero()) coeffs_[k] -= rhs.coeffs_[k];
  }
  return *this;
}

RadicalValue& RadicalValue::operator*=(const RadicalValue& rhs) {
  require_same_alpha(rhs);
  const int dim = alpha_.basis_dim;
  std::array<Rational, 4> out{};
  for (int i = 0; i < dim; ++i) {
    const Rational& a = coeffs_[i];
    if (a.is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      const Rational& b = rhs.coeffs_[j];
      if (b.is_zero()) continue;
      Rational term = a * b;
      int power = i + j;
      if (power >= dim) {
        term *= Rational(alpha_.reduction);
        power -= dim;
      }
      out[power] += term;
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

RadicalValue& RadicalValue::operator*=(const Rational& k) {
  for (int i = 0; i < alpha_.basis_dim; ++i) coeffs_[i] *= k;
  return *this;
}

RadicalValue RadicalValue::operator-() const {
  RadicalValue out(alpha_);
  for (int k = 0; k < alpha_.basis_dim; ++k) out.coeffs_[k] = -coeffs_[k];
  return out;
}

bool operator==(const RadicalValue& a, const RadicalValue& b) { return a.alpha_ == b.alpha_ && a.coeffs_ == b.coeffs_; }

RadicalValue step_value(int q, const Alpha& alpha, int q_max) {
  if (q < 0 || q > q_max) throw std::out_of_range("step exponent outside [0, q_max]");
  return RadicalValue::monomial(alpha, Rational(1), q);
}

std::ostream& operator<<(std::ostream& os, const RadicalValue& value) { return os << value.coeff_str(); }

}  // namespace dualvc
