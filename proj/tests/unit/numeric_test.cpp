#include <gmpxx.h>
#include <gtest/gtest.h>
#include <mpfr.h>

#include <random>

#include "dualvc/field.hpp"
#include "dualvc/radical.hpp"
#include "dualvc/rational.hpp"

using namespace dualvc;

namespace {

// floor(8^(1/4) * 10^10), i.e. 2^(3/4) to ten decimals, by integer bisection
// on r^4 <= 8 * 10^40.
mpz_class fourth_root_digits(unsigned long radicand, unsigned digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 4 * digits);
  const mpz_class target = scale * radicand;
  mpz_class lo = 0;
  mpz_class hi;
  mpz_ui_pow_ui(hi.get_mpz_t(), 10, digits + 1);
  while (hi - lo > 1) {
    const mpz_class mid = (lo + hi) / 2;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), mid.get_mpz_t(), 4);
    if (p <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

RadicalValue value(const Alpha& a, std::initializer_list<std::int64_t> c) {
  std::array<Rational, 4> coeffs{};
  int k = 0;
  for (const auto x : c) coeffs[k++] = Rational(x);
  return RadicalValue::from_quarter_coeffs(a, coeffs);
}

}  // namespace

TEST(Rational, ArithmeticAndNormalForm) {
  EXPECT_EQ(Rational(6, 4), Rational(3, 2));
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1) / Rational(4), Rational(1, 4));
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_EQ(Rational::parse("-7/21"), Rational(-1, 3));
  EXPECT_EQ(Rational::parse("5"), Rational(5));
  EXPECT_THROW(Rational::parse("1/x"), std::invalid_argument);
}

TEST(Rational, PromotesOnOverflowAndDemotesBack) {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  Rational x = big * big;
  EXPECT_FALSE(x.is_small());
  EXPECT_EQ(x.to_mpq(), mpq_class(mpz_class("85070591730234615847396907784232501249")));
  x /= big;
  EXPECT_TRUE(x.is_small());
  EXPECT_EQ(x, big);
  Rational sum = big;
  sum += Rational(1);
  sum -= Rational(1);
  EXPECT_EQ(sum, big);
}

TEST(Alpha, CanonicalBasis) {
  EXPECT_EQ(canonicalize_alpha(2).basis_dim, 4);
  EXPECT_EQ(canonicalize_alpha(16).basis_dim, 1);
  EXPECT_EQ(canonicalize_alpha(16).reduction, 2);
  EXPECT_EQ(canonicalize_alpha(9).basis_dim, 2);
  EXPECT_EQ(canonicalize_alpha(9).reduction, 3);
  EXPECT_EQ(canonicalize_alpha(81).basis_dim, 1);
  EXPECT_EQ(canonicalize_alpha(3).basis_dim, 4);
  EXPECT_THROW(canonicalize_alpha(1), std::invalid_argument);
}

TEST(Alpha, StepExponentBound) {
  EXPECT_EQ(ceil_log(2, 1024), 10);
  EXPECT_EQ(ceil_log(2, 1025), 11);
  EXPECT_EQ(ceil_log(3, 1), 0);
  EXPECT_EQ(max_step_exponent(2, 1024), 44);
}

TEST(RadicalValue, SpecArithmeticExamples) {
  const Alpha a = canonicalize_alpha(2);
  EXPECT_EQ(value(a, {1, 1}) + value(a, {2, 0, 0, 3}), value(a, {3, 1, 0, 3}));
  EXPECT_EQ(RadicalValue::monomial(a, Rational(1), 2) * RadicalValue::monomial(a, Rational(1), 3),
            value(a, {0, 2}));
  const Alpha b = canonicalize_alpha(16);
  const RadicalValue three = value(b, {3});
  EXPECT_TRUE(three.is_rational());
  EXPECT_EQ(three.coeff_str(), "3/1 0/1 0/1 0/1");
}

TEST(RadicalValue, MixedAlphaRejected) {
  EXPECT_THROW(value(canonicalize_alpha(2), {1}) + value(canonicalize_alpha(3), {1}), std::invalid_argument);
}

TEST(RadicalValue, SignAgainstBisectionOracle) {
  const Alpha a = canonicalize_alpha(2);
  // 2^(3/4) = 1.6817928305...
  EXPECT_EQ(fourth_root_digits(8, 10), mpz_class("16817928305"));
  EXPECT_EQ(value(a, {-2, 0, 0, 1}).sign(), -1);
  EXPECT_EQ(value(a, {-1, 1}).sign(), 1);
  EXPECT_EQ(value(a, {}).sign(), 0);
  // beta^3 - 16817928305/10^10 > 0 and beta^3 - 16817928306/10^10 < 0.
  RadicalValue below = value(a, {0, 0, 0, 1});
  below -= RadicalValue(a, Rational(16817928305, 10000000000));
  EXPECT_EQ(below.sign(), 1);
  RadicalValue above = value(a, {0, 0, 0, 1});
  above -= RadicalValue(a, Rational(16817928306, 10000000000));
  EXPECT_EQ(above.sign(), -1);
}

TEST(RadicalValue, SignOfNearCancellation) {
  // sqrt(2) against rationals 10^-30 apart; needs refinement well past
  // double precision.
  const Alpha a = canonicalize_alpha(2);
  mpz_class ten30;
  mpz_ui_pow_ui(ten30.get_mpz_t(), 10, 30);
  mpz_class s;
  const mpz_class radicand = 2 * ten30 * ten30;
  mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
  const RadicalValue sqrt2 = value(a, {0, 0, 1});
  EXPECT_EQ((sqrt2 - RadicalValue(a, Rational(mpq_class(s, ten30)))).sign(), 1);
  EXPECT_EQ((sqrt2 - RadicalValue(a, Rational(mpq_class(s + 1, ten30)))).sign(), -1);
}

TEST(StepValue, SpecExamplesAndIdentity) {
  const Alpha a = canonicalize_alpha(2);
  EXPECT_EQ(step_value(0, a, 44), value(a, {1}));
  EXPECT_EQ(step_value(4, a, 44), value(a, {2}));
  EXPECT_EQ(step_value(5, a, 44), value(a, {0, 2}));
  EXPECT_THROW(step_value(45, a, 44), std::out_of_range);
  EXPECT_THROW(step_value(-1, a, 44), std::out_of_range);
  for (const std::int64_t alpha : {2, 3, 9, 16}) {
    const Alpha al = canonicalize_alpha(alpha);
    const int q_max = max_step_exponent(alpha, 1 << 20);
    for (int q = 0; q + 4 <= q_max; ++q) {
      EXPECT_EQ(step_value(q + 4, al, q_max), step_value(q, al, q_max) * Rational(alpha)) << alpha << ' ' << q;
    }
  }
}

TEST(FloatBackend, AgreesWithExactExamples) {
  const Alpha a = canonicalize_alpha(2);
  for (const auto& v : {value(a, {-2, 0, 0, 1}), value(a, {-1, 1}), value(a, {})}) {
    EXPECT_EQ(float_backend::sign(v), v.sign());
  }
  EXPECT_EQ(float_backend::sign(1e-7), 0);
  EXPECT_EQ(float_backend::sign(-1e-3), -1);
  EXPECT_DOUBLE_EQ(float_backend::step_value(5, a, 44), 2.0 * std::pow(2.0, 0.25));
  // Within tau of zero but nonzero: escalated to the exact sign.
  RadicalValue tiny = value(a, {0, 1});
  tiny -= RadicalValue(a, Rational(11892071150027211, 10000000000000000));
  EXPECT_EQ(float_backend::sign(tiny), tiny.sign());
  EXPECT_NE(tiny.sign(), 0);
}

// Random expression trees compared with 256-bit MPFR interval evaluation.
namespace {

struct Interval {
  mpfr_t lo, hi;
  Interval() {
    mpfr_init2(lo, 256);
    mpfr_init2(hi, 256);
  }
  ~Interval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  Interval(const Interval&) = delete;
  Interval& operator=(const Interval&) = delete;
};

void beta_power(Interval& out, std::int64_t alpha, int k) {
  mpfr_set_si(out.lo, alpha, MPFR_RNDD);
  mpfr_set_si(out.hi, alpha, MPFR_RNDU);
  mpfr_rootn_ui(out.lo, out.lo, 4, MPFR_RNDD);
  mpfr_rootn_ui(out.hi, out.hi, 4, MPFR_RNDU);
  mpfr_pow_ui(out.lo, out.lo, static_cast<unsigned long>(k), MPFR_RNDD);
  mpfr_pow_ui(out.hi, out.hi, static_cast<unsigned long>(k), MPFR_RNDU);
}

// Encloses sum c_k beta^k.
void enclose(Interval& out, const RadicalValue& v, std::int64_t alpha) {
  mpfr_set_zero(out.lo, 1);
  mpfr_set_zero(out.hi, 1);
  for (int k = 0; k < 4; ++k) {
    if (v.coeff(k).is_zero()) continue;
    Interval p;
    beta_power(p, alpha, k);
    mpfr_t clo, chi;
    mpfr_init2(clo, 256);
    mpfr_init2(chi, 256);
    const mpq_class c = v.coeff(k).to_mpq();
    mpfr_set_q(clo, c.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(chi, c.get_mpq_t(), MPFR_RNDU);
    // Both factors positive powers; only the coefficient carries a sign.
    if (sgn(c) >= 0) {
      mpfr_mul(clo, clo, p.lo, MPFR_RNDD);
      mpfr_mul(chi, chi, p.hi, MPFR_RNDU);
    } else {
      mpfr_mul(clo, clo, p.hi, MPFR_RNDD);
      mpfr_mul(chi, chi, p.lo, MPFR_RNDU);
    }
    mpfr_add(out.lo, out.lo, clo, MPFR_RNDD);
    mpfr_add(out.hi, out.hi, chi, MPFR_RNDU);
    mpfr_clear(clo);
    mpfr_clear(chi);
  }
}

RadicalValue random_tree(std::mt19937_64& gen, const Alpha& a, int depth) {
  std::uniform_int_distribution<std::int64_t> coeff(-(std::int64_t{1} << 30), std::int64_t{1} << 30);
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth == 0 || pick(gen) < 3) {
    return RadicalValue::monomial(a, Rational(coeff(gen), std::max<std::int64_t>(1, std::abs(coeff(gen)) >> 20)),
                                  static_cast<int>(gen() % 4));
  }
  const int op = pick(gen);
  RadicalValue left = random_tree(gen, a, depth - 1);
  if (op < 4) return left + random_tree(gen, a, depth - 1);
  if (op < 7) return left - random_tree(gen, a, depth - 1);
  if (op < 8) return left - left;
  if (op < 9) return left * random_tree(gen, a, depth - 1);
  return left * Rational(coeff(gen), 7);
}

}  // namespace

TEST(RadicalValue, SignMatchesIntervalEvaluationOnRandomTrees) {
  std::mt19937_64 gen(20240611);
  int decided = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::int64_t alpha = std::array<std::int64_t, 4>{2, 3, 9, 16}[i % 4];
    const Alpha a = canonicalize_alpha(alpha);
    const RadicalValue v = random_tree(gen, a, static_cast<int>(gen() % 9));
    Interval iv;
    enclose(iv, v, alpha);
    const int s = v.sign();
    if (mpfr_sgn(iv.lo) > 0) {
      ASSERT_EQ(s, 1) << v;
      ++decided;
    } else if (mpfr_sgn(iv.hi) < 0) {
      ASSERT_EQ(s, -1) << v;
      ++decided;
    } else {
      // Interval straddles zero: only an exact zero is consistent at 256 bits
      // for values of this size.
      ASSERT_EQ(s, 0) << v;
    }
    ASSERT_EQ((v - v).sign(), 0);
  }
  EXPECT_GT(decided, 50000);
}
