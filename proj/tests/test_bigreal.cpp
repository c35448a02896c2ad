#include <doctest.h>

#include <cmath>
#include <random>

#include "pll/bigreal.hpp"

using namespace pll;

namespace {

double as_d(const BigReal& x) { return x.to_double_approx(); }

BigReal random_dyadic(std::mt19937_64& rng, int max_mant_bits = 60, int max_exp = 40) {
    std::uniform_int_distribution<long> mant(1, (1L << max_mant_bits) - 1);
    std::uniform_int_distribution<int> ex(-max_exp, max_exp);
    std::uniform_int_distribution<int> sg(0, 1);
    BigReal m(mant(rng));
    if (sg(rng)) m = m.neg();
    return m.mul_pow2(ex(rng));
}

} // namespace

TEST_CASE("construction and canonical form") {
    BigReal z;
    CHECK(z.is_zero());
    BigReal a(12);  // 12 = 3 * 2^2
    CHECK(a.mantissa() == 3);
    CHECK(a.exponent() == 2);
    CHECK(a.sign() == 1);
    BigReal b(-1);
    CHECK(b.sign() == -1);
    CHECK(BigReal::pow2(10) == BigReal(1024));
    CHECK(BigReal::scaled(6, -1) == BigReal(3));
}

TEST_CASE("exact comparison across wild exponent gaps") {
    BigReal tiny = BigReal::pow2(mpz_class("-100000000000000000000"));
    BigReal huge = BigReal::pow2(mpz_class("100000000000000000000"));
    CHECK(tiny > BigReal());
    CHECK(tiny < BigReal(1));
    CHECK(huge > BigReal(1));
    CHECK(huge > tiny);
    CHECK(huge.neg() < tiny.neg());
}

TEST_CASE("exact ring ops") {
    BigReal a(7), b(-3);
    CHECK(BigReal::add_exact(a, b) == BigReal(4));
    CHECK(BigReal::sub_exact(a, b) == BigReal(10));
    CHECK(BigReal::mul_exact(a, b) == BigReal(-21));
    // cancellation to zero
    CHECK(BigReal::add_exact(a, a.neg()).is_zero());
    // dyadic alignment
    BigReal c = BigReal::scaled(5, -3);  // 0.625
    CHECK(BigReal::add_exact(c, c) == BigReal::scaled(5, -2));
}

TEST_CASE("directed rounding is sided and within 1 ulp") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 2000; i++) {
        BigReal x = random_dyadic(rng);
        for (long prec : {8L, 24L, 53L}) {
            BigReal dn = x.rounded(prec, Round::Down);
            BigReal up = x.rounded(prec, Round::Up);
            BigReal nr = x.rounded(prec, Round::Nearest);
            CHECK(dn <= x);
            CHECK(up >= x);
            CHECK(dn <= nr);
            CHECK(nr <= up);
            // width of [dn, up] is at most 1 ulp: ulp <= 2^(msb - prec + 1)
            if (!x.is_zero()) {
                BigReal gap = BigReal::sub_exact(up, dn);
                if (!gap.is_zero()) {
                    CHECK(gap.floor_log2_abs() <= x.floor_log2_abs() - prec + 1);
                }
            }
        }
    }
}

TEST_CASE("rounded add/sub absorb huge gaps soundly") {
    // 1 + 2^-10^6 rounds to 1 from below with Down, just above with Up.
    BigReal one(1);
    BigReal dust = BigReal::pow2(-1000000);
    BigReal lo = BigReal::add(one, dust, 64, Round::Down);
    BigReal hi = BigReal::add(one, dust, 64, Round::Up);
    CHECK(lo <= BigReal::add_exact(one, dust).rounded(256, Round::Down));
    CHECK(lo == one);  // exact value sits between
    CHECK(hi > one);
    BigReal lo2 = BigReal::sub(one, dust, 64, Round::Down);
    BigReal hi2 = BigReal::sub(one, dust, 64, Round::Up);
    CHECK(lo2 < one);
    CHECK(hi2 == one);
}

TEST_CASE("division with remainder sticky") {
    BigReal q_dn = BigReal::div(BigReal(1), BigReal(3), 64, Round::Down);
    BigReal q_up = BigReal::div(BigReal(1), BigReal(3), 64, Round::Up);
    CHECK(q_dn < q_up);
    CHECK(as_d(q_dn) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    // 3 * q brackets 1
    CHECK(BigReal::mul_exact(q_dn, BigReal(3)) < BigReal(1));
    CHECK(BigReal::mul_exact(q_up, BigReal(3)) > BigReal(1));
    // exact case stays exact
    CHECK(BigReal::div(BigReal(6), BigReal(3), 64, Round::Down) == BigReal(2));
}

TEST_CASE("floor and ceil") {
    CHECK(BigReal::scaled(5, -1).floor() == BigReal(2));   // 2.5
    CHECK(BigReal::scaled(5, -1).ceil() == BigReal(3));
    CHECK(BigReal::scaled(-5, -1).floor() == BigReal(-3));
    CHECK(BigReal::scaled(-5, -1).ceil() == BigReal(-2));
    CHECK(BigReal(7).floor() == BigReal(7));
    CHECK(BigReal::pow2(-200).floor().is_zero());
    CHECK(BigReal::pow2(-200).neg().floor() == BigReal(-1));
}

TEST_CASE("exp/ln kernels against libm") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> U(-30.0, 30.0);
    for (int i = 0; i < 300; i++) {
        double xd = U(rng);
        // Build an exact dyadic close to xd.
        BigReal x = BigReal::from_mpz(mpz_class(static_cast<long>(xd * (1L << 40)))).mul_pow2(-40);
        double xr = as_d(x);
        BigReal lo = exp_dir(x, 96, Round::Down);
        BigReal hi = exp_dir(x, 96, Round::Up);
        CHECK(lo <= hi);
        double ref = std::exp(xr);
        CHECK(as_d(lo) <= ref * (1 + 1e-12) + 1e-300);
        CHECK(as_d(hi) >= ref * (1 - 1e-12));
        CHECK(as_d(hi) - as_d(lo) <= ref * 1e-20 + 1e-300);
    }
    for (int i = 0; i < 300; i++) {
        double xd = std::abs(U(rng)) + 1e-6;
        BigReal x = BigReal::from_mpz(mpz_class(static_cast<long>(xd * (1L << 40)))).mul_pow2(-40);
        double xr = as_d(x);
        BigReal lo = ln_dir(x, 96, Round::Down);
        BigReal hi = ln_dir(x, 96, Round::Up);
        double ref = std::log(xr);
        CHECK(as_d(lo) <= ref + 1e-12);
        CHECK(as_d(hi) >= ref - 1e-12);
        CHECK(as_d(hi) - as_d(lo) <= 1e-20);
    }
}

TEST_CASE("exp handles huge arguments via mpz exponents") {
    // e^(10^6) has binary exponent ~1.44e6; e^(e^20) ~ 7e8 bits of exponent.
    BigReal big(1000000);
    BigReal v = exp_dir(big, 64, Round::Down);
    CHECK(v.sign() == 1);
    // log2(e^10^6) = 10^6 / ln 2
    mpz_class expo = v.floor_log2_abs();
    CHECK(expo > 1442000);
    CHECK(expo < 1443000);
    BigReal vneg = exp_dir(big.neg(), 64, Round::Up);
    CHECK(vneg.sign() == 1);
    CHECK(vneg.floor_log2_abs() < -1442000);
}

TEST_CASE("ln of astronomically scaled values") {
    // ln(2^(4e36)) = 4e36 * ln 2.
    mpz_class k("4000000000000000000000000000000000000");
    BigReal x = BigReal::pow2(k);
    BigReal lo = ln_dir(x, 128, Round::Down);
    BigReal hi = ln_dir(x, 128, Round::Up);
    CHECK(lo <= hi);
    BigReal l2lo = ln2_dir(128, Round::Down);
    BigReal l2hi = ln2_dir(128, Round::Up);
    BigReal ref_lo = BigReal::mul(BigReal::from_mpz(k), l2lo, 128, Round::Down);
    BigReal ref_hi = BigReal::mul(BigReal::from_mpz(k), l2hi, 128, Round::Up);
    CHECK(lo <= ref_hi);
    CHECK(hi >= ref_lo);
}

TEST_CASE("log2 integer part is exact") {
    BigReal x = BigReal::pow2(mpz_class("123456789123456789"));
    BigReal lo = log2_dir(x, 64, Round::Down);
    BigReal hi = log2_dir(x, 64, Round::Up);
    CHECK(lo == hi);
    CHECK(lo == BigReal::from_mpz(mpz_class("123456789123456789")));
    // 2^x for integer x is exact
    CHECK(exp2_dir(BigReal(100), 64, Round::Down) == BigReal::pow2(100));
}

TEST_CASE("expm1/ln1p keep relative accuracy at tiny arguments") {
    BigReal t = BigReal::pow2(-200);
    BigReal e1 = expm1_dir(t, 96, Round::Down);
    BigReal e2 = expm1_dir(t, 96, Round::Up);
    CHECK(e1.sign() == 1);
    CHECK(e1 <= e2);
    // expm1(2^-200) ~ 2^-200 (1 + 2^-201): enclosure must sit within ~1e-28 rel.
    CHECK(e1.floor_log2_abs() == -200);
    BigReal l1 = ln1p_dir(t, 96, Round::Down);
    BigReal l2 = ln1p_dir(t, 96, Round::Up);
    CHECK(l1.sign() == 1);
    CHECK(l1 <= l2);
    CHECK(l1.floor_log2_abs() == -200);
    // round trip: ln1p(expm1(t)) ~ t
    BigReal rt_lo = ln1p_dir(e1, 96, Round::Down);
    BigReal rt_hi = ln1p_dir(e2, 96, Round::Up);
    CHECK(rt_lo <= t);
    CHECK(rt_hi >= t);
}

TEST_CASE("ln2 enclosure") {
    BigReal lo = ln2_dir(256, Round::Down);
    BigReal hi = ln2_dir(256, Round::Up);
    CHECK(lo < hi);
    CHECK(as_d(lo) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
    CHECK(lo < BigReal::scaled(6931471806, -1).mul_pow2(0));  // sanity ordering only
}

TEST_CASE("decimal round trip is bit exact") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 500; i++) {
        BigReal x = random_dyadic(rng, 60, 200);
        std::string s = x.to_decimal_string();
        BigReal y = BigReal::parse_decimal(s);
        CHECK(x == y);
    }
    CHECK(BigReal::parse_decimal("0") == BigReal());
    CHECK(BigReal::parse_decimal("-1.625e2") == BigReal::scaled(-13, 4).mul_pow2(0));
    CHECK(BigReal::parse_decimal("2.5e-1") == BigReal::scaled(1, -2));
    CHECK_THROWS_AS(BigReal::parse_decimal("0.1"), ParseError);  // not dyadic
    CHECK_THROWS_AS(BigReal::parse_decimal("abc"), ParseError);
}

TEST_CASE("monotone refinement: higher precision never widens") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; i++) {
        BigReal x = random_dyadic(rng, 50, 20);
        BigReal lo1 = exp_dir(x, 64, Round::Down), hi1 = exp_dir(x, 64, Round::Up);
        BigReal lo2 = exp_dir(x, 128, Round::Down), hi2 = exp_dir(x, 128, Round::Up);
        CHECK(lo2 >= lo1);
        CHECK(hi2 <= hi1);
    }
}
