#ifndef PLL_BIGREAL_HPP
#define PLL_BIGREAL_HPP

#include <gmpxx.h>
#include <optional>
#include <string>

#include "pll/errors.hpp"
#include "pll/rational.hpp"

namespace pll {

enum class Round { Down, Up, Nearest };

// Default working precision (mantissa bits) and the escalation cap used by
// certified comparisons.
inline constexpr long kDefaultPrecision = 256;
inline constexpr long kMaxPrecision = 16384;

// Arbitrary-precision dyadic real: value = sign * mantissa * 2^exponent with
// an mpz exponent, so magnitudes like e^(e^1000) carry no overflow risk.
// The mantissa is kept odd (trailing zeros folded into the exponent), which
// makes every value canonical: equal reals have identical representations.
// Values are exact; rounding happens only in operations that request it.
class BigReal {
public:
    BigReal() : sign_(0), mant_(0), exp_(0) {}
    explicit BigReal(long v);
    static BigReal from_mpz(const mpz_class& m);
    // 2^k (mantissa 1).
    static BigReal pow2(const mpz_class& k);
    // m * 2^e.
    static BigReal scaled(const mpz_class& m, const mpz_class& e);

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    const mpz_class& mantissa() const { return mant_; }
    const mpz_class& exponent() const { return exp_; }
    size_t mantissa_bits() const { return is_zero() ? 0 : mpz_sizeinbase(mant_.get_mpz_t(), 2); }
    bool is_pow2() const { return sign_ == 1 && mant_ == 1; }

    // Exact floor(log2 |x|); x != 0.
    mpz_class floor_log2_abs() const;
    // Position just above the most significant bit: |x| < 2^msb_exp <= 2|x|.
    mpz_class msb_exp() const { return floor_log2_abs() + 1; }

    bool is_integer() const { return sign_ == 0 || exp_ >= 0; }
    // Exact integer extraction when is_integer() and small enough to shift.
    std::optional<mpz_class> to_mpz_exact(long max_bits = 1 << 22) const;
    std::optional<long> to_long() const;
    // Exact rational value (denominator a power of two). Throws
    // RepresentabilityError if the shift is unreasonably large.
    Rational to_rational(long max_bits = 1 << 22) const;

    // Clamped conversion for diagnostics and oracles only.
    double to_double_approx() const;

    BigReal neg() const;
    BigReal abs() const { return sign_ < 0 ? neg() : *this; }
    // Exact x * 2^k.
    BigReal mul_pow2(const mpz_class& k) const;

    // Exact ring operations. add/sub throw RepresentabilityError when the
    // exponent gap would force an absurd alignment shift.
    static BigReal add_exact(const BigReal& a, const BigReal& b);
    static BigReal sub_exact(const BigReal& a, const BigReal& b);
    static BigReal mul_exact(const BigReal& a, const BigReal& b);

    // Rounded operations; result within 1 ulp at `prec` on the requested side.
    static BigReal add(const BigReal& a, const BigReal& b, long prec, Round mode);
    static BigReal sub(const BigReal& a, const BigReal& b, long prec, Round mode);
    static BigReal mul(const BigReal& a, const BigReal& b, long prec, Round mode);
    static BigReal div(const BigReal& a, const BigReal& b, long prec, Round mode);
    BigReal rounded(long prec, Round mode) const;

    // floor/ceil to integer (exact).
    BigReal floor() const;
    BigReal ceil() const;

    // Exact three-way comparison, always decidable.
    static int cmp(const BigReal& a, const BigReal& b);
    friend bool operator==(const BigReal& a, const BigReal& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigReal& a, const BigReal& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return cmp(a, b) >= 0; }

    // Serialization text forms. Exact decimal scientific ("-1.625e2"-style
    // with all digits) when the exponent is small; see io_json for the
    // structured fallbacks.
    bool decimal_renderable(long max_abs_exp = 1 << 14) const;
    std::string to_decimal_string() const;
    static BigReal parse_decimal(const std::string& text);

    std::string debug_string() const;

private:
    void normalize();

    int sign_;        // -1, 0, +1
    mpz_class mant_;  // odd, > 0 unless zero
    mpz_class exp_;
};

// Directed transcendental kernels. Round::Down returns a value <= the exact
// result, Round::Up a value >= it, both within ~2 ulp at `prec`. Round::Nearest
// is within 1 ulp. Arguments whose own exponents exceed the internal argument
// cap raise RepresentabilityError (the Mag layer handles those scales).
BigReal exp_dir(const BigReal& x, long prec, Round mode);
BigReal expm1_dir(const BigReal& x, long prec, Round mode);
BigReal ln_dir(const BigReal& x, long prec, Round mode);    // x > 0
BigReal ln1p_dir(const BigReal& x, long prec, Round mode);  // x > -1
BigReal log2_dir(const BigReal& x, long prec, Round mode);  // x > 0
BigReal exp2_dir(const BigReal& x, long prec, Round mode);
// ln 2 with directed rounding at `prec`.
BigReal ln2_dir(long prec, Round mode);

} // namespace pll

#endif
