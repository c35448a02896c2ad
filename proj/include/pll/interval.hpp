#ifndef PLL_INTERVAL_HPP
#define PLL_INTERVAL_HPP

#include <functional>
#include <string>

#include "pll/bigreal.hpp"
#include "pll/rational.hpp"

namespace pll {

// Three-way certified comparison outcome. A verdict is issued only when the
// enclosures are disjoint, so it can never assert a false inequality.
enum class Cmp { CertainlyLess, CertainlyGreater, Indeterminate };

const char* cmp_name(Cmp c);

// Outward-rounded enclosure [lo, hi] of a real value.
class Interval {
public:
    Interval() : lo_(), hi_() {}
    explicit Interval(const BigReal& point) : lo_(point), hi_(point) {}
    Interval(BigReal lo, BigReal hi);

    static Interval hull(const BigReal& a, const BigReal& b);
    // Enclosure of a rational at the given precision.
    static Interval of_rational(const Rational& q, long prec);

    const BigReal& lo() const { return lo_; }
    const BigReal& hi() const { return hi_; }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const BigReal& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& x) const { return lo_ <= x.lo_ && x.hi_ <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    // 0 if the interval straddles zero, else the common sign.
    int sign() const;
    BigReal width(long prec = kDefaultPrecision) const;
    BigReal mid(long prec = kDefaultPrecision) const;

    Interval neg() const { return Interval(hi_.neg(), lo_.neg()); }
    Interval mul_pow2(const mpz_class& k) const { return Interval(lo_.mul_pow2(k), hi_.mul_pow2(k)); }

    static Interval add(const Interval& a, const Interval& b, long prec);
    static Interval sub(const Interval& a, const Interval& b, long prec);
    static Interval mul(const Interval& a, const Interval& b, long prec);
    static Interval div(const Interval& a, const Interval& b, long prec);
    Interval scale(const Rational& q, long prec) const;

    static Interval join(const Interval& a, const Interval& b);  // hull

    std::string brief(long digits = 8) const;

private:
    BigReal lo_, hi_;
};

// Certified comparison of fixed enclosures.
Cmp certified_compare(const Interval& a, const Interval& b);

// Enclosures of elementary functions; containment is preserved.
Interval exp_enclosure(const Interval& x, long prec);
Interval expm1_enclosure(const Interval& x, long prec);
Interval ln_enclosure(const Interval& x, long prec);    // requires x.lo > 0
Interval ln1p_enclosure(const Interval& x, long prec);  // requires x.lo > -1
Interval log2_enclosure(const Interval& x, long prec);
Interval exp2_enclosure(const Interval& x, long prec);
Interval ln2_enclosure(long prec);

// Re-evaluating certified comparison: evaluates both sides at doubling
// precision until the enclosures separate or the cap is reached.
Cmp compare_escalating(const std::function<Interval(long)>& a,
                       const std::function<Interval(long)>& b,
                       long start_prec, long max_prec = kMaxPrecision);

} // namespace pll

#endif
