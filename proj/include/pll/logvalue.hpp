#ifndef PLL_LOGVALUE_HPP
#define PLL_LOGVALUE_HPP

#include <optional>

#include "pll/interval.hpp"

namespace pll {

// ln(q) for a positive quantity q, with NEG_INFINITY standing for q = 0.
// Adding LogValues multiplies the underlying quantities exactly.
class LogValue {
public:
    LogValue() : v_(BigReal()) {}  // ln 1 = 0
    static LogValue neg_infinity() { return LogValue(std::nullopt); }
    static LogValue of_log(const BigReal& x) { return LogValue(x); }

    bool is_neg_infinity() const { return !v_.has_value(); }
    const BigReal& log() const {
        if (!v_) throw DomainError("log of zero quantity");
        return *v_;
    }

    friend bool operator==(const LogValue& a, const LogValue& b) {
        if (a.is_neg_infinity() || b.is_neg_infinity())
            return a.is_neg_infinity() && b.is_neg_infinity();
        return *a.v_ == *b.v_;
    }
    friend bool operator<(const LogValue& a, const LogValue& b) {
        if (a.is_neg_infinity()) return !b.is_neg_infinity();
        if (b.is_neg_infinity()) return false;
        return *a.v_ < *b.v_;
    }
    friend bool operator<=(const LogValue& a, const LogValue& b) { return a < b || a == b; }
    friend bool operator>(const LogValue& a, const LogValue& b) { return b < a; }
    friend bool operator>=(const LogValue& a, const LogValue& b) { return b <= a; }

    // Exact sum of logs = product of quantities.
    LogValue mul_quantity(const LogValue& o) const {
        if (is_neg_infinity() || o.is_neg_infinity()) return neg_infinity();
        return LogValue(BigReal::add_exact(*v_, *o.v_));
    }

private:
    explicit LogValue(std::optional<BigReal> v) : v_(std::move(v)) {}
    std::optional<BigReal> v_;
};

// Point operations at the working precision (round-to-nearest, ~1 ulp).
LogValue log_add_exp(const LogValue& x, const LogValue& y, long prec);
// Requires x >= y; NEG_INFINITY when x == y.
LogValue log_sub_exp(const LogValue& x, const LogValue& y, long prec);

// Interval (enclosure) of ln q, with a flag for the exact zero quantity.
// Used wherever quantities may collapse to zero (e.g. integrals over [c, c]).
class LogInterval {
public:
    LogInterval() : neg_inf_(true) {}
    static LogInterval zero_quantity() { return LogInterval(); }
    explicit LogInterval(Interval log) : neg_inf_(false), log_(std::move(log)) {}

    bool is_neg_infinity() const { return neg_inf_; }
    const Interval& log() const {
        if (neg_inf_) throw DomainError("log of zero quantity");
        return log_;
    }

private:
    bool neg_inf_;
    Interval log_;
};

// Directed interval forms used by the certified integral paths.
Interval log_add_exp(const Interval& x, const Interval& y, long prec);
// Requires x.lo >= y.hi (quantities certifiedly ordered).
Interval log_sub_exp(const Interval& x, const Interval& y, long prec);

} // namespace pll

#endif
