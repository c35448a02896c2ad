#include "pll/logvalue.hpp"

namespace pll {

namespace {

// Gap beyond which e^d vanishes below every bit we keep.
bool absorbed(const BigReal& d, long prec) {
    // d <= -(2 prec + 160) implies e^d < 2^-(2 prec + 200).
    return d <= BigReal(-(2 * prec + 160));
}

} // namespace

LogValue log_add_exp(const LogValue& x, const LogValue& y, long prec) {
    if (x.is_neg_infinity()) return y;
    if (y.is_neg_infinity()) return x;
    const BigReal& a = x.log() >= y.log() ? x.log() : y.log();
    const BigReal& b = x.log() >= y.log() ? y.log() : x.log();
    long W = prec + 32;
    BigReal d = BigReal::sub(b, a, W, Round::Nearest);  // <= 0
    if (absorbed(d, prec)) return LogValue::of_log(a.rounded(prec, Round::Nearest));
    BigReal t = exp_dir(d, W, Round::Nearest);
    BigReal r = ln1p_dir(t, W, Round::Nearest);
    return LogValue::of_log(BigReal::add(a, r, prec, Round::Nearest));
}

LogValue log_sub_exp(const LogValue& x, const LogValue& y, long prec) {
    if (y.is_neg_infinity()) return x;
    if (x.is_neg_infinity()) throw DomainError("negative quantity in log domain");
    int c = BigReal::cmp(x.log(), y.log());
    if (c < 0) throw DomainError("negative quantity in log domain");
    if (c == 0) return LogValue::neg_infinity();
    long W = prec + 32;
    BigReal d = BigReal::sub(y.log(), x.log(), W, Round::Nearest);  // < 0
    if (absorbed(d, prec)) return LogValue::of_log(x.log().rounded(prec, Round::Nearest));
    BigReal t = expm1_dir(d, W, Round::Nearest);  // in (-1, 0)
    BigReal r = ln1p_dir(t, W, Round::Nearest);
    return LogValue::of_log(BigReal::add(x.log(), r, prec, Round::Nearest));
}

namespace {

BigReal lse_add_dir(const BigReal& xa, const BigReal& xb, long prec, Round mode) {
    const BigReal& a = xa >= xb ? xa : xb;
    const BigReal& b = xa >= xb ? xb : xa;
    long W = prec + 32;
    Round rd = mode;
    BigReal d = BigReal::sub(b, a, W, rd);
    if (absorbed(d, prec)) {
        if (mode == Round::Down) return a.rounded(prec, Round::Down);
        return BigReal::add(a, BigReal::pow2(-(2 * prec + 100)), prec, Round::Up);
    }
    BigReal t = exp_dir(d, W, rd);
    BigReal r = ln1p_dir(t, W, rd);
    return BigReal::add(a, r, prec, rd);
}

} // namespace

Interval log_add_exp(const Interval& x, const Interval& y, long prec) {
    return Interval(lse_add_dir(x.lo(), y.lo(), prec, Round::Down),
                    lse_add_dir(x.hi(), y.hi(), prec, Round::Up));
}

Interval log_sub_exp(const Interval& x, const Interval& y, long prec) {
    if (!(x.lo() > y.hi()))
        throw CertificationError("log_sub_exp: quantity order not certified");
    auto dir = [&](const BigReal& a, const BigReal& b, Round mode) {
        // ln(e^a - e^b) = a + ln1p(-e^d), d = b - a < 0.
        long W = prec + 32;
        // Smaller result needs larger e^d, i.e. d rounded up.
        Round dmode = (mode == Round::Down) ? Round::Up : Round::Down;
        BigReal d = BigReal::sub(b, a, W, dmode);
        if (absorbed(d, prec)) {
            if (mode == Round::Down)
                return BigReal::sub(a, BigReal::pow2(-(2 * prec + 100)), prec, Round::Down);
            return a.rounded(prec, Round::Up);
        }
        BigReal t = exp_dir(d, W, dmode);
        BigReal r = ln1p_dir(t.neg(), W, mode);
        return BigReal::add(a, r, prec, mode);
    };
    return Interval(dir(x.lo(), y.hi(), Round::Down), dir(x.hi(), y.lo(), Round::Up));
}

} // namespace pll
