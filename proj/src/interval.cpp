#include "pll/interval.hpp"

#include <sstream>

namespace pll {

const char* cmp_name(Cmp c) {
    switch (c) {
        case Cmp::CertainlyLess: return "CertainlyLess";
        case Cmp::CertainlyGreater: return "CertainlyGreater";
        case Cmp::Indeterminate: return "Indeterminate";
    }
    return "?";
}

Interval::Interval(BigReal lo, BigReal hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw DomainError("interval with lo > hi");
}

Interval Interval::hull(const BigReal& a, const BigReal& b) {
    return a <= b ? Interval(a, b) : Interval(b, a);
}

Interval Interval::of_rational(const Rational& q, long prec) {
    if (q.is_zero()) return Interval(BigReal());
    BigReal num = BigReal::from_mpz(q.num());
    BigReal den = BigReal::from_mpz(q.den());
    return Interval(BigReal::div(num, den, prec, Round::Down),
                    BigReal::div(num, den, prec, Round::Up));
}

int Interval::sign() const {
    if (lo_.sign() > 0) return 1;
    if (hi_.sign() < 0) return -1;
    return 0;
}

BigReal Interval::width(long prec) const {
    return BigReal::sub(hi_, lo_, prec, Round::Up);
}

BigReal Interval::mid(long prec) const {
    return BigReal::add(lo_, hi_, prec, Round::Nearest).mul_pow2(-1);
}

Interval Interval::add(const Interval& a, const Interval& b, long prec) {
    return Interval(BigReal::add(a.lo_, b.lo_, prec, Round::Down),
                    BigReal::add(a.hi_, b.hi_, prec, Round::Up));
}

Interval Interval::sub(const Interval& a, const Interval& b, long prec) {
    return Interval(BigReal::sub(a.lo_, b.hi_, prec, Round::Down),
                    BigReal::sub(a.hi_, b.lo_, prec, Round::Up));
}

Interval Interval::mul(const Interval& a, const Interval& b, long prec) {
    // Exact products, one directed rounding each.
    BigReal c[4] = {
        BigReal::mul_exact(a.lo_, b.lo_),
        BigReal::mul_exact(a.lo_, b.hi_),
        BigReal::mul_exact(a.hi_, b.lo_),
        BigReal::mul_exact(a.hi_, b.hi_),
    };
    BigReal lo = c[0], hi = c[0];
    for (int i = 1; i < 4; i++) {
        if (c[i] < lo) lo = c[i];
        if (c[i] > hi) hi = c[i];
    }
    return Interval(lo.rounded(prec, Round::Down), hi.rounded(prec, Round::Up));
}

Interval Interval::div(const Interval& a, const Interval& b, long prec) {
    if (b.contains_zero()) throw DomainError("interval division by interval containing zero");
    BigReal c[4] = {
        BigReal::div(a.lo_, b.lo_, prec, Round::Down),
        BigReal::div(a.lo_, b.hi_, prec, Round::Down),
        BigReal::div(a.hi_, b.lo_, prec, Round::Down),
        BigReal::div(a.hi_, b.hi_, prec, Round::Down),
    };
    BigReal d[4] = {
        BigReal::div(a.lo_, b.lo_, prec, Round::Up),
        BigReal::div(a.lo_, b.hi_, prec, Round::Up),
        BigReal::div(a.hi_, b.lo_, prec, Round::Up),
        BigReal::div(a.hi_, b.hi_, prec, Round::Up),
    };
    BigReal lo = c[0], hi = d[0];
    for (int i = 1; i < 4; i++) {
        if (c[i] < lo) lo = c[i];
        if (d[i] > hi) hi = d[i];
    }
    return Interval(lo, hi);
}

Interval Interval::scale(const Rational& q, long prec) const {
    if (q.is_zero()) return Interval(BigReal());
    Interval qi = Interval::of_rational(q, prec + 8);
    return mul(*this, qi, prec);
}

Interval Interval::join(const Interval& a, const Interval& b) {
    return Interval(a.lo_ <= b.lo_ ? a.lo_ : b.lo_, a.hi_ >= b.hi_ ? a.hi_ : b.hi_);
}

std::string Interval::brief(long digits) const {
    std::ostringstream out;
    double w = width(64).to_double_approx();
    out << "[~" << mid(64).to_double_approx() << " +-" << w / 2 << "]";
    (void)digits;
    return out.str();
}

Cmp certified_compare(const Interval& a, const Interval& b) {
    if (a.hi() < b.lo()) return Cmp::CertainlyLess;
    if (a.lo() > b.hi()) return Cmp::CertainlyGreater;
    return Cmp::Indeterminate;
}

Interval exp_enclosure(const Interval& x, long prec) {
    return Interval(exp_dir(x.lo(), prec, Round::Down), exp_dir(x.hi(), prec, Round::Up));
}

Interval expm1_enclosure(const Interval& x, long prec) {
    return Interval(expm1_dir(x.lo(), prec, Round::Down), expm1_dir(x.hi(), prec, Round::Up));
}

Interval ln_enclosure(const Interval& x, long prec) {
    if (x.lo().sign() <= 0) throw DomainError("ln of interval reaching <= 0");
    return Interval(ln_dir(x.lo(), prec, Round::Down), ln_dir(x.hi(), prec, Round::Up));
}

Interval ln1p_enclosure(const Interval& x, long prec) {
    if (x.lo() <= BigReal(-1)) throw DomainError("ln1p of interval reaching <= -1");
    return Interval(ln1p_dir(x.lo(), prec, Round::Down), ln1p_dir(x.hi(), prec, Round::Up));
}

Interval log2_enclosure(const Interval& x, long prec) {
    if (x.lo().sign() <= 0) throw DomainError("log2 of interval reaching <= 0");
    return Interval(log2_dir(x.lo(), prec, Round::Down), log2_dir(x.hi(), prec, Round::Up));
}

Interval exp2_enclosure(const Interval& x, long prec) {
    return Interval(exp2_dir(x.lo(), prec, Round::Down), exp2_dir(x.hi(), prec, Round::Up));
}

Interval ln2_enclosure(long prec) {
    return Interval(ln2_dir(prec, Round::Down), ln2_dir(prec, Round::Up));
}

Cmp compare_escalating(const std::function<Interval(long)>& a,
                       const std::function<Interval(long)>& b,
                       long start_prec, long max_prec) {
    for (long p = start_prec; p <= max_prec; p *= 2) {
        Cmp c = certified_compare(a(p), b(p));
        if (c != Cmp::Indeterminate) return c;
        if (p == max_prec) break;
        if (p * 2 > max_prec) p = max_prec / 2;
    }
    return Cmp::Indeterminate;
}

} // namespace pll
