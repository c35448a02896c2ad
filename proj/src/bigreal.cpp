#include "pll/bigreal.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace pll {

namespace {

// Alignment/argument caps. These guard against accidental memory blowups;
// quantities beyond them belong to the Mag layer, not to plain BigReal.
constexpr long kExactAlignCap = 1L << 22;  // bits of shift allowed in exact add
constexpr long kExpArgBits = 1L << 13;     // msb_exp cap for exp/ln arguments

long mpz_to_long_clamped(const mpz_class& z, long cap) {
    if (z > cap) return cap;
    if (z < -cap) return -cap;
    return static_cast<long>(z.get_si());
}

} // namespace

BigReal::BigReal(long v) : sign_(0), mant_(0), exp_(0) {
    if (v != 0) {
        sign_ = v > 0 ? 1 : -1;
        mant_ = mpz_class(v > 0 ? v : -v);
        normalize();
    }
}

BigReal BigReal::from_mpz(const mpz_class& m) {
    BigReal r;
    if (m != 0) {
        r.sign_ = sgn(m) > 0 ? 1 : -1;
        r.mant_ = ::abs(m);
        r.exp_ = 0;
        r.normalize();
    }
    return r;
}

BigReal BigReal::pow2(const mpz_class& k) {
    BigReal r;
    r.sign_ = 1;
    r.mant_ = 1;
    r.exp_ = k;
    return r;
}

BigReal BigReal::scaled(const mpz_class& m, const mpz_class& e) {
    BigReal r = from_mpz(m);
    if (!r.is_zero()) r.exp_ += e;
    return r;
}

void BigReal::normalize() {
    if (mant_ == 0) {
        sign_ = 0;
        exp_ = 0;
        return;
    }
    mp_bitcnt_t tz = mpz_scan1(mant_.get_mpz_t(), 0);
    if (tz > 0) {
        mant_ >>= tz;
        exp_ += static_cast<unsigned long>(tz);
    }
}

mpz_class BigReal::floor_log2_abs() const {
    if (is_zero()) throw DomainError("floor_log2 of zero");
    return exp_ + static_cast<long>(mantissa_bits()) - 1;
}

std::optional<mpz_class> BigReal::to_mpz_exact(long max_bits) const {
    if (is_zero()) return mpz_class(0);
    if (exp_ < 0) return std::nullopt;  // odd mantissa: not an integer
    if (exp_ > max_bits) return std::nullopt;
    mpz_class m = mant_ << exp_.get_ui();
    if (sign_ < 0) m = -m;
    return m;
}

std::optional<long> BigReal::to_long() const {
    auto z = to_mpz_exact(64);
    if (!z || !z->fits_slong_p()) return std::nullopt;
    return z->get_si();
}

Rational BigReal::to_rational(long max_bits) const {
    if (is_zero()) return Rational(0);
    if (::abs(exp_) > max_bits) throw RepresentabilityError("dyadic exponent too large for rational form");
    mpq_class q(sign_ < 0 ? mpq_class(-mant_) : mpq_class(mant_));
    long e = static_cast<long>(exp_.get_si());
    if (e >= 0) {
        mpz_class num = q.get_num() << e;
        q = mpq_class(num);
    } else {
        q /= mpq_class(mpz_class(1) << (-e));
    }
    return Rational(q);
}

double BigReal::to_double_approx() const {
    if (is_zero()) return 0.0;
    mpz_class top = floor_log2_abs();
    if (top > 1020) return sign_ > 0 ? 1e308 * 10 : -1e308 * 10;  // overflow to +-inf
    if (top < -1070) return 0.0;
    long L = static_cast<long>(mantissa_bits());
    long drop = std::max(0L, L - 64);
    mpz_class m = mant_ >> drop;
    double d = m.get_d();
    long e = mpz_to_long_clamped(exp_ + drop, 4000);
    return sign_ * std::ldexp(d, static_cast<int>(e));
}

BigReal BigReal::neg() const {
    BigReal r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigReal BigReal::mul_pow2(const mpz_class& k) const {
    if (is_zero()) return *this;
    BigReal r = *this;
    r.exp_ += k;
    return r;
}

int BigReal::cmp(const BigReal& a, const BigReal& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    if (a.sign_ == 0) return 0;
    int s = a.sign_;
    // Compare msb positions first; exact and cheap at any exponent size.
    mpz_class ma = a.msb_exp(), mb = b.msb_exp();
    if (ma != mb) return (ma < mb ? -1 : 1) * s;
    // Same msb: the exponent gap is bounded by the mantissa widths.
    mpz_class gap = a.exp_ - b.exp_;
    long g = static_cast<long>(gap.get_si());
    mpz_class am = a.mant_, bm = b.mant_;
    if (g >= 0) am <<= g; else bm <<= -g;
    int c = ::cmp(am, bm);
    return c * s;
}

BigReal BigReal::add_exact(const BigReal& a, const BigReal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    mpz_class lo = std::min(a.exp_, b.exp_);
    mpz_class sa = a.exp_ - lo, sb = b.exp_ - lo;
    if (sa > kExactAlignCap || sb > kExactAlignCap)
        throw RepresentabilityError("exact add: exponent gap too large");
    mpz_class am = a.mant_ << sa.get_ui();
    mpz_class bm = b.mant_ << sb.get_ui();
    if (a.sign_ < 0) am = -am;
    if (b.sign_ < 0) bm = -bm;
    BigReal r = from_mpz(am + bm);
    if (!r.is_zero()) r.exp_ += lo;
    return r;
}

BigReal BigReal::sub_exact(const BigReal& a, const BigReal& b) {
    return add_exact(a, b.neg());
}

BigReal BigReal::mul_exact(const BigReal& a, const BigReal& b) {
    if (a.is_zero() || b.is_zero()) return BigReal();
    BigReal r;
    r.sign_ = a.sign_ * b.sign_;
    r.mant_ = a.mant_ * b.mant_;
    r.exp_ = a.exp_ + b.exp_;
    r.normalize();
    return r;
}

BigReal BigReal::rounded(long prec, Round mode) const {
    if (prec < 2) throw DomainError("precision must be at least 2 bits");
    if (is_zero()) return BigReal();
    long L = static_cast<long>(mantissa_bits());
    if (L <= prec) return *this;
    long d = L - prec;
    mpz_class q = mant_ >> d;
    mpz_class rem = mant_ - (q << d);
    auto build = [&](const mpz_class& m) {
        BigReal r;
        if (m == 0) return BigReal();
        r.sign_ = sign_;
        r.mant_ = m;
        r.exp_ = exp_ + d;
        r.normalize();
        return r;
    };
    if (rem == 0) return build(q);
    switch (mode) {
        case Round::Down:
            return sign_ > 0 ? build(q) : build(q + 1);
        case Round::Up:
            return sign_ > 0 ? build(q + 1) : build(q);
        case Round::Nearest: {
            bool top = mpz_tstbit(mant_.get_mpz_t(), d - 1) != 0;
            if (!top) return build(q);
            mpz_class low = rem - (mpz_class(1) << (d - 1));
            if (low == 0 && mpz_tstbit(q.get_mpz_t(), 0) == 0) return build(q);  // half to even
            return build(q + 1);
        }
    }
    return build(q);
}

namespace {

// Round v + t to prec bits where t is an unrepresented tail with
// |t| < 2^(tail_scale + 1) and sign(t) given by sticky (0 none, +-1, 2 unknown).
BigReal round_with_tail(const BigReal& v, long prec, Round mode, int sticky,
                        const mpz_class& tail_scale) {
    if (sticky == 0) return v.rounded(prec, mode);
    bool may_neg = (sticky < 0 || sticky == 2);
    bool may_pos = (sticky > 0 || sticky == 2);
    BigReal bound = BigReal::pow2(tail_scale + 1);
    auto endpoint = [&](bool upper) {
        const BigReal adj = upper ? bound : bound.neg();
        // Exact when alignable; otherwise the tail sits so far below v's
        // resolution that a one-unit nudge at v's lsb covers it.
        if (v.is_zero()) return adj;
        mpz_class gap = v.exponent() - (tail_scale + 1);
        if (abs(gap) <= kExactAlignCap) return BigReal::add_exact(v, adj);
        if (gap > 0) {
            // |t| < 2^(tail+1) <= 2^(v.exp): nudge one lsb unit.
            BigReal unit = BigReal::pow2(v.exponent());
            return BigReal::add_exact(v, upper ? unit : unit.neg());
        }
        throw RepresentabilityError("tail coarser than value resolution");
    };
    switch (mode) {
        case Round::Down:
            return (may_neg ? endpoint(false) : v).rounded(prec, Round::Down);
        case Round::Up:
            return (may_pos ? endpoint(true) : v).rounded(prec, Round::Up);
        case Round::Nearest:
            return v.rounded(prec, Round::Nearest);
    }
    return v.rounded(prec, mode);
}

// Split x into (bits at positions >= pos, sign of the dropped part).
struct SplitResult {
    BigReal head;
    int tail_sign;
};

SplitResult truncate_below(const BigReal& x, const mpz_class& pos) {
    if (x.is_zero()) return {BigReal(), 0};
    mpz_class shift = pos - x.exponent();
    if (shift <= 0) return {x, 0};
    if (shift > kExactAlignCap) return {BigReal(), x.sign()};
    unsigned long s = shift.get_ui();
    mpz_class q = x.mantissa() >> s;
    bool dropped = (q << s) != x.mantissa();
    BigReal head = BigReal::scaled(x.sign() < 0 ? mpz_class(-q) : q, pos);
    return {head, dropped ? x.sign() : 0};
}

int combine_tail_signs(int a, int b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b && a != 2) return a;
    return 2;
}

BigReal add_impl(const BigReal& a0, const BigReal& b1, long prec, Round mode) {
    if (a0.is_zero()) return b1.rounded(prec, mode);
    if (b1.is_zero()) return a0.rounded(prec, mode);
    const BigReal* A = &a0;
    const BigReal* B = &b1;
    mpz_class msbA = A->msb_exp(), msbB = B->msb_exp();
    if (msbA < msbB) {
        std::swap(A, B);
        std::swap(msbA, msbB);
    }
    mpz_class gap = msbA - msbB;
    if (gap <= prec + 80) {
        mpz_class lo = std::min(A->exponent(), B->exponent());
        long salign = mpz_to_long_clamped(std::max(A->exponent(), B->exponent()) - lo, kExactAlignCap + 1);
        long wid = salign + static_cast<long>(std::max(A->mantissa_bits(), B->mantissa_bits()));
        if (wid <= kExactAlignCap) {
            return BigReal::add_exact(*A, *B).rounded(prec, mode);
        }
        // Very wide operands: truncate both below a window first. The window
        // is 40 bits deeper than the largest possible cancellation, so the
        // surviving sum keeps full precision.
        mpz_class keep_lo = msbA - (prec + 120);
        auto [ah, ta] = truncate_below(*A, keep_lo);
        auto [bh, tb] = truncate_below(*B, keep_lo);
        BigReal sum = BigReal::add_exact(ah, bh);
        return round_with_tail(sum, prec, mode, combine_tail_signs(ta, tb), keep_lo);
    }
    // |B| lies far below A's kept window: absorb it as a sticky tail.
    mpz_class keep_lo = msbA - (prec + 40);
    auto [ah, ta] = truncate_below(*A, keep_lo);
    return round_with_tail(ah, prec, mode, combine_tail_signs(ta, B->sign()), keep_lo);
}

} // namespace

BigReal BigReal::add(const BigReal& a, const BigReal& b, long prec, Round mode) {
    return add_impl(a, b, prec, mode);
}

BigReal BigReal::sub(const BigReal& a, const BigReal& b, long prec, Round mode) {
    return add_impl(a, b.neg(), prec, mode);
}

BigReal BigReal::mul(const BigReal& a, const BigReal& b, long prec, Round mode) {
    return mul_exact(a, b).rounded(prec, mode);
}

BigReal BigReal::div(const BigReal& a, const BigReal& b, long prec, Round mode) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return BigReal();
    long La = static_cast<long>(a.mantissa_bits());
    long Lb = static_cast<long>(b.mantissa_bits());
    long shift = std::max(0L, prec + 4 - La + Lb);
    mpz_class num = a.mant_ << shift;
    mpz_class q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), b.mant_.get_mpz_t());
    int s = a.sign_ * b.sign_;
    mpz_class res_exp = a.exp_ - b.exp_ - shift;
    BigReal res = scaled(s < 0 ? mpz_class(-q) : q, res_exp);
    // Truncation dropped < 1 unit of magnitude at the quotient scale.
    int sticky = (rem != 0) ? s : 0;
    return round_with_tail(res, prec, mode, sticky, res_exp - 1);
}

BigReal BigReal::floor() const {
    if (is_zero() || exp_ >= 0) return *this;
    mpz_class shift = -exp_;
    if (shift > static_cast<long>(mantissa_bits()) + 2) {
        return sign_ > 0 ? BigReal() : BigReal(-1);
    }
    unsigned long s = shift.get_ui();
    mpz_class v = sign_ < 0 ? mpz_class(-mant_) : mant_;
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), v.get_mpz_t(), s);
    return from_mpz(q);
}

BigReal BigReal::ceil() const {
    return neg().floor().neg();
}

bool BigReal::decimal_renderable(long max_abs_exp) const {
    if (is_zero()) return true;
    return ::abs(exp_) <= max_abs_exp && mantissa_bits() <= static_cast<size_t>(1 << 16);
}

std::string BigReal::to_decimal_string() const {
    if (is_zero()) return "0";
    if (!decimal_renderable()) throw RepresentabilityError("exponent too large for decimal rendering");
    long e = static_cast<long>(exp_.get_si());
    mpz_class digits;
    long dec_exp;
    if (e >= 0) {
        digits = mant_ << e;
        dec_exp = 0;
    } else {
        mpz_class p5;
        mpz_ui_pow_ui(p5.get_mpz_t(), 5, static_cast<unsigned long>(-e));
        digits = mant_ * p5;
        dec_exp = e;  // value = digits * 10^e
    }
    std::string ds = digits.get_str();
    long sci_exp = dec_exp + static_cast<long>(ds.size()) - 1;
    std::string frac = ds.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::ostringstream out;
    if (sign_ < 0) out << '-';
    out << ds[0];
    if (!frac.empty()) out << '.' << frac;
    out << 'e' << sci_exp;
    return out.str();
}

BigReal BigReal::parse_decimal(const std::string& text) {
    if (text.empty()) throw ParseError("empty number");
    size_t i = 0;
    int sign = 1;
    if (text[i] == '-') { sign = -1; i++; }
    else if (text[i] == '+') { i++; }
    std::string digits;
    long frac_len = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < text.size(); i++) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            digits += c;
            if (seen_dot) frac_len++;
            seen_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            break;
        } else {
            throw ParseError("bad decimal literal: " + text);
        }
    }
    long ex = 0;
    if (i < text.size()) {
        std::string es = text.substr(i + 1);
        if (es.empty()) throw ParseError("bad exponent in: " + text);
        try {
            size_t used = 0;
            ex = std::stol(es, &used);
            if (used != es.size()) throw ParseError("bad exponent in: " + text);
        } catch (ParseError&) {
            throw;
        } catch (...) {
            throw ParseError("bad exponent in: " + text);
        }
    }
    if (!seen_digit) throw ParseError("bad decimal literal: " + text);
    mpz_class D(digits, 10);
    if (D == 0) return BigReal();
    long F = ex - frac_len;  // value = D * 10^F
    BigReal r;
    if (F >= 0) {
        mpz_class p5;
        mpz_ui_pow_ui(p5.get_mpz_t(), 5, static_cast<unsigned long>(F));
        r = from_mpz(D * p5);
        r.exp_ += F;
    } else {
        mpz_class p5, q, rem;
        mpz_ui_pow_ui(p5.get_mpz_t(), 5, static_cast<unsigned long>(-F));
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), D.get_mpz_t(), p5.get_mpz_t());
        if (rem != 0) throw ParseError("decimal is not an exact dyadic: " + text);
        r = from_mpz(q);
        r.exp_ += F;
    }
    if (sign < 0) r = r.neg();
    return r;
}

std::string BigReal::debug_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    out << (sign_ < 0 ? "-" : "") << mant_.get_str() << "*2^" << exp_.get_str();
    return out.str();
}

// ---------------------------------------------------------------------------
// Transcendental kernels.
//
// All kernels compute in fixed point: an mpz V at scale 2^-W together with a
// small error bound E in the same units, so the true value lies in
// [(V-E)*2^-W, (V+E)*2^-W]. Directed results round the matching end.
// ---------------------------------------------------------------------------

namespace {

struct Fx {
    mpz_class v;
    long err;  // absolute error bound, units of 2^-W
};

struct Ln2Entry {
    mpz_class v;  // floor-ish of ln2 * 2^W
    long err;     // v <= ln2*2^W < v + err
};

const Ln2Entry& ln2_fixed(long W) {
    static std::map<long, Ln2Entry>* cache = new std::map<long, Ln2Entry>();
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache->find(W);
    if (it != cache->end()) return it->second;
    // ln 2 = 2 atanh(1/3); all truncations round down, so acc <= ln2*2^Wg.
    long Wg = W + 32;
    mpz_class p = (mpz_class(1) << Wg) / 3;
    mpz_class acc = 0;
    long terms = 0;
    for (unsigned long i = 0; p != 0; i++) {
        acc += p / (2 * i + 1);
        p /= 9;
        terms++;
    }
    acc <<= 1;
    // Under-count: < 4*terms + 8 units at Wg, far below 1 unit at W after the
    // 32-bit shift; 1 more unit for the shift truncation.
    mpz_class v = acc >> 32;
    (void)terms;
    auto [pos, ok] = cache->emplace(W, Ln2Entry{v, 4});
    return pos->second;
}

// x as fixed point at scale 2^-W, truncated toward zero.
std::optional<mpz_class> to_fixed(const BigReal& x, long W, bool* dropped) {
    if (x.is_zero()) {
        if (dropped) *dropped = false;
        return mpz_class(0);
    }
    mpz_class shift = x.exponent() + W;
    if (shift >= 0) {
        if (shift > kExactAlignCap) return std::nullopt;
        mpz_class m = x.mantissa() << shift.get_ui();
        if (dropped) *dropped = false;
        return x.sign() < 0 ? mpz_class(-m) : m;
    }
    mpz_class s = -shift;
    if (s > kExactAlignCap) {
        if (dropped) *dropped = true;
        return mpz_class(0);
    }
    mpz_class q = x.mantissa() >> s.get_ui();
    if (dropped) *dropped = (q << s.get_ui()) != x.mantissa();
    return x.sign() < 0 ? mpz_class(-q) : q;
}

BigReal finish(const Fx& f, long W, const mpz_class& pow2_shift, long prec, Round mode) {
    switch (mode) {
        case Round::Down:
            return BigReal::from_mpz(f.v - f.err).mul_pow2(pow2_shift - W).rounded(prec, Round::Down);
        case Round::Up:
            return BigReal::from_mpz(f.v + f.err).mul_pow2(pow2_shift - W).rounded(prec, Round::Up);
        case Round::Nearest:
            return BigReal::from_mpz(f.v).mul_pow2(pow2_shift - W).rounded(prec, Round::Nearest);
    }
    return BigReal();
}

// e^r in fixed point at W for |r| <= 0.36, with r's own error <= r_err units.
Fx exp_series(const mpz_class& r_fx, long r_err, long W) {
    mpz_class term = mpz_class(1) << W;
    mpz_class acc = term;
    long terms = 0;
    for (unsigned long i = 1; term != 0 && i < 100000; i++) {
        term = (term * r_fx) >> W;
        mpz_class t2;
        mpz_tdiv_q_ui(t2.get_mpz_t(), term.get_mpz_t(), i);
        term = t2;
        acc += term;
        terms++;
    }
    // ~3 truncation units per term plus tail, plus d(e^r) <= 2 dr.
    return Fx{acc, 4 * terms + 16 + 2 * r_err};
}

} // namespace

BigReal ln2_dir(long prec, Round mode) {
    long W = prec + 32;
    const Ln2Entry& e = ln2_fixed(W);
    return finish(Fx{e.v, e.err}, W, 0, prec, mode);
}

BigReal exp_dir(const BigReal& x, long prec, Round mode) {
    if (x.is_zero()) return BigReal(1);
    long W = prec + 64;
    mpz_class me = x.msb_exp();
    if (me > kExpArgBits)
        throw RepresentabilityError("exp argument too large for plain evaluation");
    if (me < -W) {
        // e^x = 1 + t with |t| < 2^(-W+1).
        return round_with_tail(BigReal(1), prec, mode, x.sign(), mpz_class(-W));
    }
    long kbits = std::max(0L, mpz_to_long_clamped(me, kExpArgBits));
    long Wk = W + kbits + 8;
    const Ln2Entry& L = ln2_fixed(Wk);
    auto xf_opt = to_fixed(x, Wk, nullptr);
    if (!xf_opt) throw RepresentabilityError("exp argument out of fixed-point range");
    mpz_class xf = *xf_opt;
    mpz_class k;
    {
        mpz_class num = xf + (L.v >> 1);
        mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), L.v.get_mpz_t());
    }
    mpz_class r_fx_k = xf - k * L.v;
    // |k| <= 2^(kbits+2); k * L.err at scale Wk is < 1 unit at W thanks to the
    // kbits+8 extra bits. Downshift adds one more truncation unit.
    mpz_class r_fx = r_fx_k >> (Wk - W);
    Fx f = exp_series(r_fx, 8, W);
    return finish(f, W, k, prec, mode);
}

BigReal expm1_dir(const BigReal& x, long prec, Round mode) {
    if (x.is_zero()) return BigReal();
    mpz_class me = x.msb_exp();
    if (me >= 0) {
        // |x| >= 1/2: no damaging cancellation in e^x - 1.
        BigReal lo = BigReal::sub(exp_dir(x, prec + 8, Round::Down), BigReal(1), prec + 8, Round::Down);
        BigReal hi = BigReal::sub(exp_dir(x, prec + 8, Round::Up), BigReal(1), prec + 8, Round::Up);
        switch (mode) {
            case Round::Down: return lo.rounded(prec, Round::Down);
            case Round::Up: return hi.rounded(prec, Round::Up);
            case Round::Nearest:
                return BigReal::add(lo, hi, prec + 2, Round::Nearest).mul_pow2(-1).rounded(prec, Round::Nearest);
        }
    }
    // expm1(x) = x * T(x), T = sum_{i>=0} x^i/(i+1)! in [0.6, 1.4], so the
    // result stays relatively accurate however tiny x is.
    long W = prec + 64;
    mpz_class T_acc;
    long T_err;
    if (me < -W) {
        T_acc = mpz_class(1) << W;
        T_err = 4;
    } else {
        auto xf_opt = to_fixed(x, W, nullptr);
        if (!xf_opt) throw RepresentabilityError("expm1 argument out of range");
        mpz_class xf = *xf_opt;
        mpz_class term = mpz_class(1) << W;
        T_acc = 0;
        long terms = 0;
        for (unsigned long i = 0; term != 0 && i < 100000; i++) {
            T_acc += term;
            term = (term * xf) >> W;
            mpz_class t2;
            mpz_tdiv_q_ui(t2.get_mpz_t(), term.get_mpz_t(), i + 2);
            term = t2;
            terms++;
        }
        T_err = 4 * terms + 16;
    }
    BigReal T_lo = BigReal::from_mpz(T_acc - T_err).mul_pow2(-W);
    BigReal T_hi = BigReal::from_mpz(T_acc + T_err).mul_pow2(-W);
    BigReal a = BigReal::mul(x, x.sign() > 0 ? T_lo : T_hi, prec, Round::Down);
    BigReal b = BigReal::mul(x, x.sign() > 0 ? T_hi : T_lo, prec, Round::Up);
    switch (mode) {
        case Round::Down: return a;
        case Round::Up: return b;
        case Round::Nearest:
            return BigReal::add(a, b, prec + 2, Round::Nearest).mul_pow2(-1).rounded(prec, Round::Nearest);
    }
    return a;
}

namespace {

// ln t for the normalized mantissa t in (2/3, 4/3], fixed point at W.
Fx ln_normalized(const mpz_class& t_fx, long W) {
    mpz_class one = mpz_class(1) << W;
    mpz_class num = (t_fx - one) << W;
    mpz_class den = t_fx + one;
    mpz_class u = num / den;  // |u| <= 1/5
    mpz_class u2 = (u * u) >> W;
    mpz_class p = u;
    mpz_class acc = 0;
    long terms = 0;
    for (unsigned long i = 0; p != 0 && i < 100000; i++) {
        mpz_class t2;
        mpz_tdiv_q_ui(t2.get_mpz_t(), p.get_mpz_t(), 2 * i + 1);
        acc += t2;
        p = (p * u2) >> W;
        terms++;
    }
    acc <<= 1;
    return Fx{acc, 8 * terms + 32};
}

} // namespace

BigReal ln_dir(const BigReal& x, long prec, Round mode) {
    if (x.sign() <= 0) throw DomainError("ln of nonpositive value");
    long W = prec + 64;
    long L = static_cast<long>(x.mantissa_bits());
    // x = t * 2^s2 with t = mant/2^(L-1) in [1, 2).
    mpz_class s2 = x.exponent() + (L - 1);
    mpz_class t_fx;
    {
        long shift = W - (L - 1);
        if (shift >= 0) t_fx = x.mantissa() << shift;
        else t_fx = x.mantissa() >> (-shift);
    }
    mpz_class four_thirds = ((mpz_class(1) << W) * 4) / 3;
    if (t_fx > four_thirds) {
        t_fx >>= 1;
        s2 += 1;
    }
    if (abs(s2) > (mpz_class(1) << 20))
        throw RepresentabilityError("ln argument exponent too large");
    Fx lt = ln_normalized(t_fx, W);
    long sbits = std::max(1L, static_cast<long>(mpz_sizeinbase(s2.get_mpz_t(), 2)));
    const Ln2Entry& l2 = ln2_fixed(W + sbits + 8);
    mpz_class sl = (s2 * l2.v) >> (sbits + 8);
    Fx total{lt.v + sl, lt.err + l2.err + 8};
    return finish(total, W, 0, prec, mode);
}

BigReal ln1p_dir(const BigReal& x, long prec, Round mode) {
    if (x.is_zero()) return BigReal();
    mpz_class me = x.msb_exp();
    if (me >= 0) {
        if (x.sign() < 0 && x <= BigReal(-1)) throw DomainError("ln1p of value <= -1");
        BigReal lo = ln_dir(BigReal::add(BigReal(1), x, prec + 16, Round::Down), prec, Round::Down);
        BigReal hi = ln_dir(BigReal::add(BigReal(1), x, prec + 16, Round::Up), prec, Round::Up);
        switch (mode) {
            case Round::Down: return lo;
            case Round::Up: return hi;
            case Round::Nearest:
                return BigReal::add(lo, hi, prec + 2, Round::Nearest).mul_pow2(-1).rounded(prec, Round::Nearest);
        }
    }
    long W = prec + 64;
    if (me < -W) {
        // ln(1+x) = x * (1 + O(x)).
        BigReal one_lo = BigReal::sub(BigReal(1), BigReal::pow2(-W + 2), prec + 8, Round::Down);
        BigReal one_hi = BigReal::add(BigReal(1), BigReal::pow2(-W + 2), prec + 8, Round::Up);
        BigReal a = BigReal::mul(x, x.sign() > 0 ? one_lo : one_hi, prec, Round::Down);
        BigReal b = BigReal::mul(x, x.sign() > 0 ? one_hi : one_lo, prec, Round::Up);
        return mode == Round::Down ? a : mode == Round::Up ? b
             : BigReal::add(a, b, prec, Round::Nearest).mul_pow2(-1).rounded(prec, Round::Nearest);
    }
    // ln(1+x) = 2 atanh(u), u = x/(2+x); |u| <= 1/3 for |x| < 1/2.
    BigReal den = BigReal::add(BigReal(2), x, W + 8, Round::Nearest);
    BigReal u_lo = BigReal::div(x, den, W, Round::Down);
    BigReal u_hi = BigReal::div(x, den, W, Round::Up);
    BigReal pad = BigReal::mul(u_hi.abs(), BigReal::pow2(-W + 4), W, Round::Up);
    u_lo = BigReal::sub(u_lo, pad, W + 4, Round::Down);
    u_hi = BigReal::add(u_hi, pad, W + 4, Round::Up);
    // atanh(u) = u * B(u^2), B = sum (u^2)^i/(2i+1) in [1, 1.2].
    auto B_of = [&](Round dir) {
        auto uf = to_fixed(BigReal::mul(u_hi.abs(), u_hi.abs(), W, Round::Up), W, nullptr);
        mpz_class u2 = uf ? *uf : mpz_class(0);
        mpz_class p = mpz_class(1) << W;
        mpz_class acc = 0;
        long terms = 0;
        for (unsigned long i = 0; p != 0 && i < 100000; i++) {
            mpz_class t2;
            mpz_tdiv_q_ui(t2.get_mpz_t(), p.get_mpz_t(), 2 * i + 1);
            acc += t2;
            p = (p * u2) >> W;
            terms++;
        }
        long E = 4 * terms + 256;  // includes the u_lo/u_hi spread on B
        return dir == Round::Down ? BigReal::from_mpz(acc - E).mul_pow2(-W)
                                  : BigReal::from_mpz(acc + E).mul_pow2(-W);
    };
    BigReal B_lo = B_of(Round::Down), B_hi = B_of(Round::Up);
    BigReal r_lo = BigReal::mul(u_lo, x.sign() > 0 ? B_lo : B_hi, prec + 4, Round::Down).mul_pow2(1);
    BigReal r_hi = BigReal::mul(u_hi, x.sign() > 0 ? B_hi : B_lo, prec + 4, Round::Up).mul_pow2(1);
    switch (mode) {
        case Round::Down: return r_lo.rounded(prec, Round::Down);
        case Round::Up: return r_hi.rounded(prec, Round::Up);
        case Round::Nearest:
            return BigReal::add(r_lo, r_hi, prec + 2, Round::Nearest).mul_pow2(-1).rounded(prec, Round::Nearest);
    }
    return r_lo;
}

BigReal log2_dir(const BigReal& x, long prec, Round mode) {
    if (x.sign() <= 0) throw DomainError("log2 of nonpositive value");
    // Integer part from the msb (exact, any exponent size); fractional part
    // from the normalized mantissa, so huge exponents never hit the kernels.
    mpz_class ip = x.floor_log2_abs();
    long L = static_cast<long>(x.mantissa_bits());
    BigReal t = BigReal::scaled(x.mantissa(), mpz_class(-(L - 1)));  // in [1, 2)
    BigReal I = BigReal::from_mpz(ip);
    if (t == BigReal(1)) return I;
    long wprec = prec + 32;
    BigReal frac_lo = BigReal::div(ln_dir(t, wprec, Round::Down), ln2_dir(wprec, Round::Up), wprec, Round::Down);
    BigReal frac_hi = BigReal::div(ln_dir(t, wprec, Round::Up), ln2_dir(wprec, Round::Down), wprec, Round::Up);
    switch (mode) {
        case Round::Down: return BigReal::add(I, frac_lo, prec, Round::Down);
        case Round::Up: return BigReal::add(I, frac_hi, prec, Round::Up);
        case Round::Nearest: {
            BigReal mid = BigReal::add(frac_lo, frac_hi, wprec, Round::Nearest).mul_pow2(-1);
            return BigReal::add(I, mid, prec, Round::Nearest);
        }
    }
    return I;
}

BigReal exp2_dir(const BigReal& x, long prec, Round mode) {
    if (x.is_zero()) return BigReal(1);
    if (x.is_integer()) {
        auto k = x.to_mpz_exact(kExpArgBits);
        if (!k) throw RepresentabilityError("exp2: integer exponent too large");
        return BigReal::pow2(*k);
    }
    mpz_class me = x.msb_exp();
    if (me > kExpArgBits) throw RepresentabilityError("exp2 argument too large");
    long W = prec + 64;
    if (me < -W) {
        return round_with_tail(BigReal(1), prec, mode, x.sign(), mpz_class(-W));
    }
    BigReal n = x.floor();
    auto nz = n.to_mpz_exact(kExpArgBits);
    if (!nz) throw RepresentabilityError("exp2: argument too large");
    BigReal r = BigReal::sub_exact(x, n);  // in [0, 1)
    long wp = prec + 16;
    BigReal a_lo = BigReal::mul(r, ln2_dir(wp + 16, Round::Down), wp + 16, Round::Down);
    BigReal a_hi = BigReal::mul(r, ln2_dir(wp + 16, Round::Up), wp + 16, Round::Up);
    BigReal e_lo = exp_dir(a_lo, wp, Round::Down).mul_pow2(*nz);
    BigReal e_hi = exp_dir(a_hi, wp, Round::Up).mul_pow2(*nz);
    switch (mode) {
        case Round::Down: return e_lo.rounded(prec, Round::Down);
        case Round::Up: return e_hi.rounded(prec, Round::Up);
        case Round::Nearest:
            return BigReal::add(e_lo, e_hi, prec + 2, Round::Nearest).mul_pow2(-1).rounded(prec, Round::Nearest);
    }
    return e_lo;
}

} // namespace pll
