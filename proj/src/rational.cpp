#include "pll/rational.hpp"

#include <sstream>

namespace pll {

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational");
    auto slash = text.find('/');
    auto check_int = [&](const std::string& s) {
        if (s.empty()) throw ParseError("bad rational: " + text);
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw ParseError("bad rational: " + text);
        for (; i < s.size(); i++)
            if (s[i] < '0' || s[i] > '9') throw ParseError("bad rational: " + text);
    };
    if (slash == std::string::npos) {
        check_int(text);
        return Rational(mpq_class(mpz_class(text, 10)));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    check_int(num);
    check_int(den);
    mpz_class d(den, 10);
    if (d == 0) throw ParseError("zero denominator: " + text);
    mpq_class q(mpz_class(num, 10), d);
    q.canonicalize();
    return Rational(q);
}

Rational Rational::mul_pow2(long k) const {
    mpq_class r = v_;
    if (k >= 0) {
        mpz_class num = r.get_num() << k;
        r = mpq_class(num, r.get_den());
    } else {
        mpz_class den = r.get_den() << (-k);
        r = mpq_class(r.get_num(), den);
    }
    r.canonicalize();
    return Rational(r);
}

std::string Rational::str() const {
    std::ostringstream out;
    out << v_.get_num().get_str();
    if (v_.get_den() != 1) out << '/' << v_.get_den().get_str();
    return out.str();
}

} // namespace pll
