#include "folim/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace folim {

mpz_class Rational::toMpz(long long v) {
    // mpz_class has no long long constructor on LP64; go through string for safety.
    return mpz_class(std::to_string(v));
}

Rational::Rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(toMpz(num), toMpz(den));
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    try {
        mpq_class q(text);
        q.canonicalize();
        return Rational(q);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    }
}

Rational Rational::power(long long base, int exponent) {
    if (exponent < 0) throw std::invalid_argument("Rational::power: negative exponent");
    mpz_class b = toMpz(base), r = 1;
    for (int i = 0; i < exponent; ++i) r *= b;
    return Rational(mpq_class(r));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.isZero()) throw std::invalid_argument("Rational: division by zero");
    return Rational(mpq_class(q_ / o.q_));
}

Rational Rational::pow(int e) const {
    if (e < 0) throw std::invalid_argument("Rational::pow: negative exponent");
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace folim
