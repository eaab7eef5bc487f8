#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace folim {

/// Exact rational number. All Stone pairings, spectra and statistic masses
/// are carried as values of this type so that identity checks are exact.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(static_cast<long>(n)) {}
    Rational(long long n) : q_(toMpz(n)) {}
    Rational(int n) : q_(n) {}
    Rational(long long num, long long den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
    static Rational parse(const std::string& text);

    /// n^e as an exact rational. e >= 0.
    static Rational power(long long base, int exponent);

    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational pow(int e) const;

    bool isZero() const { return q_ == 0; }
    double toDouble() const { return q_.get_d(); }

    /// "p/q" in lowest terms, or "p" when the denominator is 1.
    std::string str() const;

    const mpq_class& raw() const { return q_; }

private:
    static mpz_class toMpz(long long v);
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace folim
