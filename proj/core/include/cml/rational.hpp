#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace cml {

// Exact rational number on 64-bit numerator/denominator.
// Always normalized: denominator positive, gcd(|num|, den) == 1.
// Operations compute through 128-bit intermediates and throw
// std::overflow_error if a reduced result does not fit in 64 bits.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // "p", "-p/q" or a plain decimal like "0.25".
    static Rational parse(const std::string& text);
    std::string str() const;

  private:
    static Rational make(__int128 n, __int128 d);
    long long num_;
    long long den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace cml
