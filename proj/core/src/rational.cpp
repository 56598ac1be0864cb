#include "cml/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "cml/errors.hpp"

namespace cml {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long narrow(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<long long>(v);
}

} // namespace

Rational Rational::make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
}

Rational::Rational(long long n, long long d) {
    *this = make(n, d);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return make((__int128)num_ * o.den_ + (__int128)o.num_ * den_, (__int128)den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return make((__int128)num_ * o.den_ - (__int128)o.num_ * den_, (__int128)den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return make((__int128)num_ * o.num_, (__int128)den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return make((__int128)num_ * o.den_, (__int128)den_ * o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
}

bool Rational::operator<=(const Rational& o) const {
    return (__int128)num_ * o.den_ <= (__int128)o.num_ * den_;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    size_t pos = 0;
    bool neg = false;
    if (text[pos] == '-') {
        neg = true;
        ++pos;
    }
    auto digits = [&](long long& out) {
        if (pos >= text.size() || !isdigit(static_cast<unsigned char>(text[pos])))
            throw InputError("bad rational literal: " + text);
        out = 0;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
            out = out * 10 + (text[pos] - '0');
            if (out < 0) throw std::overflow_error("rational literal overflow: " + text);
            ++pos;
        }
    };
    long long ip = 0;
    digits(ip);
    if (pos == text.size()) return Rational(neg ? -ip : ip);
    if (text[pos] == '/') {
        ++pos;
        long long q = 0;
        digits(q);
        if (pos != text.size()) throw InputError("bad rational literal: " + text);
        if (q == 0) throw InputError("zero denominator in: " + text);
        return Rational(neg ? -ip : ip, q);
    }
    if (text[pos] == '.') {
        ++pos;
        long long frac = 0;
        long long scale = 1;
        if (pos >= text.size()) throw InputError("bad rational literal: " + text);
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
            frac = frac * 10 + (text[pos] - '0');
            scale *= 10;
            if (frac < 0 || scale < 0) throw std::overflow_error("rational literal overflow: " + text);
            ++pos;
        }
        if (pos != text.size()) throw InputError("bad rational literal: " + text);
        Rational r = Rational(ip) + Rational(frac, scale);
        return neg ? -r : r;
    }
    throw InputError("bad rational literal: " + text);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace cml
