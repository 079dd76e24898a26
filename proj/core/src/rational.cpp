#include "fracreg/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fracreg {

namespace {

std::int64_t narrow128(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error(std::string("rational overflow in ") + what);
    }
    return static_cast<std::int64_t>(v);
}

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

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    std::int64_t g = std::gcd(std::llabs(num_), den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Rational Rational::parse(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            std::int64_t n = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return Rational(n);
        }
        std::size_t used_n = 0, used_d = 0;
        std::int64_t n = std::stoll(text.substr(0, slash), &used_n);
        std::int64_t d = std::stoll(text.substr(slash + 1), &used_d);
        if (used_n != slash || used_d != text.size() - slash - 1) {
            throw std::invalid_argument(text);
        }
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse rational '" + text + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("rational literal out of range '" + text + "'");
    }
}

Rational Rational::approximate(double value, std::int64_t max_den) {
    if (!std::isfinite(value)) throw std::invalid_argument("cannot approximate non-finite value");
    // Stern-Brocot / continued fraction expansion.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = value;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(x);
        if (fl > 1e17 || fl < -1e17) break;
        std::int64_t a = static_cast<std::int64_t>(fl);
        std::int64_t p2 = narrow128(static_cast<__int128>(a) * p1 + p0, "approximate");
        std::int64_t q2 = narrow128(static_cast<__int128>(a) * q1 + q0, "approximate");
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = x - fl;
        if (rem < 1e-12) break;
        x = 1.0 / rem;
    }
    if (q1 == 0) return Rational(p0, q0);
    return Rational(p1, q1);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
}

Rational Rational::operator+(const Rational& o) const {
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    __int128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    return Rational(narrow128(n, "+"), narrow128(d, "+"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    __int128 n = static_cast<__int128>(num_) * o.num_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    __int128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    return Rational(narrow128(n, "*"), narrow128(d, "*"));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace fracreg
