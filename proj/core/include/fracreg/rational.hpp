#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace fracreg {

// Exact rational arithmetic on int64 numerator/denominator.  Used wherever
// exponent identities must hold exactly (predictions, spectrum tables);
// intermediate products go through __int128 so normalization cannot wrap.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);

    static Rational parse(const std::string& text);  // "p/q" or "p"
    // Nearest rational with denominator <= max_den (continued fractions).
    static Rational approximate(double value, std::int64_t max_den = 64);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    bool is_integer() const { return den_ == 1; }
    Rational floor() const;
    Rational frac() const { return *this - floor(); }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

private:
    void normalize();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace fracreg
