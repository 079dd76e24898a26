#include "fracreg/numtheory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracreg {

namespace {

constexpr std::int64_t kSigmaMaxN = std::int64_t(1) << 20;

std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error(std::string("int64 overflow in ") + what);
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error(std::string("int64 overflow in ") + what);
    }
    return r;
}

std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

std::int64_t isqrt64(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::vector<std::int64_t> sieve_primes(std::int64_t limit) {
    if (limit < 2) throw std::invalid_argument("sieve_primes: limit must be >= 2");
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    std::vector<std::int64_t> primes;
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        primes.push_back(i);
        if (i <= limit / i) {
            for (std::int64_t m = i * i; m <= limit; m += i) {
                composite[static_cast<std::size_t>(m)] = true;
            }
        }
    }
    return primes;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

WeierstrassCurve::WeierstrassCurve(std::int64_t a1_, std::int64_t a2_, std::int64_t a3_,
                                   std::int64_t a4_, std::int64_t a6_)
    : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a6(a6_) {
    if (discriminant() == 0) {
        throw std::invalid_argument("WeierstrassCurve: model is singular (discriminant 0)");
    }
}

std::int64_t WeierstrassCurve::discriminant() const {
    const char* w = "discriminant";
    std::int64_t b2 = checked_add(checked_mul(a1, a1, w), checked_mul(4, a2, w), w);
    std::int64_t b4 = checked_add(checked_mul(2, a4, w), checked_mul(a1, a3, w), w);
    std::int64_t b6 = checked_add(checked_mul(a3, a3, w), checked_mul(4, a6, w), w);
    std::int64_t b8 = checked_mul(a1, checked_mul(a1, a6, w), w);
    b8 = checked_add(b8, checked_mul(4, checked_mul(a2, a6, w), w), w);
    b8 = checked_add(b8, -checked_mul(a1, checked_mul(a3, a4, w), w), w);
    b8 = checked_add(b8, checked_mul(a2, checked_mul(a3, a3, w), w), w);
    b8 = checked_add(b8, -checked_mul(a4, a4, w), w);
    std::int64_t d = -checked_mul(checked_mul(b2, b2, w), b8, w);
    d = checked_add(d, -checked_mul(8, checked_mul(b4, checked_mul(b4, b4, w), w), w), w);
    d = checked_add(d, -checked_mul(27, checked_mul(b6, b6, w), w), w);
    d = checked_add(d, checked_mul(9, checked_mul(b2, checked_mul(b4, b6, w), w), w), w);
    return d;
}

namespace {

// char-2 reduction is enumerated directly (4 affine pairs).
std::int64_t count_mod2(const WeierstrassCurve& c, bool bad) {
    std::int64_t total = 0;
    for (std::int64_t x = 0; x < 2; ++x) {
        for (std::int64_t y = 0; y < 2; ++y) {
            std::int64_t F = mod_norm(y * y + c.a1 * x * y + c.a3 * y -
                                          (x * x * x + c.a2 * x * x + c.a4 * x + c.a6),
                                      2);
            if (F != 0) continue;
            if (bad) {
                std::int64_t Fx = mod_norm(c.a1 * y - (3 * x * x + 2 * c.a2 * x + c.a4), 2);
                std::int64_t Fy = mod_norm(2 * y + c.a1 * x + c.a3, 2);
                if (Fx == 0 && Fy == 0) continue;
            }
            ++total;
        }
    }
    return total + 1;
}

}  // namespace

std::int64_t curve_point_count(const WeierstrassCurve& curve, std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("curve_point_count: p must be prime");
    const bool bad = !curve.good_reduction(p);
    if (p == 2) return count_mod2(curve, bad);

    // Completing the square: (2y + a1 x + a3)^2 = t^2 + 4*rhs(x), so the number
    // of y over x is the number of square roots of D(x), read from one table.
    std::vector<std::int32_t> sqrt_count(static_cast<std::size_t>(p), 0);
    for (std::int64_t y = 0; y < p; ++y) {
        ++sqrt_count[static_cast<std::size_t>((y * y) % p)];
    }

    const std::int64_t a1 = mod_norm(curve.a1, p), a2 = mod_norm(curve.a2, p),
                       a3 = mod_norm(curve.a3, p), a4 = mod_norm(curve.a4, p),
                       a6 = mod_norm(curve.a6, p);
    const std::int64_t inv2 = (p + 1) / 2;  // 2^{-1} mod p for odd p

    std::int64_t total = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        std::int64_t t = (a1 * x + a3) % p;
        std::int64_t x2 = (x * x) % p;
        std::int64_t rhs = ((x2 * x) % p + (a2 * x2) % p + (a4 * x) % p + a6) % p;
        std::int64_t D = (t * t + 4 * rhs) % p;
        std::int64_t n = sqrt_count[static_cast<std::size_t>(D)];
        if (bad && D == 0) {
            // Double root; drop it when it is the singular point.
            std::int64_t y0 = ((p - t) * inv2) % p;
            std::int64_t Fx = mod_norm(a1 * y0 - (3 * x2 + 2 * a2 * x + a4), p);
            if (Fx == 0) n -= 1;
        }
        total += n;
    }
    return total + 1;
}

std::int64_t curve_ap(const WeierstrassCurve& curve, std::int64_t p) {
    std::int64_t count = curve_point_count(curve, p);
    return curve.good_reduction(p) ? p + 1 - count : p - count;
}

std::vector<std::int64_t> divisor_power_sum_table(int k_minus_1, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("divisor_power_sum_table: N must be >= 1");
    if (k_minus_1 < 0 || k_minus_1 > 7) {
        throw std::invalid_argument("divisor_power_sum_table: k-1 must be in [0, 7]");
    }
    if (N > kSigmaMaxN) {
        throw std::invalid_argument("divisor_power_sum_table: N exceeds 2^20 cap");
    }
    std::vector<std::int64_t> table(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t d = 1; d <= N; ++d) {
        std::int64_t pw = 1;
        for (int e = 0; e < k_minus_1; ++e) pw = checked_mul(pw, d, "sigma power");
        for (std::int64_t m = d; m <= N; m += d) {
            auto& slot = table[static_cast<std::size_t>(m)];
            slot = checked_add(slot, pw, "sigma sum");
        }
    }
    return table;
}

std::int64_t BivariatePolynomial::eval(std::int64_t x, std::int64_t y) const {
    std::int64_t total = 0;
    for (const auto& m : monomials) {
        std::int64_t v = m.coeff;
        for (int e = 0; e < m.xexp; ++e) v = checked_mul(v, x, "polynomial eval");
        for (int e = 0; e < m.yexp; ++e) v = checked_mul(v, y, "polynomial eval");
        total = checked_add(total, v, "polynomial eval");
    }
    return total;
}

BivariatePolynomial BivariatePolynomial::harmonic_quartic() {
    return BivariatePolynomial{{{1, 4, 0}, {1, 0, 4}, {-6, 2, 2}}};
}

std::int64_t two_square_weighted_sum(std::int64_t k, const BivariatePolynomial& P) {
    if (k < 1) throw std::invalid_argument("two_square_weighted_sum: k must be >= 1");
    std::int64_t total = 0;
    std::int64_t L = isqrt64(k);
    for (std::int64_t n = -L; n <= L; ++n) {
        std::int64_t rem = k - n * n;
        std::int64_t m = isqrt64(rem);
        if (m * m != rem) continue;
        total = checked_add(total, P.eval(n, m), "two_square sum");
        if (m > 0) total = checked_add(total, P.eval(n, -m), "two_square sum");
    }
    return total;
}

}  // namespace fracreg
