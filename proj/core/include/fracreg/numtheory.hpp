#pragma once

#include <cstdint>
#include <vector>

namespace fracreg {

// Ascending list of all primes in [2, limit].  limit < 2 is an error.
std::vector<std::int64_t> sieve_primes(std::int64_t limit);

bool is_prime(std::int64_t n);

// Long Weierstrass model  y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6.
// The constructor rejects singular models (zero global discriminant).
struct WeierstrassCurve {
    WeierstrassCurve(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                     std::int64_t a4, std::int64_t a6);

    std::int64_t discriminant() const;
    bool good_reduction(std::int64_t p) const { return discriminant() % p != 0; }

    std::int64_t a1, a2, a3, a4, a6;
};

// #E(F_p) including the point at infinity.  At primes of bad reduction the
// singular point is excluded, so the count is #E_ns(F_p).  The quadratic in y
// is solved with a per-prime table of square counts, O(p) overall.
std::int64_t curve_point_count(const WeierstrassCurve& curve, std::int64_t p);

// a_p = p + 1 - #E(F_p) at good primes, a_p = p - #E_ns(F_p) at bad ones
// (the local-factor convention: +-1 multiplicative, 0 additive).
std::int64_t curve_ap(const WeierstrassCurve& curve, std::int64_t p);

// table[n] = sigma_{k-1}(n) = sum of d^(k-1) over divisors d of n, n = 1..N.
// Sieved over multiples in O(N log N); any intermediate overflow of int64
// throws std::overflow_error rather than wrapping.  Requires k_minus_1 <= 7
// and N <= 2^20 (index 0 of the result is unused).
std::vector<std::int64_t> divisor_power_sum_table(int k_minus_1, std::int64_t N);

// Integer polynomial in two variables, stored as monomials c * x^i * y^j.
struct BivariatePolynomial {
    struct Monomial {
        std::int64_t coeff;
        int xexp;
        int yexp;
    };
    std::vector<Monomial> monomials;

    std::int64_t eval(std::int64_t x, std::int64_t y) const;

    // x^4 + y^4 - 6 x^2 y^2, the harmonic quartic driving the weight-5 theta.
    static BivariatePolynomial harmonic_quartic();
};

// Sum of P(n, m) over every integer pair with n^2 + m^2 = k (all signs and
// orders).  Zero when k has no two-square representation.
std::int64_t two_square_weighted_sum(std::int64_t k, const BivariatePolynomial& P);

}  // namespace fracreg
