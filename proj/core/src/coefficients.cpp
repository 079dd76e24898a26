#include "fracreg/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fracreg/io.hpp"
#include "fracreg/numtheory.hpp"

namespace fracreg {

namespace {

constexpr std::int64_t kEllipticCap = std::int64_t(1) << 17;
constexpr std::int64_t kLatticeCap = std::int64_t(1) << 20;

std::int64_t isqrt_floor(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

bool CoefficientSequence::all_real() const {
    if (a0.imag() != 0.0) return false;
    for (const auto& t : terms) {
        if (t.imag() != 0.0) return false;
    }
    return true;
}

void CoefficientSequence::finalize() {
    if (terms.size() < 2) throw std::invalid_argument("CoefficientSequence: needs N >= 1");
    terms[0] = 0.0;
    max_abs_ = std::abs(a0);
    for (const auto& t : terms) {
        if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
            throw std::invalid_argument("CoefficientSequence: non-finite term");
        }
        max_abs_ = std::max(max_abs_, std::abs(t));
    }
    if (is_cusp_form) {
        if (a0 != std::complex<double>(0.0, 0.0)) {
            throw std::invalid_argument("CoefficientSequence: cusp form with a0 != 0");
        }
        if (growth_exponent != weight / Rational(2)) {
            throw std::invalid_argument("CoefficientSequence: cusp form needs gamma = r/2");
        }
    }
}

std::vector<std::int64_t> hecke_extend(const std::map<std::int64_t, std::int64_t>& prime_values,
                                       const std::set<std::int64_t>& bad_primes, int weight,
                                       std::int64_t N) {
    if (N < 1) throw std::invalid_argument("hecke_extend: N must be >= 1");

    // smallest prime factor sieve drives the decomposition n = p^e * m
    std::vector<std::int32_t> spf(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t i = 2; i <= N; ++i) {
        if (spf[static_cast<std::size_t>(i)] != 0) continue;
        for (std::int64_t m = i; m <= N; m += i) {
            if (spf[static_cast<std::size_t>(m)] == 0) {
                spf[static_cast<std::size_t>(m)] = static_cast<std::int32_t>(i);
            }
        }
    }

    std::vector<std::int64_t> a(static_cast<std::size_t>(N) + 1, 0);
    a[1] = 1;
    std::int64_t pkm1 = 1;  // p^{weight-1}, recomputed per prime below
    for (std::int64_t n = 2; n <= N; ++n) {
        const std::int64_t p = spf[static_cast<std::size_t>(n)];
        std::int64_t m = n;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (m > 1) {
            a[static_cast<std::size_t>(n)] =
                a[static_cast<std::size_t>(m)] * a[static_cast<std::size_t>(n / m)];
            continue;
        }
        auto it = prime_values.find(p);
        if (it == prime_values.end()) {
            throw std::invalid_argument("hecke_extend: missing a_p for p = " + std::to_string(p));
        }
        const std::int64_t ap = it->second;
        if (e == 1) {
            a[static_cast<std::size_t>(n)] = ap;
        } else if (bad_primes.count(p)) {
            std::int64_t v = 1;
            for (int i = 0; i < e; ++i) v *= ap;
            a[static_cast<std::size_t>(n)] = v;
        } else {
            pkm1 = 1;
            for (int i = 0; i < weight - 1; ++i) pkm1 *= p;
            a[static_cast<std::size_t>(n)] =
                ap * a[static_cast<std::size_t>(n / p)] - pkm1 * a[static_cast<std::size_t>(n / (p * p))];
        }
    }
    return a;
}

SequencePtr elliptic14_sequence(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("elliptic14_sequence: N must be >= 1");
    if (N > kEllipticCap) {
        throw ResourceError("elliptic14_sequence: N exceeds the 2^17 point-counting cap");
    }
    const WeierstrassCurve curve(1, 0, 1, 4, -6);

    std::map<std::int64_t, std::int64_t> prime_values;
    std::set<std::int64_t> bad;
    if (N >= 2) {
        const auto primes = sieve_primes(N);
        std::vector<std::int64_t> ap(primes.size());
        const unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
        if (hw == 1 || primes.size() < 64) {
            for (std::size_t i = 0; i < primes.size(); ++i) ap[i] = curve_ap(curve, primes[i]);
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (primes.size() + hw - 1) / hw;
            for (unsigned t = 0; t < hw; ++t) {
                std::size_t lo = t * chunk, hi = std::min(primes.size(), lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back([&, lo, hi] {
                    for (std::size_t i = lo; i < hi; ++i) ap[i] = curve_ap(curve, primes[i]);
                });
            }
            for (auto& th : pool) th.join();
        }
        for (std::size_t i = 0; i < primes.size(); ++i) {
            prime_values[primes[i]] = ap[i];
            if (!curve.good_reduction(primes[i])) bad.insert(primes[i]);
        }
    }

    auto seq = std::make_shared<CoefficientSequence>();
    seq->name = "elliptic14";
    seq->terms.assign(static_cast<std::size_t>(N) + 1, 0.0);
    if (N >= 2) {
        const auto a = hecke_extend(prime_values, bad, 2, N);
        for (std::int64_t n = 1; n <= N; ++n) {
            seq->terms[static_cast<std::size_t>(n)] = static_cast<double>(a[static_cast<std::size_t>(n)]);
        }
    } else {
        seq->terms[1] = 1.0;
    }
    seq->weight = Rational(2);
    seq->growth_exponent = Rational(1);
    seq->is_cusp_form = true;
    seq->cusp_rule = CuspRule::AllCuspidal;
    seq->convergence_threshold = 1.5;
    seq->finalize();
    return seq;
}

namespace {

// c_n of the eta-type theta: +1 at n = +-1, -1 at n = +-5 (mod 12), else 0.
int theta12_character(std::int64_t n) {
    switch (n % 12) {
        case 1:
        case 11:
            return 1;
        case 5:
        case 7:
            return -1;
        default:
            return 0;
    }
}

}  // namespace

SequencePtr theta12_sequence(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("theta12_sequence: N must be >= 1");
    auto seq = std::make_shared<CoefficientSequence>();
    seq->name = "theta12";
    seq->terms.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (std::int64_t n = 1; n * n <= N; ++n) {
        seq->terms[static_cast<std::size_t>(n * n)] = theta12_character(n);
    }
    seq->weight = Rational(1, 2);
    seq->growth_exponent = Rational(1, 4);
    seq->is_cusp_form = true;
    seq->cusp_rule = CuspRule::AllCuspidal;
    seq->convergence_threshold = 0.25;
    seq->finalize();
    return seq;
}

SequencePtr jacobi_theta_sequence(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("jacobi_theta_sequence: N must be >= 1");
    auto seq = std::make_shared<CoefficientSequence>();
    seq->name = "jacobi_theta";
    seq->a0 = 1.0;
    seq->terms.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (std::int64_t n = 1; n * n <= N; ++n) {
        seq->terms[static_cast<std::size_t>(n * n)] = 2.0;
    }
    seq->weight = Rational(1, 2);
    seq->growth_exponent = Rational(1, 4);
    seq->is_cusp_form = false;
    seq->cusp_rule = CuspRule::Gamma04Theta;
    seq->convergence_threshold = 0.5;
    seq->finalize();
    return seq;
}

SequencePtr harmonic_theta_sequence(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("harmonic_theta_sequence: N must be >= 1");
    if (N > kLatticeCap) {
        throw ResourceError("harmonic_theta_sequence: N exceeds the 2^20 lattice cap");
    }
    auto seq = std::make_shared<CoefficientSequence>();
    seq->name = "harmonic_theta";
    seq->terms.assign(static_cast<std::size_t>(N) + 1, 0.0);
    // One pass over lattice points with n^2 + m^2 <= N; P(n, m) in int64.
    const std::int64_t L = isqrt_floor(N);
    std::vector<std::int64_t> acc(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t n = -L; n <= L; ++n) {
        const std::int64_t n2 = n * n;
        const std::int64_t n4 = n2 * n2;
        const std::int64_t Lm = isqrt_floor(N - n2);
        for (std::int64_t m = -Lm; m <= Lm; ++m) {
            const std::int64_t k = n2 + m * m;
            if (k == 0) continue;
            const std::int64_t m2 = m * m;
            acc[static_cast<std::size_t>(k)] += n4 + m2 * m2 - 6 * n2 * m2;
        }
    }
    for (std::int64_t k = 1; k <= N; ++k) {
        seq->terms[static_cast<std::size_t>(k)] = static_cast<double>(acc[static_cast<std::size_t>(k)]);
    }
    seq->weight = Rational(5);
    seq->growth_exponent = Rational(5, 2);
    seq->is_cusp_form = true;
    seq->cusp_rule = CuspRule::AllCuspidal;
    seq->convergence_threshold = 3.0;
    seq->finalize();
    return seq;
}

SequencePtr eisenstein_sequence(int k, std::int64_t N) {
    if (k % 2 != 0 || k < 4 || k > 8) {
        throw std::invalid_argument("eisenstein_sequence: k must be even and in [4, 8]");
    }
    if (N < 1) throw std::invalid_argument("eisenstein_sequence: N must be >= 1");
    const auto sigma = divisor_power_sum_table(k - 1, N);
    auto seq = std::make_shared<CoefficientSequence>();
    seq->name = "eisenstein" + std::to_string(k);
    seq->terms.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (std::int64_t n = 1; n <= N; ++n) {
        seq->terms[static_cast<std::size_t>(n)] = static_cast<double>(sigma[static_cast<std::size_t>(n)]);
    }
    // Constant term -B_k/(2k) matching coefficients sigma_{k-1}(n).
    switch (k) {
        case 4: seq->a0 = 1.0 / 240.0; break;
        case 6: seq->a0 = -1.0 / 504.0; break;
        case 8: seq->a0 = 1.0 / 480.0; break;
    }
    seq->weight = Rational(k);
    seq->growth_exponent = Rational(k);
    seq->is_cusp_form = false;
    seq->cusp_rule = CuspRule::FullModularNoncuspidal;
    seq->convergence_threshold = static_cast<double>(k);
    seq->finalize();
    return seq;
}

SequencePtr built_in_sequence(const std::string& name, std::int64_t N) {
    if (name == "elliptic14") return elliptic14_sequence(N);
    if (name == "theta12") return theta12_sequence(N);
    if (name == "jacobi_theta") return jacobi_theta_sequence(N);
    if (name == "harmonic_theta") return harmonic_theta_sequence(N);
    if (name == "eisenstein4") return eisenstein_sequence(4, N);
    if (name == "eisenstein6") return eisenstein_sequence(6, N);
    if (name == "eisenstein8") return eisenstein_sequence(8, N);
    throw std::invalid_argument("unknown sequence '" + name + "'");
}

bool is_built_in_sequence(const std::string& name) {
    static const char* names[] = {"elliptic14",     "theta12",     "jacobi_theta",
                                  "harmonic_theta", "eisenstein4", "eisenstein6",
                                  "eisenstein8"};
    return std::find_if(std::begin(names), std::end(names),
                        [&](const char* n) { return name == n; }) != std::end(names);
}

CuspBehavior classify_rational_point(const CoefficientSequence& seq, std::int64_t p,
                                     std::int64_t q) {
    if (q < 1) throw std::invalid_argument("classify_rational_point: q must be positive");
    if (std::gcd(std::abs(p), q) != 1) {
        throw std::invalid_argument("classify_rational_point: fraction is not reduced");
    }
    bool cuspidal = false;
    switch (seq.cusp_rule) {
        case CuspRule::AllCuspidal:
            cuspidal = true;
            break;
        case CuspRule::Gamma04Theta:
            // not cuspidal iff q odd or 4 | q; cuspidal iff q = 2 (mod 4)
            cuspidal = (q % 4 == 2);
            break;
        case CuspRule::FullModularNoncuspidal:
            cuspidal = false;
            break;
    }
    return CuspBehavior{cuspidal ? CuspBehavior::Kind::Cuspidal : CuspBehavior::Kind::NotCuspidal,
                        cuspidal};
}

void write_coefficient_cache(const CoefficientSequence& seq, const std::string& path) {
    std::string out;
    out.reserve(static_cast<std::size_t>(seq.length()) * 24 + 64);
    out += "# " + seq.name + " " + format_double(seq.weight.to_double()) + " " +
           format_double(seq.growth_exponent.to_double()) + " " +
           (seq.is_cusp_form ? "1" : "0") + " " + std::to_string(seq.length()) + "\n";
    auto row = [&out](std::int64_t n, std::complex<double> v) {
        out += std::to_string(n);
        out += '\t';
        out += format_double(v.real());
        out += '\t';
        out += format_double(v.imag());
        out += '\n';
    };
    if (seq.a0 != std::complex<double>(0.0, 0.0)) row(0, seq.a0);
    for (std::int64_t n = 1; n <= seq.length(); ++n) row(n, seq.at(n));
    atomic_write_file(path, out);
}

SequencePtr read_coefficient_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient cache '" + path + "'");
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string hash, name;
    double weight = 0, gamma = 0;
    int cusp = 0;
    std::int64_t N = 0;
    if (!(hs >> hash >> name >> weight >> gamma >> cusp >> N) || hash != "#") {
        throw std::runtime_error("malformed coefficient cache header in '" + path + "'");
    }
    auto seq = std::make_shared<CoefficientSequence>();
    seq->name = name;
    seq->terms.assign(static_cast<std::size_t>(N) + 1, 0.0);
    std::int64_t n = 0;
    double re = 0, im = 0;
    while (in >> n >> re >> im) {
        if (n < 0 || n > N) throw std::runtime_error("coefficient cache index out of range");
        if (n == 0) {
            seq->a0 = {re, im};
        } else {
            seq->terms[static_cast<std::size_t>(n)] = {re, im};
        }
    }
    seq->weight = Rational::approximate(weight);
    seq->growth_exponent = Rational::approximate(gamma);
    seq->is_cusp_form = cusp != 0;
    if (is_built_in_sequence(name)) {
        // restore the metadata the cache does not carry
        auto ref = built_in_sequence(name, 1);
        seq->cusp_rule = ref->cusp_rule;
        seq->convergence_threshold = ref->convergence_threshold;
        seq->weight = ref->weight;
        seq->growth_exponent = ref->growth_exponent;
    } else {
        seq->cusp_rule = seq->is_cusp_form ? CuspRule::AllCuspidal : CuspRule::FullModularNoncuspidal;
        seq->convergence_threshold = gamma;
    }
    seq->finalize();
    return seq;
}

}  // namespace fracreg
