#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fracreg/rational.hpp"

namespace fracreg {

// Thrown when a request exceeds a materialization cap or a materialized
// length; the message carries what is achievable instead.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// How vertical limits at rational points behave for the underlying form.
enum class CuspRule {
    AllCuspidal,             // cusp forms: exponential decay at every p/q
    Gamma04Theta,            // theta on Gamma_0(4): cuspidal iff q = 2 (mod 4)
    FullModularNoncuspidal,  // Eisenstein: never cuspidal at p/q
};

struct CuspBehavior {
    enum class Kind { Cuspidal, NotCuspidal };
    Kind kind;
    bool decay_constant_expected;  // true iff Cuspidal
};

// A finitely materialized arithmetic coefficient sequence with its modular
// metadata.  terms[n] = a_n for n in [0, N]; terms[0] is always zero and the
// constant term lives in a0.  All built-in examples are one-sided (a_n = 0
// for n < 0).
struct CoefficientSequence {
    std::string name;
    std::complex<double> a0{0.0, 0.0};
    std::vector<std::complex<double>> terms;  // index n, size N+1
    Rational weight{0};                       // modular weight r
    Rational growth_exponent{0};              // partial-sum exponent gamma
    bool is_cusp_form = false;
    CuspRule cusp_rule = CuspRule::AllCuspidal;
    double convergence_threshold = 0.0;  // min alpha for absolute convergence

    std::int64_t length() const { return static_cast<std::int64_t>(terms.size()) - 1; }
    std::complex<double> at(std::int64_t n) const { return terms[static_cast<std::size_t>(n)]; }
    bool all_real() const;
    double max_abs() const { return max_abs_; }

    // Checks the declared invariants (finite terms, cusp form => a0 = 0 and
    // gamma = r/2) and caches max |a_n|.  Called by every generator.
    void finalize();

private:
    double max_abs_ = 0.0;
};

using SequencePtr = std::shared_ptr<const CoefficientSequence>;

// Hecke multiplicativity: a_1 = 1, a_mn = a_m a_n for coprime m, n;
// a_{p^{j+1}} = a_p a_{p^j} - p^{weight-1} a_{p^{j-1}} at good primes and
// a_{p^j} = (a_p)^j at bad ones.  prime_values must cover every prime <= N.
std::vector<std::int64_t> hecke_extend(const std::map<std::int64_t, std::int64_t>& prime_values,
                                       const std::set<std::int64_t>& bad_primes, int weight,
                                       std::int64_t N);

// The five built-in sequences.
SequencePtr elliptic14_sequence(std::int64_t N);      // weight 2 newform, N <= 2^17
SequencePtr theta12_sequence(std::int64_t N);         // weight 1/2 eta-type cusp form
SequencePtr jacobi_theta_sequence(std::int64_t N);    // weight 1/2, not a cusp form
SequencePtr harmonic_theta_sequence(std::int64_t N);  // weight 5 cusp form, N <= 2^20
SequencePtr eisenstein_sequence(int k, std::int64_t N);  // sigma_{k-1}, k in {4, 6, 8}

// Lookup by the names used in caches and on the CLI ("elliptic14", "theta12",
// "jacobi_theta", "harmonic_theta", "eisenstein4/6/8").
SequencePtr built_in_sequence(const std::string& name, std::int64_t N);
bool is_built_in_sequence(const std::string& name);

// Cuspidal/non-cuspidal classification of the reduced fraction p/q under the
// sequence's cusp rule.
CuspBehavior classify_rational_point(const CoefficientSequence& seq, std::int64_t p,
                                     std::int64_t q);

// Plain-text cache: header "# name weight gamma cusp_form N", then one
// "n<TAB>re<TAB>im" record per index (n = 0 included only when a0 != 0).
// Byte-stable across runs.
void write_coefficient_cache(const CoefficientSequence& seq, const std::string& path);
SequencePtr read_coefficient_cache(const std::string& path);

}  // namespace fracreg
