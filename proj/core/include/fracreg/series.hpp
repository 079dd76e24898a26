#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fracreg/coefficients.hpp"

namespace fracreg {

using Evaluator = std::function<std::complex<double>(double)>;

enum class SeriesFlavor { Complex, Cosine, Sine };

const char* flavor_name(SeriesFlavor f);
SeriesFlavor parse_flavor(const std::string& name);

// A fractional-integral series sum_{n>=1} a_n n^{-alpha} e(nx) (or its cosine
// / sine flavor for real coefficients).  Holds the weighted coefficient table
// so repeated evaluations do not recompute n^{-alpha}.
class SeriesSpec {
public:
    SeriesSpec(SequencePtr coeffs, double alpha, SeriesFlavor flavor);

    SeriesSpec(const SeriesSpec& o);
    SeriesSpec& operator=(const SeriesSpec& o);

    const CoefficientSequence& coeffs() const { return *coeffs_; }
    SequencePtr coeffs_ptr() const { return coeffs_; }
    double alpha() const { return alpha_; }
    double growth_exponent() const { return coeffs_->growth_exponent.to_double(); }
    SeriesFlavor flavor() const { return flavor_; }
    std::int64_t max_terms() const { return coeffs_->length(); }

    // alpha below the absolute-convergence threshold: evaluation is still
    // defined (tail controlled by partial summation) but callers may warn.
    bool conditionally_convergent() const {
        return alpha_ < coeffs_->convergence_threshold;
    }

    struct WeightedTerm {
        std::int64_t n;
        std::complex<double> w;  // a_n * n^{-alpha}
    };
    const std::vector<WeightedTerm>& weighted_terms() const { return terms_; }

    // Empirical tail constant C with |S - S_N| <= C * N^{gamma - alpha},
    // calibrated once from the N/2 vs N partial-sum difference on a 64-point
    // probe grid.  Thread-safe; the computed value is deterministic.
    double tail_coefficient() const;
    double tail_bound(std::int64_t n_terms) const;

private:
    SequencePtr coeffs_;
    double alpha_;
    SeriesFlavor flavor_;
    std::vector<WeightedTerm> terms_;
    mutable std::atomic<double> tail_coeff_{-1.0};
};

struct TruncationChoice {
    std::int64_t n_terms;
    double tail_bound;
};

// Smallest N with C_emp * N^{gamma-alpha} <= eps.  Throws ResourceError with
// the achievable eps when N would exceed the materialized length.
TruncationChoice truncation_length(const SeriesSpec& spec, double eps);

// Partial sum over 0 < n <= n_terms at one point; ascending compensated
// summation, deterministic.
std::complex<double> eval_point(const SeriesSpec& spec, double x, std::int64_t n_terms);

struct SampleGrid {
    double x_start = 0.0;
    double step = 0.0;
    std::int64_t count = 0;
    std::vector<std::complex<double>> values;
    std::int64_t truncation_n = 0;
    double tail_bound = 0.0;
};

// Naive O(N * count) reference path; values[i] = eval_point at x_start+i*step.
// jitter shifts the grid by (sqrt(5)-1)/2 * step to dodge low-denominator
// rationals when scanning irrational behavior.
SampleGrid eval_grid_direct(const SeriesSpec& spec, double x_start, double step,
                            std::int64_t count, std::int64_t n_terms, bool jitter = false);

// All M samples on x_j = j/M via one inverse DFT of the weighted coefficient
// array.  M must be a power of two with M >= 2N+2 (aliasing refused).
SampleGrid eval_grid_fft(const SeriesSpec& spec, std::int64_t grid_size, std::int64_t n_terms);

struct HalfplaneSample {
    std::complex<double> value;  // a0 + sum a_n e(nx) e^{-2 pi n y}
    std::int64_t n_used = 0;
    double tail_bound = 0.0;  // geometric bound on the dropped tail
    double roundoff = 0.0;    // cancellation floor, ~eps * sum |a_n| q^n
};

// Extension of the Fourier series to x + iy, y > 0.  When n_terms is omitted
// the truncation is chosen so e^{-2 pi N y} * max|a_n| < 1e-15, clamped to
// the materialized length.
HalfplaneSample eval_halfplane_detail(const CoefficientSequence& coeffs, double x, double y,
                                      std::optional<std::int64_t> n_terms = std::nullopt);
std::complex<double> eval_halfplane(const CoefficientSequence& coeffs, double x, double y,
                                    std::optional<std::int64_t> n_terms = std::nullopt);

// (1 - r^2) / (1 - 2 r cos(2 pi t) + r^2) for 0 <= r < 1.
double poisson_kernel(double r, double t);

// Point evaluators used by the scan machinery; the derivative multiplies
// a_n by (2 pi i n)^k and requires alpha - k > gamma.
Evaluator series_evaluator(const SeriesSpec& spec, std::int64_t n_terms);
Evaluator series_derivative_evaluator(const SeriesSpec& spec, int derivative_order,
                                      std::int64_t n_terms);

}  // namespace fracreg
