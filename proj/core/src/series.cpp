#include "fracreg/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498948482;  // (sqrt(5)-1)/2

// Compensated (Kahan) accumulator; summation order is fixed ascending in n
// so outputs are reproducible byte for byte.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    double value() const { return s + c; }
};

struct ComplexKahan {
    KahanSum re, im;
    void add(std::complex<double> v) {
        re.add(v.real());
        im.add(v.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

double frac_unit(double t) { return t - std::floor(t); }

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

void inverse_fft(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = kTwoPi / static_cast<double>(len);  // positive sign: e^{+2pi i /len}
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

const char* flavor_name(SeriesFlavor f) {
    switch (f) {
        case SeriesFlavor::Complex: return "complex";
        case SeriesFlavor::Cosine: return "cosine";
        case SeriesFlavor::Sine: return "sine";
    }
    return "?";
}

SeriesFlavor parse_flavor(const std::string& name) {
    if (name == "complex") return SeriesFlavor::Complex;
    if (name == "cosine") return SeriesFlavor::Cosine;
    if (name == "sine") return SeriesFlavor::Sine;
    throw std::invalid_argument("unknown flavor '" + name + "'");
}

SeriesSpec::SeriesSpec(SequencePtr coeffs, double alpha, SeriesFlavor flavor)
    : coeffs_(std::move(coeffs)), alpha_(alpha), flavor_(flavor) {
    if (!coeffs_) throw std::invalid_argument("SeriesSpec: null coefficient sequence");
    if (!(alpha_ > coeffs_->growth_exponent.to_double())) {
        throw std::invalid_argument(
            "SeriesSpec: alpha must exceed the growth exponent gamma = " +
            coeffs_->growth_exponent.str());
    }
    if (flavor_ != SeriesFlavor::Complex && !coeffs_->all_real()) {
        throw std::invalid_argument("SeriesSpec: cosine/sine flavors need real coefficients");
    }
    terms_.reserve(coeffs_->terms.size());
    for (std::int64_t n = 1; n <= coeffs_->length(); ++n) {
        const std::complex<double> a = coeffs_->at(n);
        if (a == std::complex<double>(0.0, 0.0)) continue;
        terms_.push_back({n, a * std::pow(static_cast<double>(n), -alpha_)});
    }
}

SeriesSpec::SeriesSpec(const SeriesSpec& o)
    : coeffs_(o.coeffs_), alpha_(o.alpha_), flavor_(o.flavor_), terms_(o.terms_) {
    tail_coeff_.store(o.tail_coeff_.load());
}

SeriesSpec& SeriesSpec::operator=(const SeriesSpec& o) {
    coeffs_ = o.coeffs_;
    alpha_ = o.alpha_;
    flavor_ = o.flavor_;
    terms_ = o.terms_;
    tail_coeff_.store(o.tail_coeff_.load());
    return *this;
}

double SeriesSpec::tail_coefficient() const {
    double cached = tail_coeff_.load();
    if (cached >= 0.0) return cached;

    const std::int64_t n_full = max_terms();
    const std::int64_t n_half = std::max<std::int64_t>(1, n_full / 2);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double x = (static_cast<double>(i) + kGolden) / 64.0;
        const std::complex<double> d = eval_point(*this, x, n_full) - eval_point(*this, x, n_half);
        worst = std::max(worst, std::abs(d));
    }
    const double decay = growth_exponent() - alpha_;  // negative
    const double denom = std::pow(static_cast<double>(n_half), decay) * (1.0 - std::pow(2.0, decay));
    const double c = denom > 0.0 ? worst / denom : 0.0;
    tail_coeff_.store(c);
    return c;
}

double SeriesSpec::tail_bound(std::int64_t n_terms) const {
    return tail_coefficient() * std::pow(static_cast<double>(n_terms), growth_exponent() - alpha_);
}

TruncationChoice truncation_length(const SeriesSpec& spec, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("truncation_length: eps must be positive");
    const double c = spec.tail_coefficient();
    if (c <= 0.0) return {1, 0.0};
    const double decay = spec.alpha() - spec.growth_exponent();  // positive
    const double n_real = std::pow(c / eps, 1.0 / decay);
    if (n_real > static_cast<double>(spec.max_terms())) {
        const double achievable = spec.tail_bound(spec.max_terms());
        throw ResourceError(
            "truncation_length: requested eps needs N > materialized length " +
            std::to_string(spec.max_terms()) + "; achievable eps ~ " + std::to_string(achievable));
    }
    const std::int64_t n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n_real)));
    return {n, spec.tail_bound(n)};
}

std::complex<double> eval_point(const SeriesSpec& spec, double x, std::int64_t n_terms) {
    if (n_terms < 1) throw std::invalid_argument("eval_point: n_terms must be >= 1");
    if (n_terms > spec.max_terms()) {
        throw ResourceError("eval_point: n_terms exceeds materialized length");
    }
    const double xr = frac_unit(x);
    ComplexKahan acc;
    for (const auto& term : spec.weighted_terms()) {
        if (term.n > n_terms) break;
        const double u = frac_unit(static_cast<double>(term.n) * xr);
        const double ang = kTwoPi * u;
        const double c = std::cos(ang), s = std::sin(ang);
        switch (spec.flavor()) {
            case SeriesFlavor::Complex:
                acc.add(term.w * std::complex<double>(c, s));
                break;
            case SeriesFlavor::Cosine:
                acc.add({term.w.real() * c, 0.0});
                break;
            case SeriesFlavor::Sine:
                acc.add({term.w.real() * s, 0.0});
                break;
        }
    }
    return acc.value();
}

SampleGrid eval_grid_direct(const SeriesSpec& spec, double x_start, double step,
                            std::int64_t count, std::int64_t n_terms, bool jitter) {
    if (count < 1) throw std::invalid_argument("eval_grid_direct: count must be >= 1");
    if (!(step > 0.0) && count > 1) {
        throw std::invalid_argument("eval_grid_direct: step must be positive");
    }
    SampleGrid grid;
    grid.x_start = x_start + (jitter ? kGolden * step : 0.0);
    grid.step = step;
    grid.count = count;
    grid.truncation_n = n_terms;
    grid.tail_bound = spec.tail_bound(n_terms);
    grid.values.resize(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        grid.values[static_cast<std::size_t>(i)] =
            eval_point(spec, grid.x_start + static_cast<double>(i) * step, n_terms);
    }
    return grid;
}

SampleGrid eval_grid_fft(const SeriesSpec& spec, std::int64_t grid_size, std::int64_t n_terms) {
    if (!is_power_of_two(grid_size)) {
        throw std::invalid_argument("eval_grid_fft: grid size must be a power of two");
    }
    if (grid_size < 2 * n_terms + 2) {
        throw std::invalid_argument("eval_grid_fft: grid size " + std::to_string(grid_size) +
                                    " would alias n_terms = " + std::to_string(n_terms) +
                                    " (need M >= 2N+2)");
    }
    if (n_terms > spec.max_terms()) {
        throw ResourceError("eval_grid_fft: n_terms exceeds materialized length");
    }
    std::vector<std::complex<double>> bins(static_cast<std::size_t>(grid_size), {0.0, 0.0});
    for (const auto& term : spec.weighted_terms()) {
        if (term.n > n_terms) break;
        bins[static_cast<std::size_t>(term.n)] = term.w;
    }
    inverse_fft(bins);

    SampleGrid grid;
    grid.x_start = 0.0;
    grid.step = 1.0 / static_cast<double>(grid_size);
    grid.count = grid_size;
    grid.truncation_n = n_terms;
    grid.tail_bound = spec.tail_bound(n_terms);
    grid.values.resize(bins.size());
    for (std::size_t j = 0; j < bins.size(); ++j) {
        switch (spec.flavor()) {
            case SeriesFlavor::Complex: grid.values[j] = bins[j]; break;
            case SeriesFlavor::Cosine: grid.values[j] = {bins[j].real(), 0.0}; break;
            case SeriesFlavor::Sine: grid.values[j] = {bins[j].imag(), 0.0}; break;
        }
    }
    return grid;
}

HalfplaneSample eval_halfplane_detail(const CoefficientSequence& coeffs, double x, double y,
                                      std::optional<std::int64_t> n_terms) {
    if (!(y > 0.0)) throw std::domain_error("eval_halfplane: y must be positive");
    const std::int64_t len = coeffs.length();
    const double amax = std::max(coeffs.max_abs(), 1.0);
    const double need_real = std::log(amax * 1e15) / (kTwoPi * y);
    const std::int64_t need =
        std::max<std::int64_t>(4, static_cast<std::int64_t>(std::ceil(need_real)));

    std::int64_t n_used = std::min(need, len);
    if (n_terms) {
        if (*n_terms < 1 || *n_terms > len) {
            throw ResourceError("eval_halfplane: n_terms outside materialized range");
        }
        n_used = *n_terms;
    }

    const double q = std::exp(-kTwoPi * y);
    const double xr = frac_unit(x);
    ComplexKahan acc;
    double abs_sum = std::abs(coeffs.a0.real()) + std::abs(coeffs.a0.imag());

    const auto& nz = coeffs.terms;
    // dense path: incremental rotor + q powers; sparse path: per-term exp.
    std::int64_t nz_count = 0;
    for (std::int64_t n = 1; n <= n_used && nz_count * 4 < n_used; ++n) {
        if (nz[static_cast<std::size_t>(n)] != std::complex<double>(0.0, 0.0)) ++nz_count;
    }
    const bool dense = nz_count * 4 >= n_used;

    if (dense) {
        const std::complex<double> rot(std::cos(kTwoPi * xr), std::sin(kTwoPi * xr));
        std::complex<double> e = rot;
        double qn = q;
        for (std::int64_t n = 1; n <= n_used; ++n) {
            const std::complex<double> a = nz[static_cast<std::size_t>(n)];
            if (a != std::complex<double>(0.0, 0.0)) {
                acc.add(a * e * qn);
                abs_sum += (std::abs(a.real()) + std::abs(a.imag())) * qn;
            }
            e *= rot;
            qn *= q;
        }
    } else {
        for (std::int64_t n = 1; n <= n_used; ++n) {
            const std::complex<double> a = nz[static_cast<std::size_t>(n)];
            if (a == std::complex<double>(0.0, 0.0)) continue;
            const double qn = std::exp(-kTwoPi * static_cast<double>(n) * y);
            const double u = frac_unit(static_cast<double>(n) * xr);
            const double ang = kTwoPi * u;
            acc.add(a * qn * std::complex<double>(std::cos(ang), std::sin(ang)));
            abs_sum += (std::abs(a.real()) + std::abs(a.imag())) * qn;
        }
    }

    HalfplaneSample out;
    out.value = coeffs.a0 + acc.value();
    out.n_used = n_used;
    out.tail_bound = coeffs.max_abs() * std::exp(-kTwoPi * static_cast<double>(n_used) * y) /
                     std::max(1.0 - q, 1e-300);
    out.roundoff = 1e-16 * abs_sum;
    return out;
}

std::complex<double> eval_halfplane(const CoefficientSequence& coeffs, double x, double y,
                                    std::optional<std::int64_t> n_terms) {
    return eval_halfplane_detail(coeffs, x, y, n_terms).value;
}

double poisson_kernel(double r, double t) {
    if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("poisson_kernel: r must be in [0, 1)");
    const double c = std::cos(kTwoPi * t);
    return (1.0 - r * r) / (1.0 - 2.0 * r * c + r * r);
}

Evaluator series_evaluator(const SeriesSpec& spec, std::int64_t n_terms) {
    return series_derivative_evaluator(spec, 0, n_terms);
}

Evaluator series_derivative_evaluator(const SeriesSpec& spec, int derivative_order,
                                      std::int64_t n_terms) {
    if (derivative_order < 0) throw std::invalid_argument("derivative order must be >= 0");
    if (derivative_order > 0 &&
        !(spec.alpha() - derivative_order > spec.growth_exponent())) {
        throw std::invalid_argument(
            "series derivative unavailable: alpha - k must exceed gamma (k = " +
            std::to_string(derivative_order) + ")");
    }
    if (n_terms > spec.max_terms()) {
        throw ResourceError("series evaluator: n_terms exceeds materialized length");
    }

    // precompute a_n (2 pi i n)^k n^{-alpha}
    std::vector<SeriesSpec::WeightedTerm> table;
    table.reserve(spec.weighted_terms().size());
    for (const auto& term : spec.weighted_terms()) {
        if (term.n > n_terms) break;
        std::complex<double> w = term.w;
        if (derivative_order > 0) {
            const std::complex<double> f(0.0, kTwoPi * static_cast<double>(term.n));
            for (int i = 0; i < derivative_order; ++i) w *= f;
        }
        table.push_back({term.n, w});
    }

    const SeriesFlavor flavor = spec.flavor();
    return [table = std::move(table), flavor](double x) -> std::complex<double> {
        const double xr = x - std::floor(x);
        ComplexKahan acc;
        for (const auto& term : table) {
            double u = static_cast<double>(term.n) * xr;
            u -= std::floor(u);
            const double ang = kTwoPi * u;
            acc.add(term.w * std::complex<double>(std::cos(ang), std::sin(ang)));
        }
        const std::complex<double> v = acc.value();
        switch (flavor) {
            case SeriesFlavor::Complex: return v;
            case SeriesFlavor::Cosine: return {v.real(), 0.0};
            case SeriesFlavor::Sine: return {v.imag(), 0.0};
        }
        return v;
    };
}

}  // namespace fracreg
