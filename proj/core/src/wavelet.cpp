#include "fracreg/wavelet.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fracreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLNode[kGL] = {
    -0.98940093499164994, -0.94457502307323260, -0.86563120238783176, -0.75540440835500300,
    -0.61787624440264377, -0.45801677765722743, -0.28160355077925892, -0.09501250983763745,
    0.09501250983763745,  0.28160355077925892,  0.45801677765722743,  0.61787624440264377,
    0.75540440835500300,  0.86563120238783176,  0.94457502307323260,  0.98940093499164994};
constexpr double kGLWeight[kGL] = {
    0.02715245941175647, 0.06225352393864763, 0.09515851168249231, 0.12462897125553363,
    0.14959598881657638, 0.16915651939500212, 0.18260341504492328, 0.18945061045506811,
    0.18945061045506811, 0.18260341504492328, 0.16915651939500212, 0.14959598881657638,
    0.12462897125553363, 0.09515851168249231, 0.06225352393864763, 0.02715245941175647};

std::complex<double> kernel_pow(double u, double alpha) {
    return std::pow(std::complex<double>(u, -1.0), -alpha - 1.0);
}

// integral of g(b + a u) (u - i)^{-alpha-1} over [lo, hi] with panels <= h
std::complex<double> integrate_region(const Evaluator& g, double alpha, double a, double b,
                                      double lo, double hi, double h) {
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / h)));
    const double step = (hi - lo) / panels;
    std::complex<double> total(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double c = lo + (p + 0.5) * step;
        const double r = 0.5 * step;
        std::complex<double> panel(0.0, 0.0);
        for (int i = 0; i < kGL; ++i) {
            const double u = c + r * kGLNode[i];
            panel += kGLWeight[i] * g(b + a * u) * kernel_pow(u, alpha);
        }
        total += panel * r;
    }
    return total;
}

}  // namespace

std::complex<double> wavelet_psi(double alpha, double x) {
    if (!(alpha > 0.0)) throw std::invalid_argument("wavelet_psi: alpha must be positive");
    return std::pow(std::complex<double>(x, 1.0), -alpha - 1.0);
}

std::complex<double> wavelet_transform_quadrature(const Evaluator& g, double alpha, double a,
                                                  double b,
                                                  const WaveletQuadratureOptions& opts) {
    if (!(a > 0.0)) throw std::invalid_argument("wavelet transform: scale a must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("wavelet transform: alpha must be positive");
    const double U = opts.halfwidth;
    // resolve the oscillation of g along u (frequency a * max_frequency) and
    // the kernel scale near u = 0
    const double cycles = a * opts.max_frequency;
    const double h = std::min(1.0, 2.55 / std::max(1.0, cycles));

    const std::complex<double> inner = integrate_region(g, alpha, a, b, -U / 2, U / 2, h);
    const std::complex<double> outer = integrate_region(g, alpha, a, b, -U, -U / 2, h) +
                                       integrate_region(g, alpha, a, b, U / 2, U, h);
    // Richardson in U removes the O(U^-alpha) truncation term.
    const std::complex<double> value = inner + outer + outer / (std::pow(2.0, alpha) - 1.0);
    return std::pow(a, alpha) * value;
}

std::complex<double> wavelet_constant(double alpha) {
    if (!(alpha > 0.5)) throw std::invalid_argument("wavelet_constant: alpha must exceed 1/2");

    static std::mutex cache_mutex;
    static std::map<double, std::complex<double>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(alpha);
        if (it != cache.end()) return it->second;
    }

    const Evaluator unit_mode = [](double t) {
        const double ang = kTwoPi * t;
        return std::complex<double>(std::cos(ang), std::sin(ang));
    };
    WaveletQuadratureOptions opts;
    opts.max_frequency = 1.0;
    opts.halfwidth = 10000.0;
    const std::complex<double> w = wavelet_transform_quadrature(unit_mode, alpha, 1.0, 0.0, opts);
    opts.halfwidth = 5000.0;
    const std::complex<double> w_check =
        wavelet_transform_quadrature(unit_mode, alpha, 1.0, 0.0, opts);
    if (std::abs(w - w_check) > 1e-6 * std::abs(w)) {
        throw std::runtime_error("wavelet_constant: quadrature did not converge");
    }
    // W = C e(i) at (lambda, a, b) = (1, 1, 0), so C = W e^{2 pi}.
    const std::complex<double> c = w * std::exp(kTwoPi);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(alpha, c);
    }
    return c;
}

std::complex<double> wavelet_transform_series(const CoefficientSequence& coeffs, double alpha,
                                              double a, double b) {
    const std::complex<double> f = eval_halfplane(coeffs, b, a);
    return wavelet_constant(alpha) * std::pow(a, alpha) * (f - coeffs.a0);
}

}  // namespace fracreg
