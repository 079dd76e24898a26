#pragma once

#include <complex>

#include "fracreg/series.hpp"

namespace fracreg {

// The analytic wavelet psi_alpha(x) = (x + i)^{-alpha-1}, principal branch.
std::complex<double> wavelet_psi(double alpha, double x);

struct WaveletQuadratureOptions {
    double halfwidth = 2000.0;   // truncation U in the scale-free coordinate
    double max_frequency = 0.0;  // dominant frequency of g (cycles per unit)
};

// W g(a, b) = a^alpha Int g(t) (t - b - ia)^{-alpha-1} dt evaluated on the
// substituted form Int g(b + a u) (u - i)^{-alpha-1} du with composite
// Gauss-Legendre panels; the algebraic U^{-alpha} truncation term is removed
// by one Richardson step between U/2 and U.
std::complex<double> wavelet_transform_quadrature(const Evaluator& g, double alpha, double a,
                                                  double b,
                                                  const WaveletQuadratureOptions& opts = {});

// The constant C with W[e(lambda t)](a, b) = C lambda^alpha a^alpha
// e(lambda(b + ia)) for lambda > 0, computed once by quadrature at
// (lambda, a, b) = (1, 1, 0) and cached per alpha.  Requires alpha > 1/2;
// throws if the quadrature fails its self-consistency check.
std::complex<double> wavelet_constant(double alpha);

// Closed form for fractional-integral series: C_alpha a^alpha (f(b+ia) - a0),
// no quadrature involved.
std::complex<double> wavelet_transform_series(const CoefficientSequence& coeffs, double alpha,
                                              double a, double b);

}  // namespace fracreg
