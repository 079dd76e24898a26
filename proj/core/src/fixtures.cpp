#include "fracreg/fixtures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracreg {

namespace {

double chirp4_value(double x) {
    if (x == 0.0) return 0.0;
    const double x2 = x * x;
    return x2 * x2 * std::sin(1.0 / x2);
}

double chirp4_derivative(double x) {
    if (x == 0.0) return 0.0;
    const double inv2 = 1.0 / (x * x);
    return 4.0 * x * x * x * std::sin(inv2) - 2.0 * x * std::cos(inv2);
}

double extreme_chirp_value(double x) {
    if (x == 0.0) return 0.0;
    const double inv2 = 1.0 / (x * x);
    const double env = std::exp(-inv2);
    if (env == 0.0) return 0.0;
    // The inner exponential e^{x^-4} leaves double range below |x| ~ 0.19; the
    // phase saturates there, where the magnitude is already under 3e-12.
    const double u = std::min(inv2 * inv2, 709.0);
    return env * std::sin(std::exp(u));
}

}  // namespace

Fixture Fixture::parse(const std::string& name) {
    if (name == "chirp4") return Fixture{FixtureKind::Chirp4, 0.0, 0.0};
    if (name == "extreme_chirp") return Fixture{FixtureKind::ExtremeChirp, 0.0, 0.0};
    if (name == "power_cusp") return Fixture{FixtureKind::PowerCusp, 0.5, 0.0};
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::string Fixture::name() const {
    switch (kind) {
        case FixtureKind::PowerCusp: return "power_cusp";
        case FixtureKind::Chirp4: return "chirp4";
        case FixtureKind::ExtremeChirp: return "extreme_chirp";
    }
    return "?";
}

double Fixture::value(double x) const {
    switch (kind) {
        case FixtureKind::PowerCusp: return std::pow(std::abs(x - x0), s);
        case FixtureKind::Chirp4: return chirp4_value(x - x0);
        case FixtureKind::ExtremeChirp: return extreme_chirp_value(x - x0);
    }
    return 0.0;
}

double Fixture::derivative(double x) const {
    switch (kind) {
        case FixtureKind::PowerCusp: {
            const double d = x - x0;
            if (d == 0.0) return 0.0;  // not differentiable at x0 for s < 1
            return s * std::pow(std::abs(d), s - 1.0) * (d > 0 ? 1.0 : -1.0);
        }
        case FixtureKind::Chirp4:
            return chirp4_derivative(x - x0);
        case FixtureKind::ExtremeChirp:
            throw std::invalid_argument("extreme_chirp: derivative evaluator not provided");
    }
    return 0.0;
}

int Fixture::max_continuous_derivative() const {
    switch (kind) {
        case FixtureKind::PowerCusp: return 0;
        case FixtureKind::Chirp4: return 1;  // f' continuous, f'' blows up at x0
        case FixtureKind::ExtremeChirp: return 0;
    }
    return 0;
}

FixtureExponents Fixture::exponents() const {
    switch (kind) {
        case FixtureKind::PowerCusp: return {s, s, s};
        case FixtureKind::Chirp4: return {4.0, 2.0, 4.0 / 3.0};
        case FixtureKind::ExtremeChirp:
            // pointwise exponent is infinite, the local one collapses to 0;
            // beta* = 1 since only k = 0 contributes and Lambda^s caps at 1
            return {std::numeric_limits<double>::infinity(), 1.0, 0.0};
    }
    return {0, 0, 0};
}

Evaluator Fixture::evaluator(int derivative_order) const {
    if (derivative_order < 0 || derivative_order > max_continuous_derivative()) {
        throw std::invalid_argument("fixture '" + name() + "': derivative order " +
                                    std::to_string(derivative_order) + " unavailable");
    }
    Fixture copy = *this;
    if (derivative_order == 0) {
        return [copy](double x) { return std::complex<double>(copy.value(x), 0.0); };
    }
    return [copy](double x) { return std::complex<double>(copy.derivative(x), 0.0); };
}

}  // namespace fracreg
