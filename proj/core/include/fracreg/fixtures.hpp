#pragma once

#include <string>

#include "fracreg/series.hpp"

namespace fracreg {

// Closed-form test functions with known Holder exponent triples at a
// distinguished point.
enum class FixtureKind {
    PowerCusp,     // |x - x0|^s
    Chirp4,        // x^4 sin(x^-2), 0 at 0
    ExtremeChirp,  // e^{-x^-2} sin(e^{x^-4}), 0 at 0
};

struct FixtureExponents {
    double beta;           // pointwise (infinity sentinel allowed)
    double beta_star;      // restricted local
    double beta_starstar;  // local
};

struct Fixture {
    FixtureKind kind = FixtureKind::Chirp4;
    double s = 0.5;   // PowerCusp exponent
    double x0 = 0.0;  // distinguished point

    static Fixture parse(const std::string& name);  // "chirp4" | "power_cusp" | "extreme_chirp"
    std::string name() const;

    double value(double x) const;
    double derivative(double x) const;  // first derivative where it exists

    // Largest k with f^(k) continuous in a neighborhood of x0.
    int max_continuous_derivative() const;

    FixtureExponents exponents() const;

    Evaluator evaluator(int derivative_order = 0) const;
};

}  // namespace fracreg
