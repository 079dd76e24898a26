#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracreg/coefficients.hpp"
#include "fracreg/rational.hpp"

namespace fracreg {

// A probe point: an exact rational p/q, or one of the badly-approximable
// irrational probes selected by keyword so decimal truncation cannot
// silently rationalize them.
struct ProbePoint {
    enum class Kind { RationalPoint, Irrational };
    Kind kind = Kind::RationalPoint;
    Rational rational{0};
    std::string irrational_name;  // "sqrt2m1" or "golden"

    static ProbePoint from_rational(const Rational& r);
    static ProbePoint parse(const std::string& text);  // "p/q" | "sqrt2m1" | "golden"

    bool is_rational() const { return kind == Kind::RationalPoint; }
    double value() const;
    std::string str() const;
};

// Theorem-derived exponent values.  Fields are absent when the corresponding
// hypothesis fails; conditions_report says which one and why.
struct RegularityPrediction {
    std::optional<Rational> beta;
    std::optional<Rational> beta_star;
    std::optional<Rational> beta_starstar;
    std::optional<Rational> gamma;  // partial-sum growth exponent in play
    std::string theorem_tag;        // cusp-form-irrational | cusp-form-rational |
                                    // non-cusp-rational | none
    bool applicable = false;
    std::string conditions_report;
};

// Closed-form predictions for f_alpha of the given sequence at the point.
// All arithmetic is exact on rationals; whenever all three exponents are
// produced they satisfy beta >= beta* >= beta**.
RegularityPrediction predict_exponents(const CoefficientSequence& seq, const Rational& alpha,
                                       const ProbePoint& point);

// Spectrum of singularities for cusp-form fractional integrals: dimension 1
// at alpha - r/2, dimension 0 at 2 alpha - r, -infinity elsewhere (entries
// absent).  rational_condition_ok reports whether the rational-point value
// is covered by the hypothesis alpha >= 1 + floor(2 alpha - r).
struct SpectrumPrediction {
    bool applicable = false;
    bool rational_condition_ok = false;
    std::vector<std::pair<Rational, int>> dimension_by_exponent;
    std::string note;
};

SpectrumPrediction predict_spectrum(const CoefficientSequence& seq, const Rational& alpha);

}  // namespace fracreg
