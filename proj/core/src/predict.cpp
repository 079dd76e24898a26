#include "fracreg/predict.hpp"

#include <cmath>
#include <stdexcept>

namespace fracreg {

namespace {

const Rational kOne(1);

Rational floor_q(const Rational& q) { return q.floor(); }

std::string yesno(bool b) { return b ? "yes" : "no"; }

}  // namespace

ProbePoint ProbePoint::from_rational(const Rational& r) {
    ProbePoint p;
    p.kind = Kind::RationalPoint;
    p.rational = r;
    return p;
}

ProbePoint ProbePoint::parse(const std::string& text) {
    if (text == "sqrt2m1" || text == "golden") {
        ProbePoint p;
        p.kind = Kind::Irrational;
        p.irrational_name = text;
        return p;
    }
    return from_rational(Rational::parse(text));
}

double ProbePoint::value() const {
    if (kind == Kind::RationalPoint) return rational.to_double();
    if (irrational_name == "sqrt2m1") return std::sqrt(2.0) - 1.0;
    if (irrational_name == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
    throw std::logic_error("unknown irrational probe '" + irrational_name + "'");
}

std::string ProbePoint::str() const {
    return kind == Kind::RationalPoint ? rational.str() : irrational_name;
}

RegularityPrediction predict_exponents(const CoefficientSequence& seq, const Rational& alpha,
                                       const ProbePoint& point) {
    RegularityPrediction out;
    out.theorem_tag = "none";

    const Rational r = seq.weight;
    const Rational gamma = seq.growth_exponent;
    if (!(alpha > gamma)) {
        out.conditions_report = "alpha > gamma: no (alpha = " + alpha.str() +
                                ", gamma = " + gamma.str() + "); series not in scope";
        return out;
    }

    if (seq.is_cusp_form) {
        const Rational half = r / Rational(2);
        out.gamma = half;
        const Rational base = alpha - half;  // alpha - r/2

        if (!point.is_rational()) {
            out.theorem_tag = "cusp-form-irrational";
            out.applicable = true;
            out.beta = base;
            out.beta_star = base;
            out.beta_starstar = base;
            out.conditions_report = "cusp form, irrational point, alpha > r/2: yes";
            return out;
        }

        out.theorem_tag = "cusp-form-rational";
        out.applicable = true;
        out.beta_starstar = base;  // holds unconditionally for alpha > r/2
        const Rational two_alpha_minus_r = alpha * Rational(2) - r;
        const bool pointwise_ok = alpha >= kOne + floor_q(two_alpha_minus_r);
        out.conditions_report =
            "cusp form, rational point; alpha >= 1 + floor(2 alpha - r): " + yesno(pointwise_ok);
        if (pointwise_ok) {
            out.beta = two_alpha_minus_r;
            const Rational fr = base.frac();
            out.beta_star = floor_q(base) + min(kOne, Rational(2) * fr);
            // the as-printed variant floor(2 alpha - r) + min(1, 2{alpha-r/2})
            // breaks the ordering lemma; the proof-consistent form is used
            const Rational printed = floor_q(two_alpha_minus_r) + min(kOne, Rational(2) * fr);
            out.conditions_report += "; beta* uses floor(alpha - r/2) + min(1, 2{alpha - r/2})"
                                     " (statement-printed variant would give " +
                                     printed.str() + ")";
        } else {
            out.conditions_report +=
                "; beta and beta* not predicted (only beta** = alpha - r/2 stands)";
        }
        return out;
    }

    // not a cusp form
    out.gamma = gamma;
    if (!point.is_rational()) {
        out.conditions_report =
            "non-cusp form at an irrational point: outside the covered statements";
        return out;
    }
    out.theorem_tag = "non-cusp-rational";
    const auto behavior = classify_rational_point(seq, point.rational.num(), point.rational.den());
    if (behavior.kind == CuspBehavior::Kind::Cuspidal) {
        out.conditions_report = "form is cuspidal at " + point.rational.str() +
                                "; vertical decay is exponential and no exponent is predicted";
        return out;
    }
    const bool range_ok = alpha > r;
    const bool floor_ok = kOne + floor_q(alpha - r) <= alpha;
    out.conditions_report = "not cuspidal at " + point.rational.str() +
                            "; alpha > r: " + yesno(range_ok) +
                            "; 1 + floor(alpha - r) <= alpha: " + yesno(floor_ok);
    if (range_ok && floor_ok) {
        out.applicable = true;
        out.beta = alpha - r;
    }
    return out;
}

SpectrumPrediction predict_spectrum(const CoefficientSequence& seq, const Rational& alpha) {
    SpectrumPrediction out;
    if (!seq.is_cusp_form) {
        out.note = "spectrum table only derived for cusp forms";
        return out;
    }
    const Rational half = seq.weight / Rational(2);
    if (!(alpha > half)) {
        out.note = "alpha must exceed r/2 = " + half.str();
        return out;
    }
    out.applicable = true;
    const Rational irr = alpha - half;                       // dimension 1
    const Rational rat = alpha * Rational(2) - seq.weight;   // dimension 0
    out.rational_condition_ok = alpha >= kOne + rat.floor();
    if (irr == rat) {
        out.dimension_by_exponent = {{irr, 1}};
    } else {
        out.dimension_by_exponent = {{irr, 1}, {rat, 0}};
    }
    if (!out.rational_condition_ok) {
        out.note =
            "alpha >= 1 + floor(2 alpha - r) fails; the rational-point exponent rests on the "
            "external differentiability result for these series";
    }
    return out;
}

}  // namespace fracreg
