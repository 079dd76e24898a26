#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracreg/estimators.hpp"
#include "fracreg/fixtures.hpp"
#include "fracreg/predict.hpp"

namespace fracreg {

enum class EstimateMethod { Cone, Oscillation, Local, Vertical };

EstimateMethod parse_method(const std::string& name);
const char* method_name(EstimateMethod m);

// A single estimation job: one series (or fixture), one point, one method.
struct EstimateRequest {
    SequencePtr coeffs;             // empty when a fixture is targeted
    std::optional<Fixture> fixture;
    Rational alpha{0};              // ignored for fixtures
    ProbePoint point;
    EstimateMethod method = EstimateMethod::Cone;
    std::optional<ConeGeometry> geometry;  // default: parabolic at cuspidal rationals
    std::optional<int> difference_order;   // oscillation override
    std::optional<JRange> scales;
    std::optional<double> tolerance;
};

struct EstimateOutcome {
    ScaleScan scan;
    ExponentEstimate estimate;              // slope holds the final exponent
    std::optional<VerticalScan> vertical;   // vertical method detail
    RegularityPrediction prediction;
    std::optional<double> predicted_value;  // scalar the estimate is compared to
    double tolerance = 0.0;
    std::string verdict;  // pass | fail | inapplicable
};

EstimateOutcome run_estimate(const EstimateRequest& request);

// Report JSON: {series, alpha, point, predicted{...}, estimated{value,
// stderr, r2, window}, verdict}; key order fixed, bytes deterministic.
std::string estimate_report_json(const EstimateRequest& request, const EstimateOutcome& outcome);

// ---------------------------------------------------------------------------
// verification suites

enum class VerifySuite { Quick, Full };

struct VerifyRowResult {
    std::string id;
    std::string description;
    std::optional<double> predicted;
    std::optional<double> estimated;
    std::optional<double> difference;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOutcome {
    std::vector<VerifyRowResult> rows;
    bool all_pass = false;
};

// Runs every row of the suite (progress lines to `log` when non-null).
VerifyOutcome run_verify(VerifySuite suite, std::ostream* log = nullptr);

std::string verify_report_json(const VerifyOutcome& outcome);
std::string verify_report_text(const VerifyOutcome& outcome);

}  // namespace fracreg
