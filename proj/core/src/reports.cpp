#include "fracreg/reports.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "fracreg/io.hpp"

namespace fracreg {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kDefaultConeTol = 0.10;
constexpr double kDefaultOscTol = 0.30;
constexpr double kDefaultLocalTol = 0.15;
constexpr double kDefaultVerticalTol = 0.15;

double default_tolerance(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::Cone: return kDefaultConeTol;
        case EstimateMethod::Oscillation: return kDefaultOscTol;
        case EstimateMethod::Local: return kDefaultLocalTol;
        case EstimateMethod::Vertical: return kDefaultVerticalTol;
    }
    return 0.1;
}

int choose_difference_order(std::optional<double> predicted_beta, const Evaluator& f, double x0,
                            JRange range) {
    if (predicted_beta && std::isfinite(*predicted_beta)) {
        return std::min(8, static_cast<int>(std::floor(*predicted_beta)) + 1);
    }
    // adaptive: grow m until the fitted slope stops increasing by > 0.1
    double prev = -1e9;
    for (int m = 1; m <= 8; ++m) {
        const ScaleScan scan = oscillation_scan(f, x0, m, range);
        double slope;
        try {
            slope = estimate_exponent(scan).slope;
        } catch (const std::runtime_error&) {
            return m;  // degenerate at this order; keep it
        }
        if (slope - prev <= 0.1) return m;
        prev = slope;
    }
    return 8;
}

bool is_cuspidal_rational(const CoefficientSequence& seq, const ProbePoint& pt) {
    if (!pt.is_rational()) return false;
    return classify_rational_point(seq, pt.rational.num(), pt.rational.den()).kind ==
           CuspBehavior::Kind::Cuspidal;
}

}  // namespace

EstimateMethod parse_method(const std::string& name) {
    if (name == "cone") return EstimateMethod::Cone;
    if (name == "oscillation") return EstimateMethod::Oscillation;
    if (name == "local") return EstimateMethod::Local;
    if (name == "vertical") return EstimateMethod::Vertical;
    throw std::invalid_argument("unknown method '" + name + "'");
}

const char* method_name(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::Cone: return "cone";
        case EstimateMethod::Oscillation: return "oscillation";
        case EstimateMethod::Local: return "local";
        case EstimateMethod::Vertical: return "vertical";
    }
    return "?";
}

EstimateOutcome run_estimate(const EstimateRequest& request) {
    EstimateOutcome out;
    out.tolerance = request.tolerance.value_or(default_tolerance(request.method));
    const double x0 = request.point.value();

    // ---- fixtures: closed-form evaluators, exponents known exactly ----
    if (request.fixture) {
        const Fixture& fx = *request.fixture;
        const FixtureExponents ex = fx.exponents();
        switch (request.method) {
            case EstimateMethod::Oscillation: {
                const JRange range = request.scales.value_or(JRange{5, 16});
                const int m = request.difference_order.value_or(
                    std::isfinite(ex.beta) ? std::min(8, static_cast<int>(ex.beta) + 1) : 8);
                out.scan = oscillation_scan(fx.evaluator(0), fx.x0, m, range);
                out.estimate = estimate_exponent(out.scan);
                out.predicted_value = ex.beta;
                break;
            }
            case EstimateMethod::Local: {
                const JRange range = request.scales.value_or(JRange{2, 8});
                const int k = fx.max_continuous_derivative();
                out.scan = local_pair_scan(fx.evaluator(k), k, fx.x0, range);
                out.estimate = estimate_exponent(out.scan);
                out.estimate.slope += k;
                out.predicted_value = ex.beta_starstar;
                break;
            }
            case EstimateMethod::Cone: {
                const JRange range = request.scales.value_or(JRange{4, 16});
                ConeScanOptions copts;
                copts.sweep_points = 17;
                WaveletQuadratureOptions qopts;
                qopts.halfwidth = 512.0;
                const double alpha = request.alpha > Rational(0) ? request.alpha.to_double() : 2.0;
                out.scan = cone_scan_function(fx.evaluator(0), alpha, fx.x0, range, copts, qopts);
                out.estimate = estimate_exponent(out.scan);
                out.predicted_value = ex.beta;
                break;
            }
            case EstimateMethod::Vertical:
                throw std::invalid_argument("vertical scans need a coefficient sequence");
        }
        if (out.predicted_value && std::isfinite(*out.predicted_value)) {
            const double diff = std::abs(out.estimate.slope - *out.predicted_value);
            out.verdict = diff <= out.tolerance ? "pass" : "fail";
        } else {
            out.verdict = "inapplicable";
        }
        return out;
    }

    // ---- series ----
    if (!request.coeffs) throw std::invalid_argument("run_estimate: no series or fixture given");
    const CoefficientSequence& seq = *request.coeffs;
    out.prediction = predict_exponents(seq, request.alpha, request.point);
    const double alpha = request.alpha.to_double();

    switch (request.method) {
        case EstimateMethod::Cone: {
            ConeScanOptions copts;
            const bool parabolic = request.geometry
                                       ? *request.geometry == ConeGeometry::Parabolic
                                       : is_cuspidal_rational(seq, request.point);
            copts.geometry = parabolic ? ConeGeometry::Parabolic : ConeGeometry::Linear;
            const JRange range = request.scales.value_or(parabolic ? JRange{6, 18} : JRange{6, 16});
            out.scan = cone_scan(seq, alpha, x0, range, copts);
            out.estimate = estimate_exponent(out.scan);
            if (out.prediction.beta) {
                out.predicted_value = out.prediction.beta->to_double();
            } else if (out.prediction.beta_starstar && !parabolic) {
                // at irrationals the cone slope matches the common exponent
                out.predicted_value = out.prediction.beta_starstar->to_double();
            }
            break;
        }
        case EstimateMethod::Oscillation: {
            const JRange range = request.scales.value_or(JRange{2, 10});
            SeriesSpec spec(request.coeffs, alpha, SeriesFlavor::Complex);
            const Evaluator f = series_evaluator(spec, spec.max_terms());
            std::optional<double> pb;
            if (out.prediction.beta) pb = out.prediction.beta->to_double();
            const int m = request.difference_order.value_or(choose_difference_order(pb, f, x0, range));
            out.scan = oscillation_scan(f, x0, m, range);
            out.estimate = estimate_exponent(out.scan);
            if (out.prediction.beta) out.predicted_value = out.prediction.beta->to_double();
            break;
        }
        case EstimateMethod::Local: {
            const JRange range = request.scales.value_or(JRange{2, 8});
            SeriesSpec spec(request.coeffs, alpha, SeriesFlavor::Complex);
            int k = 0;
            if (out.prediction.beta_starstar) {
                k = static_cast<int>(out.prediction.beta_starstar->floor().to_double());
            }
            const int cap = static_cast<int>(std::floor(alpha - spec.growth_exponent())) - 1;
            k = std::max(0, std::min(k, std::max(0, cap)));
            const Evaluator f = series_derivative_evaluator(spec, k, spec.max_terms());
            out.scan = local_pair_scan(f, k, x0, range);
            out.estimate = estimate_exponent(out.scan);
            out.estimate.slope += k;
            if (out.prediction.beta_starstar) {
                out.predicted_value = out.prediction.beta_starstar->to_double();
            }
            break;
        }
        case EstimateMethod::Vertical: {
            const JRange range = request.scales.value_or(JRange{1, 14});
            VerticalScan vs = vertical_scan(seq, x0, range);
            out.scan = vs.scan;
            out.vertical = vs;
            ExponentEstimate est;
            est.slope = vs.chosen.exponent_or_rate;
            est.r_squared = vs.chosen.r_squared;
            est.n_points = static_cast<int>(vs.scan.usable_count());
            out.estimate = est;
            if (request.point.is_rational() && is_cuspidal_rational(seq, request.point)) {
                // prediction: exponential decay; verdict on the model choice
                out.verdict = vs.chosen.model == DecayFit::Model::Exponential ? "pass" : "fail";
                return out;
            }
            // power-law cases: the exponent estimates -gamma_vertical
            if (!seq.is_cusp_form && request.point.is_rational()) {
                out.predicted_value = -seq.weight.to_double();
            } else if (seq.is_cusp_form && !request.point.is_rational()) {
                out.predicted_value = -seq.growth_exponent.to_double();
            }
            if (vs.chosen.model != DecayFit::Model::PowerLaw && out.predicted_value) {
                out.verdict = "fail";
                return out;
            }
            break;
        }
    }

    if (out.predicted_value) {
        const double diff = std::abs(out.estimate.slope - *out.predicted_value);
        out.verdict = diff <= out.tolerance ? "pass" : "fail";
    } else {
        out.verdict = "inapplicable";
    }
    return out;
}

namespace {

ordered_json prediction_json(const RegularityPrediction& p) {
    ordered_json j;
    auto put = [&](const char* key, const std::optional<Rational>& v) {
        if (v) {
            j[key] = ordered_json{{"value", v->to_double()}, {"exact", v->str()}};
        } else {
            j[key] = nullptr;
        }
    };
    put("beta", p.beta);
    put("beta_star", p.beta_star);
    put("beta_starstar", p.beta_starstar);
    put("gamma", p.gamma);
    j["theorem"] = p.theorem_tag;
    j["applicable"] = p.applicable;
    j["conditions"] = p.conditions_report;
    return j;
}

}  // namespace

std::string estimate_report_json(const EstimateRequest& request, const EstimateOutcome& outcome) {
    ordered_json j;
    j["series"] = request.fixture ? ("fixture:" + request.fixture->name())
                                  : request.coeffs->name;
    j["alpha"] = request.fixture ? ordered_json(nullptr) : ordered_json(request.alpha.to_double());
    j["point"] = request.fixture ? format_double(request.fixture->x0) : request.point.str();
    j["method"] = method_name(request.method);
    j["predicted"] = prediction_json(outcome.prediction);
    if (outcome.predicted_value) j["predicted"]["compared_value"] = *outcome.predicted_value;
    ordered_json est;
    est["value"] = outcome.estimate.slope;
    est["stderr"] = outcome.estimate.stderr_value;
    est["r2"] = outcome.estimate.r_squared;
    est["window"] = ordered_json::array({outcome.estimate.j_min, outcome.estimate.j_max});
    est["n_points"] = outcome.estimate.n_points;
    j["estimated"] = est;
    if (outcome.vertical) {
        j["decay"] = ordered_json{
            {"model", outcome.vertical->chosen.model == DecayFit::Model::Exponential
                          ? "exponential"
                          : "power_law"},
            {"exponent_or_rate", outcome.vertical->chosen.exponent_or_rate},
            {"power_r2", outcome.vertical->power_law.r_squared},
            {"exponential_r2", outcome.vertical->exponential.r_squared},
            {"ambiguous", outcome.vertical->ambiguous}};
    }
    j["tolerance"] = outcome.tolerance;
    j["verdict"] = outcome.verdict;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// verification suites

namespace {

struct SequenceCache {
    std::map<std::string, SequencePtr> cache;
    SequencePtr get(const std::string& name, std::int64_t n) {
        const std::string key = name + "/" + std::to_string(n);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto seq = built_in_sequence(name, n);
        cache.emplace(key, seq);
        return seq;
    }
};

enum class RowKind { TwoSided, UpperBound, LowerBound, ExponentialModel };

void finish_row(VerifyRowResult& row, RowKind kind) {
    if (!row.estimated) {
        row.pass = false;
        return;
    }
    switch (kind) {
        case RowKind::TwoSided:
            row.difference = std::abs(*row.estimated - *row.predicted);
            row.pass = *row.difference <= row.tolerance;
            break;
        case RowKind::UpperBound:
            row.difference = *row.estimated - *row.predicted;
            row.pass = *row.estimated <= *row.predicted + row.tolerance;
            break;
        case RowKind::LowerBound:
            row.difference = *row.predicted - *row.estimated;
            row.pass = *row.estimated >= *row.predicted - row.tolerance;
            break;
        case RowKind::ExponentialModel:
            row.pass = *row.estimated >= *row.predicted;
            break;
    }
}

}  // namespace

VerifyOutcome run_verify(VerifySuite suite, std::ostream* log) {
    VerifyOutcome outcome;
    SequenceCache seqs;
    const std::int64_t kBig = std::int64_t(1) << 17;
    const std::int64_t kLattice = std::int64_t(1) << 18;

    auto add = [&](VerifyRowResult row) {
        if (log) {
            (*log) << (row.pass ? "[PASS] " : "[FAIL] ") << row.id << "  " << row.description;
            if (row.predicted && row.estimated) {
                (*log) << "  predicted=" << format_double(*row.predicted)
                       << " estimated=" << format_double(*row.estimated);
            }
            (*log) << "\n";
            log->flush();
        }
        outcome.rows.push_back(std::move(row));
    };

    auto cone_row = [&](const std::string& id, const std::string& series, std::int64_t n,
                        double alpha, const ProbePoint& pt, double predicted, double tol,
                        ConeGeometry geom) {
        VerifyRowResult row;
        row.id = id;
        row.description = series + " alpha=" + format_double(alpha) + " at " + pt.str() +
                          (geom == ConeGeometry::Parabolic ? " (parabolic wavelet scan)"
                                                           : " (cone wavelet scan)");
        row.predicted = predicted;
        row.tolerance = tol;
        try {
            ConeScanOptions opts;
            opts.geometry = geom;
            const JRange range = geom == ConeGeometry::Parabolic ? JRange{6, 18} : JRange{6, 16};
            auto seq = seqs.get(series, n);
            const ScaleScan scan = cone_scan(*seq, alpha, pt.value(), range, opts);
            const ExponentEstimate est = estimate_exponent(scan);
            row.estimated = est.slope;
            row.detail = "r2=" + format_double(est.r_squared) +
                         " n=" + std::to_string(est.n_points);
        } catch (const std::exception& e) {
            row.detail = e.what();
        }
        finish_row(row, RowKind::TwoSided);
        add(std::move(row));
    };

    // --- fixture recovery (quick + full) ---
    {
        Fixture chirp = Fixture::parse("chirp4");
        Fixture cusp = Fixture::parse("power_cusp");

        auto fixture_row = [&](const std::string& id, const std::string& desc, double predicted,
                               double tol, auto&& estimator) {
            VerifyRowResult row;
            row.id = id;
            row.description = desc;
            row.predicted = predicted;
            row.tolerance = tol;
            try {
                row.estimated = estimator();
            } catch (const std::exception& e) {
                row.detail = e.what();
            }
            finish_row(row, RowKind::TwoSided);
            add(std::move(row));
        };

        fixture_row("fixture.chirp4.beta", "chirp4 pointwise exponent via oscillation (m=5)", 4.0,
                    0.3, [&] {
                        return estimate_exponent(
                                   oscillation_scan(chirp.evaluator(0), 0.0, 5, {5, 16}))
                            .slope;
                    });
        fixture_row("fixture.chirp4.beta_star",
                    "chirp4 restricted exponent via first differences of f'", 2.0, 0.2, [&] {
                        const ScaleScan scan =
                            oscillation_scan(chirp.evaluator(1), 0.0, 1, {5, 16});
                        return 1.0 + std::min(1.0, estimate_exponent(scan).slope);
                    });
        fixture_row("fixture.chirp4.beta_starstar", "chirp4 local exponent via pair scan (k=1)",
                    4.0 / 3.0, 0.15, [&] {
                        const ScaleScan scan =
                            local_pair_scan(chirp.evaluator(1), 1, 0.0, {2, 8});
                        return 1.0 + estimate_exponent(scan).slope;
                    });
        fixture_row("fixture.power_cusp.beta", "power cusp s=1/2 via oscillation (m=1)", 0.5, 0.05,
                    [&] {
                        return estimate_exponent(
                                   oscillation_scan(cusp.evaluator(0), 0.0, 1, {5, 16}))
                            .slope;
                    });
        fixture_row("fixture.power_cusp.beta_star",
                    "power cusp s=1/2 restricted exponent (k=0 differences)", 0.5, 0.05, [&] {
                        const ScaleScan scan =
                            oscillation_scan(cusp.evaluator(0), 0.0, 1, {5, 16});
                        return std::min(1.0, estimate_exponent(scan).slope);
                    });
        fixture_row("fixture.power_cusp.beta_starstar", "power cusp s=1/2 local pair scan (k=0)",
                    0.5, 0.05 + 0.1, [&] {
                        const ScaleScan scan =
                            local_pair_scan(cusp.evaluator(0), 0, 0.0, {2, 8});
                        return estimate_exponent(scan).slope;
                    });
    }

    const ProbePoint sqrt2m1 = ProbePoint::parse("sqrt2m1");
    const ProbePoint golden = ProbePoint::parse("golden");
    const ProbePoint zero = ProbePoint::parse("0");

    // --- cusp forms at irrationals ---
    cone_row("irrational.elliptic14.sqrt2m1", "elliptic14", kBig, 1.75, sqrt2m1, 0.75, 0.10,
             ConeGeometry::Linear);
    cone_row("irrational.theta12.sqrt2m1", "theta12", kLattice, 1.0, sqrt2m1, 0.75, 0.10,
             ConeGeometry::Linear);
    if (suite == VerifySuite::Full) {
        cone_row("irrational.elliptic14.golden", "elliptic14", kBig, 1.75, golden, 0.75, 0.10,
                 ConeGeometry::Linear);
        cone_row("irrational.theta12.golden", "theta12", kLattice, 1.0, golden, 0.75, 0.10,
                 ConeGeometry::Linear);
        cone_row("irrational.harmonic.sqrt2m1", "harmonic_theta", kLattice, 3.25, sqrt2m1, 0.75,
                 0.10, ConeGeometry::Linear);
        cone_row("irrational.harmonic.golden", "harmonic_theta", kLattice, 3.25, golden, 0.75,
                 0.10, ConeGeometry::Linear);
    }

    // --- non-cuspidal rationals ---
    cone_row("rational.jacobi.0", "jacobi_theta", kLattice, 1.0, zero, 0.5, 0.10,
             ConeGeometry::Linear);
    cone_row("rational.eisenstein4.0", "eisenstein4", kBig, 5.0, zero, 1.0, 0.10,
             ConeGeometry::Linear);
    if (suite == VerifySuite::Full) {
        cone_row("rational.jacobi.1_3", "jacobi_theta", kLattice, 1.0, ProbePoint::parse("1/3"),
                 0.5, 0.10, ConeGeometry::Linear);
    }

    // --- cusp forms at rationals (parabolic band) ---
    if (suite == VerifySuite::Full) {
        cone_row("rational.harmonic.0", "harmonic_theta", kLattice, 3.25, zero, 1.5, 0.2,
                 ConeGeometry::Parabolic);
        cone_row("rational.harmonic.1_2", "harmonic_theta", kLattice, 3.25,
                 ProbePoint::parse("1/2"), 1.5, 0.2, ConeGeometry::Parabolic);
        {
            VerifyRowResult row;
            row.id = "rational.elliptic14.0";
            row.description = "elliptic14 alpha=7/4 at 0, parabolic scan (differentiable side)";
            row.predicted = 1.2;
            row.tolerance = 0.0;
            try {
                ConeScanOptions opts;
                opts.geometry = ConeGeometry::Parabolic;
                auto seq = seqs.get("elliptic14", kBig);
                const ScaleScan scan = cone_scan(*seq, 1.75, 0.0, {4, 15}, opts);
                row.estimated = estimate_exponent(scan).slope;
            } catch (const std::exception& e) {
                row.detail = e.what();
            }
            finish_row(row, RowKind::LowerBound);
            add(std::move(row));
        }
    }

    // --- vertical scans ---
    {
        VerifyRowResult row;
        row.id = "vertical.jacobi.1_2";
        row.description = "jacobi_theta at 1/2: exponential decay model, r2 >= 0.99";
        row.predicted = 0.99;
        row.tolerance = 0.0;
        try {
            auto seq = seqs.get("jacobi_theta", kLattice);
            const VerticalScan vs = vertical_scan(*seq, 0.5);
            row.estimated = vs.exponential.r_squared;
            row.detail = std::string("model=") +
                         (vs.chosen.model == DecayFit::Model::Exponential ? "exponential"
                                                                          : "power_law") +
                         " rate=" + format_double(vs.exponential.exponent_or_rate);
            if (vs.chosen.model != DecayFit::Model::Exponential) row.estimated = 0.0;
        } catch (const std::exception& e) {
            row.detail = e.what();
        }
        finish_row(row, RowKind::ExponentialModel);
        add(std::move(row));
    }
    if (suite == VerifySuite::Full) {
        {
            VerifyRowResult row;
            row.id = "vertical.elliptic14.0";
            row.description = "elliptic14 at 0: exponential decay model selected";
            row.predicted = 0.9;
            row.tolerance = 0.0;
            try {
                auto seq = seqs.get("elliptic14", kBig);
                const VerticalScan vs = vertical_scan(*seq, 0.0);
                row.estimated =
                    vs.chosen.model == DecayFit::Model::Exponential ? vs.exponential.r_squared : 0.0;
                row.detail = "rate=" + format_double(vs.exponential.exponent_or_rate);
            } catch (const std::exception& e) {
                row.detail = e.what();
            }
            finish_row(row, RowKind::ExponentialModel);
            add(std::move(row));
        }
        {
            VerifyRowResult row;
            row.id = "vertical.elliptic14.sqrt2m1";
            row.description = "elliptic14 at sqrt(2)-1: power-law exponent -1";
            row.predicted = -1.0;
            row.tolerance = 0.15;
            try {
                auto seq = seqs.get("elliptic14", kBig);
                const VerticalScan vs = vertical_scan(*seq, sqrt2m1.value(), {2, 14});
                row.estimated = vs.power_law.exponent_or_rate;
                row.detail = std::string("model=") +
                             (vs.chosen.model == DecayFit::Model::PowerLaw ? "power_law"
                                                                           : "exponential");
                if (vs.chosen.model != DecayFit::Model::PowerLaw) row.estimated.reset();
            } catch (const std::exception& e) {
                row.detail = e.what();
            }
            finish_row(row, RowKind::TwoSided);
            add(std::move(row));
        }
        {
            VerifyRowResult row;
            row.id = "vertical.jacobi.0";
            row.description = "jacobi_theta at 0: power-law exponent -1/2";
            row.predicted = -0.5;
            row.tolerance = 0.15;
            try {
                auto seq = seqs.get("jacobi_theta", kLattice);
                const VerticalScan vs = vertical_scan(*seq, 0.0, {2, 14});
                row.estimated = vs.power_law.exponent_or_rate;
            } catch (const std::exception& e) {
                row.detail = e.what();
            }
            finish_row(row, RowKind::TwoSided);
            add(std::move(row));
        }
    }

    // --- partial-sum growth (full) ---
    if (suite == VerifySuite::Full) {
        auto growth_row = [&](const std::string& series, std::int64_t n, double gamma) {
            VerifyRowResult row;
            row.id = "growth." + series;
            row.description = series + " partial-sum slope <= gamma + 0.15";
            row.predicted = gamma;
            row.tolerance = 0.15;
            try {
                std::vector<std::int64_t> sizes;
                for (std::int64_t v = 1024; v <= n; v *= 2) sizes.push_back(v);
                auto seq = seqs.get(series, n);
                row.estimated = partial_sum_growth(*seq, sizes).gamma_estimate.slope;
            } catch (const std::exception& e) {
                row.detail = e.what();
            }
            finish_row(row, RowKind::UpperBound);
            add(std::move(row));
        };
        growth_row("elliptic14", kBig, 1.0);
        growth_row("theta12", kBig, 0.25);
        growth_row("harmonic_theta", kBig, 2.5);

        auto l2_row = [&](const std::string& series, std::int64_t n, double r) {
            VerifyRowResult row;
            row.id = "l2band." + series;
            row.description = series + " L2 energy ratio band <= 4 over N = 2^10..2^14";
            row.predicted = 4.0;
            row.tolerance = 0.0;
            try {
                std::vector<std::int64_t> sizes = {1024, 2048, 4096, 8192, 16384};
                auto seq = seqs.get(series, n);
                const L2EnergyBand band = l2_energy_check(*seq, r, sizes);
                row.estimated = band.max_ratio / band.min_ratio;
            } catch (const std::exception& e) {
                row.detail = e.what();
            }
            finish_row(row, RowKind::UpperBound);
            add(std::move(row));
        };
        l2_row("elliptic14", kBig, 2.0);
        l2_row("harmonic_theta", kLattice, 5.0);
    }

    // --- prediction engine exactness ---
    {
        VerifyRowResult row;
        row.id = "predict.exact";
        row.description = "closed-form prediction values reproduced exactly in rationals";
        row.tolerance = 0.0;
        try {
            bool ok = true;
            std::string why;
            auto expect = [&](const std::optional<Rational>& got, const Rational& want,
                              const std::string& label) {
                if (!got || !(*got == want)) {
                    ok = false;
                    why += label + " ";
                }
            };
            auto ell = seqs.get("elliptic14", 4);
            auto har = seqs.get("harmonic_theta", 4);
            auto jac = seqs.get("jacobi_theta", 4);
            auto eis = seqs.get("eisenstein4", 4);

            auto p1 = predict_exponents(*ell, Rational(7, 4), sqrt2m1);
            expect(p1.beta, Rational(3, 4), "elliptic.beta");
            expect(p1.beta_star, Rational(3, 4), "elliptic.beta*");
            expect(p1.beta_starstar, Rational(3, 4), "elliptic.beta**");

            auto p2 = predict_exponents(*har, Rational(13, 4), zero);
            expect(p2.beta, Rational(3, 2), "harmonic.beta");
            expect(p2.beta_star, Rational(1), "harmonic.beta*");
            expect(p2.beta_starstar, Rational(3, 4), "harmonic.beta**");

            auto p3 = predict_exponents(*jac, Rational(1), ProbePoint::parse("1/3"));
            expect(p3.beta, Rational(1, 2), "jacobi.beta");

            auto p4 = predict_exponents(*eis, Rational(5), ProbePoint::parse("1/3"));
            expect(p4.beta, Rational(1), "eisenstein.beta");

            auto sp = predict_spectrum(*har, Rational(13, 4));
            if (!(sp.applicable && sp.dimension_by_exponent.size() == 2 &&
                  sp.dimension_by_exponent[0].first == Rational(3, 4) &&
                  sp.dimension_by_exponent[0].second == 1 &&
                  sp.dimension_by_exponent[1].first == Rational(3, 2) &&
                  sp.dimension_by_exponent[1].second == 0)) {
                ok = false;
                why += "harmonic.spectrum ";
            }
            row.estimated = ok ? 1.0 : 0.0;
            row.predicted = 1.0;
            row.detail = why;
        } catch (const std::exception& e) {
            row.detail = e.what();
            row.predicted = 1.0;
        }
        finish_row(row, RowKind::TwoSided);
        add(std::move(row));
    }

    outcome.all_pass = true;
    for (const auto& row : outcome.rows) outcome.all_pass = outcome.all_pass && row.pass;
    return outcome;
}

std::string verify_report_json(const VerifyOutcome& outcome) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : outcome.rows) {
        ordered_json j;
        j["id"] = r.id;
        j["description"] = r.description;
        j["predicted"] = r.predicted ? ordered_json(*r.predicted) : ordered_json(nullptr);
        j["estimated"] = r.estimated ? ordered_json(*r.estimated) : ordered_json(nullptr);
        j["difference"] = r.difference ? ordered_json(*r.difference) : ordered_json(nullptr);
        j["tolerance"] = r.tolerance;
        j["verdict"] = r.pass ? "pass" : "fail";
        if (!r.detail.empty()) j["detail"] = r.detail;
        rows.push_back(j);
    }
    ordered_json j;
    j["rows"] = rows;
    j["all_pass"] = outcome.all_pass;
    return j.dump(2) + "\n";
}

std::string verify_report_text(const VerifyOutcome& outcome) {
    std::string out;
    for (const auto& r : outcome.rows) {
        out += r.pass ? "[PASS] " : "[FAIL] ";
        out += r.id;
        if (r.predicted && r.estimated) {
            out += "  predicted=" + format_double(*r.predicted) +
                   " estimated=" + format_double(*r.estimated);
        }
        out += "  " + r.description + "\n";
    }
    out += outcome.all_pass ? "ALL PASS\n" : "FAILURES PRESENT\n";
    return out;
}

}  // namespace fracreg
