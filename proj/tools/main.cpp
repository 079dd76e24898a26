// fracreg: fractional integrals of modular Fourier series and numerical
// Holder-exponent estimation.
//
// Subcommands: coeffs | plot | estimate | verify | figures.  Exit codes:
// 0 success, 1 verification failure, 2 usage error.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fracreg/coefficients.hpp"
#include "fracreg/estimators.hpp"
#include "fracreg/figures.hpp"
#include "fracreg/io.hpp"
#include "fracreg/predict.hpp"
#include "fracreg/reports.hpp"
#include "fracreg/series.hpp"

namespace {

using namespace fracreg;

constexpr std::int64_t kDefaultTerms = std::int64_t(1) << 17;

SequencePtr load_series(const std::string& name, const std::string& file, std::int64_t n_terms) {
    if (!file.empty()) return read_coefficient_cache(file);
    return built_in_sequence(name, n_terms);
}

std::optional<JRange> parse_scales(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw CLI::ValidationError("--scales", "expected j0:j1");
    }
    JRange r{std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    if (r.j1 < r.j0) throw CLI::ValidationError("--scales", "need j0 <= j1");
    return r;
}

int cmd_coeffs(const std::string& name, std::int64_t n, const std::string& out) {
    auto seq = built_in_sequence(name, n);
    write_coefficient_cache(*seq, out);
    std::cout << "wrote " << out << " (" << seq->name << ", N = " << seq->length() << ")\n";
    return 0;
}

int cmd_figures(const std::string& out_dir) {
    for (const auto& preset : figure_presets()) {
        const FigureOutput files = render_figure(preset, out_dir + "/" + preset.id);
        std::cout << preset.id << ": " << files.svg_path << " " << files.csv_path << "\n";
    }
    return 0;
}

int cmd_plot(const std::string& preset_id, const std::string& series, const std::string& file,
             double alpha, const std::string& flavor, double lo, double hi, std::int64_t samples,
             std::int64_t n_terms, const std::string& out_base) {
    FigurePreset preset;
    if (!preset_id.empty()) {
        preset = figure_preset(preset_id);
    } else {
        preset.id = "custom";
        preset.series = series;
        preset.alpha = alpha;
        preset.flavor = parse_flavor(flavor);
        preset.x_lo = lo;
        preset.x_hi = hi;
        preset.samples = samples;
        preset.series_terms = n_terms;
        preset.caption = series + " alpha=" + format_double(alpha) + " (" + flavor + ")";
    }
    if (!file.empty()) {
        auto seq = read_coefficient_cache(file);
        SeriesSpec spec(seq, preset.alpha, preset.flavor);
        if (spec.conditionally_convergent()) {
            std::cerr << "note: alpha below the absolute-convergence threshold; "
                         "evaluation relies on partial-summation tail control\n";
        }
        const double step = preset.samples > 1
                                ? (preset.x_hi - preset.x_lo) / static_cast<double>(preset.samples - 1)
                                : 1.0;
        SampleGrid grid = eval_grid_direct(spec, preset.x_lo, step, preset.samples,
                                           std::min<std::int64_t>(preset.series_terms, spec.max_terms()));
        atomic_write_file(out_base + ".csv", grid_to_csv(grid));
        atomic_write_file(out_base + ".svg", grid_to_svg(grid, preset));
    } else {
        render_figure(preset, out_base);
    }
    std::cout << "wrote " << out_base << ".svg and " << out_base << ".csv\n";
    return 0;
}

int cmd_estimate(const std::string& series, const std::string& file, const std::string& fixture,
                 const std::string& alpha_text, const std::string& point_text,
                 const std::string& method, const std::string& geometry,
                 const std::string& scales, std::int64_t n_terms, double tolerance,
                 const std::string& out_json, const std::string& out_scan) {
    EstimateRequest req;
    req.method = parse_method(method);
    req.point = ProbePoint::parse(point_text);
    if (!fixture.empty()) {
        req.fixture = Fixture::parse(fixture);
    } else {
        req.alpha = Rational::parse(alpha_text);
        req.coeffs = load_series(series, file, n_terms);
        SeriesSpec probe(req.coeffs, req.alpha.to_double(), SeriesFlavor::Complex);
        if (probe.conditionally_convergent()) {
            std::cerr << "note: alpha below the absolute-convergence threshold of "
                      << req.coeffs->name << "; tail handled by partial summation\n";
        }
    }
    if (!geometry.empty()) {
        if (geometry == "linear") {
            req.geometry = ConeGeometry::Linear;
        } else if (geometry == "parabolic") {
            req.geometry = ConeGeometry::Parabolic;
        } else if (geometry != "auto") {
            throw CLI::ValidationError("--geometry", "expected auto|linear|parabolic");
        }
    }
    req.scales = parse_scales(scales);
    if (tolerance > 0) req.tolerance = tolerance;

    const EstimateOutcome outcome = run_estimate(req);
    const std::string report = estimate_report_json(req, outcome);
    if (out_json.empty()) {
        std::cout << report;
    } else {
        atomic_write_file(out_json, report);
        std::cout << "wrote " << out_json << "\n";
    }
    if (!out_scan.empty()) {
        atomic_write_file(out_scan, scan_to_csv(outcome.scan));
        std::cout << "wrote " << out_scan << "\n";
    }
    std::cout << "estimate = " << format_double(outcome.estimate.slope)
              << "  verdict = " << outcome.verdict << "\n";
    return 0;
}

int cmd_verify(const std::string& suite_name, const std::string& out_json) {
    const VerifySuite suite = suite_name == "full" ? VerifySuite::Full : VerifySuite::Quick;
    const VerifyOutcome outcome = run_verify(suite, &std::cout);
    if (!out_json.empty()) {
        atomic_write_file(out_json, verify_report_json(outcome));
        std::cout << "wrote " << out_json << "\n";
    }
    std::cout << (outcome.all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return outcome.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional integrals of Fourier series: evaluation, plots, and "
                 "Holder-exponent verification"};
    app.require_subcommand(1);

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "materialize a coefficient sequence to a cache file");
    std::string co_series = "elliptic14", co_out = "coeffs.txt";
    std::int64_t co_n = 1024;
    coeffs->add_option("--series", co_series, "built-in sequence name")->required();
    coeffs->add_option("--terms", co_n, "number of coefficients");
    coeffs->add_option("--out", co_out, "output path")->required();

    // plot
    auto* plot = app.add_subcommand("plot", "render one figure preset or a custom series plot");
    std::string pl_preset, pl_series = "elliptic14", pl_file, pl_flavor = "sine", pl_out = "plot";
    double pl_alpha = 1.75, pl_lo = 0.0, pl_hi = 0.5;
    std::int64_t pl_samples = 4096, pl_terms = 16384;
    plot->add_option("--preset", pl_preset, "fig1..fig6");
    plot->add_option("--series", pl_series, "built-in sequence name");
    plot->add_option("--series-file", pl_file, "coefficient cache to plot instead");
    plot->add_option("--alpha", pl_alpha, "fractional-integral exponent");
    plot->add_option("--flavor", pl_flavor, "complex|cosine|sine");
    plot->add_option("--lo", pl_lo, "range start");
    plot->add_option("--hi", pl_hi, "range end");
    plot->add_option("--samples", pl_samples, "sample count");
    plot->add_option("--terms", pl_terms, "series truncation");
    plot->add_option("--out", pl_out, "output base path (.svg/.csv appended)")->required();

    // estimate
    auto* est = app.add_subcommand("estimate", "estimate a Holder exponent at one point");
    std::string es_series = "elliptic14", es_file, es_fixture, es_alpha = "7/4", es_point = "sqrt2m1";
    std::string es_method = "cone", es_geometry = "auto", es_scales, es_out, es_scan;
    std::int64_t es_terms = kDefaultTerms;
    double es_tol = 0.0;
    est->add_option("--series", es_series, "built-in sequence name");
    est->add_option("--series-file", es_file, "coefficient cache to load instead");
    est->add_option("--fixture", es_fixture, "chirp4|power_cusp|extreme_chirp");
    est->add_option("--alpha", es_alpha, "exponent alpha as p/q or integer");
    est->add_option("--point", es_point, "p/q, sqrt2m1, or golden");
    est->add_option("--method", es_method, "cone|oscillation|local|vertical");
    est->add_option("--geometry", es_geometry, "auto|linear|parabolic (cone only)");
    est->add_option("--scales", es_scales, "octave range j0:j1");
    est->add_option("--terms", es_terms, "coefficients to materialize");
    est->add_option("--tolerance", es_tol, "pass/fail tolerance override");
    est->add_option("--out", es_out, "report JSON path (stdout when absent)");
    est->add_option("--out-scan", es_scan, "scan CSV path");

    // verify
    auto* verify = app.add_subcommand("verify", "run the prediction-vs-estimate verification table");
    std::string ve_suite = "quick", ve_out;
    verify->add_option("--suite", ve_suite, "quick|full");
    verify->add_option("--out", ve_out, "verification report JSON path");

    // figures
    auto* figs = app.add_subcommand("figures", "render all six figure presets");
    std::string fg_dir = ".";
    figs->add_option("--out-dir", fg_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (coeffs->parsed()) return cmd_coeffs(co_series, co_n, co_out);
        if (plot->parsed()) {
            return cmd_plot(pl_preset, pl_series, pl_file, pl_alpha, pl_flavor, pl_lo, pl_hi,
                            pl_samples, pl_terms, pl_out);
        }
        if (est->parsed()) {
            return cmd_estimate(es_series, es_file, es_fixture, es_alpha, es_point, es_method,
                                es_geometry, es_scales, es_terms, es_tol, es_out, es_scan);
        }
        if (verify->parsed()) return cmd_verify(ve_suite, ve_out);
        if (figs->parsed()) return cmd_figures(fg_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
