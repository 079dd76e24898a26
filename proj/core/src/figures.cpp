#include "fracreg/figures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracreg/io.hpp"

namespace fracreg {

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = {
        {"fig1", "elliptic14", 1.75, SeriesFlavor::Sine, 0.0, 0.5, 8192, 16384,
         "Level-14 newform fractional integral, delta = 7/4, sine series on [0, 1/2]"},
        {"fig2", "elliptic14", 1.75, SeriesFlavor::Sine, 0.4042, 0.4242, 4096, 16384,
         "Zoom [0.4042, 0.4242] around sqrt(2) - 1 (uniform Holder exponent 3/4)"},
        {"fig3", "elliptic14", 1.75, SeriesFlavor::Sine, -0.05, 0.05, 4096, 16384,
         "Zoom [-0.05, 0.05]: smoother behavior near the rational point 0"},
        {"fig4", "theta12", 1.0, SeriesFlavor::Cosine, 0.0, 0.02, 4096, 65536,
         "Weight-1/2 theta cusp form, delta = 2 in the square index, on [0, 0.02]"},
        {"fig5", "jacobi_theta", 1.0, SeriesFlavor::Sine, 0.0, 0.02, 4096, 65536,
         "Riemann-type sine series of the Jacobi theta function; window [0, 0.02] "
         "chosen to parallel fig4"},
        {"fig6", "harmonic_theta", 3.25, SeriesFlavor::Cosine, -0.5, 0.5, 8192, 65536,
         "Weight-5 harmonic theta, alpha = 13/4, cosine series on [-1/2, 1/2]; "
         "argument convention e(kx) = exp(2 pi i k x)"},
    };
    return presets;
}

const FigurePreset& figure_preset(const std::string& id) {
    for (const auto& p : figure_presets()) {
        if (p.id == id) return p;
    }
    throw std::invalid_argument("unknown figure preset '" + id + "'");
}

std::string grid_to_csv(const SampleGrid& grid) {
    std::string out = "x,re,im\n";
    for (std::int64_t i = 0; i < grid.count; ++i) {
        const double x = grid.x_start + static_cast<double>(i) * grid.step;
        const auto& v = grid.values[static_cast<std::size_t>(i)];
        out += format_double(x);
        out += ',';
        out += format_double(v.real());
        out += ',';
        out += format_double(v.imag());
        out += '\n';
    }
    return out;
}

namespace {

std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string grid_to_svg(const SampleGrid& grid, const FigurePreset& preset) {
    constexpr double kWidth = 900.0, kHeight = 600.0;
    constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 60.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    double y_min = 0.0, y_max = 0.0;
    for (std::int64_t i = 0; i < grid.count; ++i) {
        const double v = grid.values[static_cast<std::size_t>(i)].real();
        if (i == 0 || v < y_min) y_min = v;
        if (i == 0 || v > y_max) y_max = v;
    }
    if (y_max - y_min < 1e-12) {
        y_min -= 1.0;
        y_max += 1.0;
    }
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    const double x_lo = grid.x_start;
    const double x_hi = grid.x_start + static_cast<double>(grid.count - 1) * grid.step;

    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

    std::string svg;
    svg.reserve(static_cast<std::size_t>(grid.count) * 14 + 2048);
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 900 600\" "
           "width=\"900\" height=\"600\">\n";
    svg += "<!-- fracreg:figure id=" + preset.id + " series=" + preset.series +
           " alpha=" + format_double(preset.alpha) + " flavor=" + flavor_name(preset.flavor) +
           " n_terms=" + std::to_string(grid.truncation_n) +
           " x_lo=" + format_double(preset.x_lo) + " x_hi=" + format_double(preset.x_hi) +
           " samples=" + std::to_string(grid.count) + " -->\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"900\" height=\"600\" fill=\"white\"/>\n";

    // axes box + ticks at the range endpoints and zero line when visible
    svg += "<rect x=\"" + format_coord(kLeft) + "\" y=\"" + format_coord(kTop) + "\" width=\"" +
           format_coord(plot_w) + "\" height=\"" + format_coord(plot_h) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (y_min < 0.0 && y_max > 0.0) {
        svg += "<line x1=\"" + format_coord(kLeft) + "\" y1=\"" + format_coord(py(0.0)) +
               "\" x2=\"" + format_coord(kLeft + plot_w) + "\" y2=\"" + format_coord(py(0.0)) +
               "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    }
    svg += "<text x=\"" + format_coord(kLeft) + "\" y=\"" + format_coord(kHeight - 38.0) +
           "\" font-family=\"monospace\" font-size=\"13\">" + format_tick(x_lo) + "</text>\n";
    svg += "<text x=\"" + format_coord(kLeft + plot_w - 60.0) + "\" y=\"" +
           format_coord(kHeight - 38.0) + "\" font-family=\"monospace\" font-size=\"13\">" +
           format_tick(x_hi) + "</text>\n";
    svg += "<text x=\"6\" y=\"" + format_coord(kTop + 12.0) +
           "\" font-family=\"monospace\" font-size=\"13\">" + format_tick(y_max) + "</text>\n";
    svg += "<text x=\"6\" y=\"" + format_coord(kTop + plot_h) +
           "\" font-family=\"monospace\" font-size=\"13\">" + format_tick(y_min) + "</text>\n";

    svg += "<polyline fill=\"none\" stroke=\"#1040a0\" stroke-width=\"0.8\" points=\"";
    for (std::int64_t i = 0; i < grid.count; ++i) {
        const double x = grid.x_start + static_cast<double>(i) * grid.step;
        const double y = grid.values[static_cast<std::size_t>(i)].real();
        if (i) svg += ' ';
        svg += format_coord(px(x));
        svg += ',';
        svg += format_coord(py(y));
    }
    svg += "\"/>\n";

    svg += "<text x=\"" + format_coord(kLeft) + "\" y=\"" + format_coord(kHeight - 14.0) +
           "\" font-family=\"sans-serif\" font-size=\"14\">" + preset.id + ": " + preset.caption +
           "</text>\n";
    svg += "</svg>\n";
    return svg;
}

FigureOutput render_figure(const FigurePreset& preset, const std::string& out_base) {
    auto coeffs = built_in_sequence(preset.series, preset.series_terms);
    SeriesSpec spec(coeffs, preset.alpha, preset.flavor);
    const double step =
        preset.samples > 1 ? (preset.x_hi - preset.x_lo) / static_cast<double>(preset.samples - 1)
                           : 1.0;
    SampleGrid grid = eval_grid_direct(spec, preset.x_lo, step, preset.samples,
                                       std::min(preset.series_terms, spec.max_terms()));

    FigureOutput out;
    out.svg_path = out_base + ".svg";
    out.csv_path = out_base + ".csv";
    atomic_write_file(out.csv_path, grid_to_csv(grid));
    atomic_write_file(out.svg_path, grid_to_svg(grid, preset));
    return out;
}

}  // namespace fracreg
