#pragma once

#include <string>
#include <vector>

#include "fracreg/series.hpp"

namespace fracreg {

// One of the six built-in plots.  Ranges are fixed; fig5's window is a
// documented choice (the source leaves it unspecified) and fig6 uses the
// e(kx) argument convention throughout.
struct FigurePreset {
    std::string id;       // "fig1".."fig6"
    std::string series;   // built-in sequence name
    double alpha;         // exponent applied to the index
    SeriesFlavor flavor;
    double x_lo, x_hi;
    std::int64_t samples;
    std::int64_t series_terms;
    std::string caption;
};

const std::vector<FigurePreset>& figure_presets();
const FigurePreset& figure_preset(const std::string& id);

// Grid CSV: header x,re,im; 17 significant digits per field.
std::string grid_to_csv(const SampleGrid& grid);

// 900x600 polyline SVG of the real part, axes and caption included; a
// metadata comment carries the generating parameters.
std::string grid_to_svg(const SampleGrid& grid, const FigurePreset& preset);

// Evaluate and write <out_base>.svg and <out_base>.csv; deterministic bytes.
struct FigureOutput {
    std::string svg_path;
    std::string csv_path;
};
FigureOutput render_figure(const FigurePreset& preset, const std::string& out_base);

}  // namespace fracreg
