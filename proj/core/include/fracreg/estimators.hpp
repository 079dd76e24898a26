#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracreg/series.hpp"
#include "fracreg/wavelet.hpp"

namespace fracreg {

enum class ScanKind { Cone, Oscillation, Vertical, PartialSum, LocalPair };
enum class ConeGeometry { Linear, Parabolic };

struct ScanPoint {
    double j;             // octave index, scale = 2^-j
    double log2_scale;    // strictly decreasing along the scan
    double log2_modulus;  // for LocalPair scans: the per-interval exponent
    bool usable;          // false marks the zero/noise sentinel
};

struct ScaleScan {
    ScanKind kind = ScanKind::Cone;
    std::vector<ScanPoint> points;
    std::vector<std::pair<std::string, double>> params;  // insertion-ordered

    double param(const std::string& key, double fallback) const;
    std::size_t usable_count() const;
};

// CSV with header j,log2_scale,log2_modulus; sentinel rows print -inf.
std::string scan_to_csv(const ScaleScan& scan);

struct JRange {
    double j0;  // coarsest octave
    double j1;  // finest octave
};

// ---------------------------------------------------------------------------
// slope fitting

struct ExponentEstimate {
    double slope = 0.0;
    double stderr_value = 0.0;
    double r_squared = 0.0;
    double j_min = 0.0, j_max = 0.0;  // fit window (octave indices)
    int n_points = 0;
};

struct FitWindow {
    double j_min;
    double j_max;
};

// Ordinary least squares of log2_modulus against log2_scale over the usable
// points inside the window (all usable points when absent).  Positive slope
// means the modulus shrinks at fine scales.  Throws when fewer than 4 points
// are usable.
ExponentEstimate fit_slope(const ScaleScan& scan, std::optional<FitWindow> window = std::nullopt);

// Window covering the finest `octaves` octaves of usable points.
FitWindow finest_octaves(const ScaleScan& scan, double octaves = 8.0);

// OLS through the interior vertices of the upper concave hull; robust to the
// dips of oscillating vertical profiles.
ExponentEstimate fit_upper_hull(const ScaleScan& scan);

// Level estimate over the finest half of the points (median); used for
// LocalPair scans where the recorded value is already an exponent.
ExponentEstimate limit_estimate(const ScaleScan& scan, double tail_fraction = 0.5);

// Scan-kind aware exponent: linear cone/oscillation fit the finest octaves,
// a parabolic cone doubles the slope, partial-sum scans negate it, vertical
// scans use the hull fit and LocalPair the level estimate.
ExponentEstimate estimate_exponent(const ScaleScan& scan, double window_octaves = 8.0);

// ---------------------------------------------------------------------------
// scans

struct ConeScanOptions {
    double cone_width = 8.0;  // K: sweep |b - x0| <= K * y
    int sweep_points = 65;
    int scales_per_octave = 2;
    ConeGeometry geometry = ConeGeometry::Linear;
    // parabolic band |b - x0| = eta sqrt(y), eta log-spaced over [min, max]
    double eta_min = 0.25;
    double eta_max = 4.0;
    int eta_count = 17;
};

// Records log2 sup of |W(y, b)| over the cone per scale; the y^alpha factor
// makes the supremum scale like y^beta.  Throws when every modulus sits at
// the numerical floor.
ScaleScan cone_scan(const CoefficientSequence& coeffs, double alpha, double x0, JRange range,
                    const ConeScanOptions& opts = {});

// Same statistic for an arbitrary function, wavelet transform by quadrature.
ScaleScan cone_scan_function(const Evaluator& g, double alpha, double x0, JRange range,
                             const ConeScanOptions& opts = {},
                             const WaveletQuadratureOptions& quad = {});

struct OscillationOptions {
    int steps_per_octave = 16;
};

// log2 of sup_{h <= 2^-j} |forward difference of order m at x0|; the slope
// estimates min(beta(x0), m).
ScaleScan oscillation_scan(const Evaluator& f, double x0, int difference_order, JRange range,
                           const OscillationOptions& opts = {});

struct LocalPairOptions {
    int offsets_per_octave = 8;
    int extra_bins = 6;       // bins per interval: 2j + extra
    double allowance = 2.0;   // feasibility slack between coarse and fine bins
};

// Per interval I_j = (x0 - 2^-j, x0 + 2^-j), bisection on s for the largest
// exponent with |f(x) - f(y)| <= C |x-y|^s across separation-binned pairs;
// the limiting s estimates beta**(x0) - k for f = k-th derivative.
ScaleScan local_pair_scan(const Evaluator& kth_derivative, int derivative_order, double x0,
                          JRange range, const LocalPairOptions& opts = {});

struct DecayFit {
    enum class Model { PowerLaw, Exponential };
    Model model = Model::PowerLaw;
    double exponent_or_rate = 0.0;  // power: d log|f| / d log y;  exp: K of e^{-K/y}
    double r_squared = 0.0;
};

struct VerticalScan {
    ScaleScan scan;  // log2 |f(x0 + iy) - a0|
    DecayFit chosen;
    DecayFit power_law;
    DecayFit exponential;
    bool ambiguous = false;
};

struct VerticalOptions {
    int scales_per_octave = 4;
    double r2_margin = 0.05;  // exponential wins only by at least this much
};

// Vertical limit x0 + iy over dyadic scales.  The power-law exponent is read
// from the upper hull of log2|f - a0|; the exponential rate K fits log|f|
// against 1/y (cuspidal decay leaves no constant to subtract).
VerticalScan vertical_scan(const CoefficientSequence& coeffs, double x0, JRange range = {1, 14},
                           const VerticalOptions& opts = {});

struct PartialSumGrowth {
    ScaleScan scan;  // log2_scale = -log2 N, modulus = log2 max_x |S_N(x)|
    ExponentEstimate gamma_estimate;
};

// Growth of max_x |sum_{n<=N} a_n e(nx)| over a dyadic N list; the fitted
// slope estimates the partial-sum exponent gamma.
PartialSumGrowth partial_sum_growth(const CoefficientSequence& coeffs,
                                    const std::vector<std::int64_t>& n_list,
                                    std::int64_t grid_size = 512);

struct L2EnergyBand {
    std::vector<double> ratios;  // sum_{k<=N} |a_k|^2 / N^r per N
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

L2EnergyBand l2_energy_check(const CoefficientSequence& coeffs, double r,
                             const std::vector<std::int64_t>& n_list);

}  // namespace fracreg
