#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracreg/estimators.hpp"
#include "fracreg/io.hpp"

namespace fracreg {

double ScaleScan::param(const std::string& key, double fallback) const {
    for (const auto& [k, v] : params) {
        if (k == key) return v;
    }
    return fallback;
}

std::size_t ScaleScan::usable_count() const {
    std::size_t n = 0;
    for (const auto& p : points) n += p.usable ? 1 : 0;
    return n;
}

std::string scan_to_csv(const ScaleScan& scan) {
    std::string out = "j,log2_scale,log2_modulus\n";
    for (const auto& p : scan.points) {
        out += format_double(p.j);
        out += ',';
        out += format_double(p.log2_scale);
        out += ',';
        out += format_double(p.usable ? p.log2_modulus : -std::numeric_limits<double>::infinity());
        out += '\n';
    }
    return out;
}

namespace {

struct XY {
    double x, y;
};

ExponentEstimate ols(const std::vector<XY>& pts, double j_min, double j_max) {
    const int n = static_cast<int>(pts.size());
    if (n < 4) {
        throw std::runtime_error("fit_slope: fewer than 4 usable points in the fit window");
    }
    double sx = 0, sy = 0;
    for (const auto& p : pts) {
        sx += p.x;
        sy += p.y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& p : pts) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
    }
    if (sxx <= 0) throw std::runtime_error("fit_slope: degenerate window (single scale)");
    const double slope = sxy / sxx;
    const double icept = my - slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (const auto& p : pts) {
        const double r = p.y - (slope * p.x + icept);
        ss_res += r * r;
        ss_tot += (p.y - my) * (p.y - my);
    }
    ExponentEstimate est;
    est.slope = slope;
    est.stderr_value = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    est.r_squared = ss_tot > 1e-30 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    est.j_min = j_min;
    est.j_max = j_max;
    est.n_points = n;
    return est;
}

std::vector<XY> usable_xy(const ScaleScan& scan, std::optional<FitWindow> window) {
    std::vector<XY> pts;
    for (const auto& p : scan.points) {
        if (!p.usable) continue;
        if (window && (p.j < window->j_min - 1e-9 || p.j > window->j_max + 1e-9)) continue;
        pts.push_back({p.log2_scale, p.log2_modulus});
    }
    return pts;
}

}  // namespace

ExponentEstimate fit_slope(const ScaleScan& scan, std::optional<FitWindow> window) {
    const auto pts = usable_xy(scan, window);
    double j_min = window ? window->j_min : 0.0;
    double j_max = window ? window->j_max : 0.0;
    if (!window) {
        bool first = true;
        for (const auto& p : scan.points) {
            if (!p.usable) continue;
            j_min = first ? p.j : std::min(j_min, p.j);
            j_max = first ? p.j : std::max(j_max, p.j);
            first = false;
        }
    }
    return ols(pts, j_min, j_max);
}

FitWindow finest_octaves(const ScaleScan& scan, double octaves) {
    double j_max = -std::numeric_limits<double>::infinity();
    for (const auto& p : scan.points) {
        if (p.usable) j_max = std::max(j_max, p.j);
    }
    if (!std::isfinite(j_max)) {
        throw std::runtime_error("finest_octaves: scan has no usable points");
    }
    return {j_max - octaves, j_max};
}

ExponentEstimate fit_upper_hull(const ScaleScan& scan) {
    std::vector<XY> pts = usable_xy(scan, std::nullopt);
    if (pts.size() < 4) throw std::runtime_error("fit_upper_hull: fewer than 4 usable points");
    std::sort(pts.begin(), pts.end(), [](const XY& a, const XY& b) { return a.x < b.x; });

    std::vector<XY> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const XY& a = hull[hull.size() - 2];
            const XY& b = hull[hull.size() - 1];
            // pop b when it lies under the chord a -> p
            if ((b.y - a.y) * (p.x - a.x) <= (p.y - a.y) * (b.x - a.x)) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }
    std::vector<XY> inner = hull;
    if (inner.size() >= 6) {
        inner.erase(inner.begin());
        inner.pop_back();
    }
    const std::vector<XY>& fitted = inner.size() >= 4 ? inner : (hull.size() >= 4 ? hull : pts);

    double j_min = std::numeric_limits<double>::infinity(), j_max = -j_min;
    for (const auto& p : scan.points) {
        if (!p.usable) continue;
        j_min = std::min(j_min, p.j);
        j_max = std::max(j_max, p.j);
    }
    return ols(fitted, j_min, j_max);
}

ExponentEstimate limit_estimate(const ScaleScan& scan, double tail_fraction) {
    std::vector<ScanPoint> usable;
    for (const auto& p : scan.points) {
        if (p.usable) usable.push_back(p);
    }
    if (usable.size() < 4) throw std::runtime_error("limit_estimate: fewer than 4 usable points");
    std::sort(usable.begin(), usable.end(),
              [](const ScanPoint& a, const ScanPoint& b) { return a.j < b.j; });

    const std::size_t tail_n = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(usable.size()))));
    const std::size_t start = usable.size() - std::min(tail_n, usable.size());

    std::vector<double> tail;
    for (std::size_t i = start; i < usable.size(); ++i) tail.push_back(usable[i].log2_modulus);
    std::sort(tail.begin(), tail.end());
    const std::size_t n = tail.size();
    const double median = n % 2 ? tail[n / 2] : 0.5 * (tail[n / 2 - 1] + tail[n / 2]);

    double var = 0.0;
    for (double v : tail) var += (v - median) * (v - median);
    var /= static_cast<double>(n);

    double mean_all = 0.0;
    for (const auto& p : usable) mean_all += p.log2_modulus;
    mean_all /= static_cast<double>(usable.size());
    double var_all = 0.0;
    for (const auto& p : usable) {
        var_all += (p.log2_modulus - mean_all) * (p.log2_modulus - mean_all);
    }
    var_all /= static_cast<double>(usable.size());

    ExponentEstimate est;
    est.slope = median;
    est.stderr_value = std::sqrt(var / static_cast<double>(n));
    est.r_squared = var_all > 1e-30 ? std::clamp(1.0 - var / var_all, 0.0, 1.0) : 1.0;
    est.j_min = usable[start].j;
    est.j_max = usable.back().j;
    est.n_points = static_cast<int>(n);
    return est;
}

ExponentEstimate estimate_exponent(const ScaleScan& scan, double window_octaves) {
    switch (scan.kind) {
        case ScanKind::Cone: {
            ExponentEstimate est = fit_slope(scan, finest_octaves(scan, window_octaves));
            if (scan.param("geometry", 0.0) != 0.0) {
                est.slope *= 2.0;
                est.stderr_value *= 2.0;
            }
            return est;
        }
        case ScanKind::Oscillation:
            return fit_slope(scan, finest_octaves(scan, window_octaves));
        case ScanKind::Vertical:
            return fit_upper_hull(scan);
        case ScanKind::PartialSum: {
            ExponentEstimate est = fit_slope(scan);
            est.slope = -est.slope;
            return est;
        }
        case ScanKind::LocalPair:
            return limit_estimate(scan);
    }
    throw std::logic_error("estimate_exponent: unknown scan kind");
}

}  // namespace fracreg
