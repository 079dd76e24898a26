#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fracreg/estimators.hpp"

namespace fracreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kJTol = 1e-9;

// per-point acceptance for half-plane moduli: truncation must be marginal and
// the value must clear the cancellation floor
bool halfplane_usable(const HalfplaneSample& hs, double modulus) {
    return modulus > 0.0 && hs.tail_bound <= 0.05 * modulus && hs.roundoff <= 0.2 * modulus;
}

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    double value() const { return s + c; }
};

}  // namespace

ScaleScan cone_scan(const CoefficientSequence& coeffs, double alpha, double x0, JRange range,
                    const ConeScanOptions& opts) {
    if (!(opts.cone_width >= 0.0)) throw std::invalid_argument("cone_scan: K must be >= 0");
    if (range.j1 < range.j0) throw std::invalid_argument("cone_scan: empty scale range");
    const double log2_c = std::log2(std::abs(wavelet_constant(alpha)));

    ScaleScan scan;
    scan.kind = ScanKind::Cone;
    scan.params = {{"x0", x0},
                   {"alpha", alpha},
                   {"K", opts.cone_width},
                   {"geometry", opts.geometry == ConeGeometry::Parabolic ? 1.0 : 0.0},
                   {"j0", range.j0},
                   {"j1", range.j1}};

    const int subs = std::max(1, opts.scales_per_octave);
    for (double j = range.j0; j <= range.j1 + kJTol; j += 1.0 / subs) {
        const double y = std::exp2(-j);
        double best = 0.0;
        auto probe = [&](double b) {
            const HalfplaneSample hs = eval_halfplane_detail(coeffs, b, y);
            const double m = std::abs(hs.value - coeffs.a0);
            if (halfplane_usable(hs, m)) best = std::max(best, m);
        };
        if (opts.geometry == ConeGeometry::Linear) {
            const int sweep = std::max(1, opts.sweep_points);
            for (int s = 0; s < sweep; ++s) {
                const double frac = sweep > 1 ? 2.0 * s / (sweep - 1) - 1.0 : 0.0;
                probe(x0 + opts.cone_width * y * frac);
            }
        } else {
            const double ratio = opts.eta_max / opts.eta_min;
            const int ec = std::max(2, opts.eta_count);
            for (int e = 0; e < ec; ++e) {
                const double eta =
                    opts.eta_min * std::pow(ratio, static_cast<double>(e) / (ec - 1));
                const double d = eta * std::sqrt(y);
                probe(x0 + d);
                probe(x0 - d);
            }
        }
        ScanPoint pt;
        pt.j = j;
        pt.log2_scale = -j;
        pt.usable = best > 0.0;
        pt.log2_modulus =
            pt.usable ? log2_c + alpha * (-j) + std::log2(best) : -std::numeric_limits<double>::infinity();
        scan.points.push_back(pt);
    }
    if (scan.usable_count() == 0) {
        throw std::runtime_error("cone_scan: degenerate scan, all moduli at the numerical floor");
    }
    return scan;
}

ScaleScan cone_scan_function(const Evaluator& g, double alpha, double x0, JRange range,
                             const ConeScanOptions& opts, const WaveletQuadratureOptions& quad) {
    if (range.j1 < range.j0) throw std::invalid_argument("cone_scan_function: empty scale range");
    ScaleScan scan;
    scan.kind = ScanKind::Cone;
    scan.params = {{"x0", x0},         {"alpha", alpha}, {"K", opts.cone_width},
                   {"geometry", 0.0},  {"j0", range.j0}, {"j1", range.j1},
                   {"quadrature", 1.0}};

    const int subs = std::max(1, opts.scales_per_octave);
    for (double j = range.j0; j <= range.j1 + kJTol; j += 1.0 / subs) {
        const double y = std::exp2(-j);
        double best = 0.0;
        const int sweep = std::max(1, opts.sweep_points);
        for (int s = 0; s < sweep; ++s) {
            const double frac = sweep > 1 ? 2.0 * s / (sweep - 1) - 1.0 : 0.0;
            const double b = x0 + opts.cone_width * y * frac;
            best = std::max(best, std::abs(wavelet_transform_quadrature(g, alpha, y, b, quad)));
        }
        ScanPoint pt;
        pt.j = j;
        pt.log2_scale = -j;
        pt.usable = best > 1e-300;
        pt.log2_modulus =
            pt.usable ? std::log2(best) : -std::numeric_limits<double>::infinity();
        scan.points.push_back(pt);
    }
    if (scan.usable_count() == 0) {
        throw std::runtime_error("cone_scan_function: degenerate scan");
    }
    return scan;
}

ScaleScan oscillation_scan(const Evaluator& f, double x0, int difference_order, JRange range,
                           const OscillationOptions& opts) {
    if (difference_order < 1) throw std::invalid_argument("oscillation_scan: order must be >= 1");
    if (range.j1 < range.j0) throw std::invalid_argument("oscillation_scan: empty scale range");

    // signed binomial weights of the m-th forward difference
    const int m = difference_order;
    std::vector<double> weights(static_cast<std::size_t>(m) + 1);
    double binom = 1.0;
    for (int i = 0; i <= m; ++i) {
        weights[static_cast<std::size_t>(i)] = ((m - i) % 2 ? -1.0 : 1.0) * binom;
        binom = binom * (m - i) / (i + 1);
    }

    std::vector<double> js, oct_max;
    const int steps = std::max(1, opts.steps_per_octave);
    for (double j = range.j0; j <= range.j1 + kJTol; j += 1.0) {
        double best = 0.0;
        for (int v = 0; v < steps; ++v) {
            const double h = std::exp2(-(j + static_cast<double>(v) / steps));
            std::complex<double> acc(0.0, 0.0);
            for (int i = 0; i <= m; ++i) {
                acc += weights[static_cast<std::size_t>(i)] * f(x0 + i * h);
            }
            best = std::max(best, std::abs(acc));
        }
        js.push_back(j);
        oct_max.push_back(best);
    }

    // sup over h <= 2^-j: cumulative max from the fine end
    for (std::size_t i = oct_max.size(); i-- > 1;) {
        oct_max[i - 1] = std::max(oct_max[i - 1], oct_max[i]);
    }

    ScaleScan scan;
    scan.kind = ScanKind::Oscillation;
    scan.params = {{"x0", x0}, {"m", static_cast<double>(m)}, {"j0", range.j0}, {"j1", range.j1}};
    for (std::size_t i = 0; i < js.size(); ++i) {
        ScanPoint pt;
        pt.j = js[i];
        pt.log2_scale = -js[i];
        pt.usable = oct_max[i] > 0.0;
        pt.log2_modulus =
            pt.usable ? std::log2(oct_max[i]) : -std::numeric_limits<double>::infinity();
        scan.points.push_back(pt);
    }
    return scan;
}

ScaleScan local_pair_scan(const Evaluator& kth_derivative, int derivative_order, double x0,
                          JRange range, const LocalPairOptions& opts) {
    if (range.j1 < range.j0) throw std::invalid_argument("local_pair_scan: empty scale range");
    ScaleScan scan;
    scan.kind = ScanKind::LocalPair;
    scan.params = {{"x0", x0},
                   {"k", static_cast<double>(derivative_order)},
                   {"j0", range.j0},
                   {"j1", range.j1}};

    const int per_oct = std::max(2, opts.offsets_per_octave);
    for (double j = std::ceil(range.j0); j <= range.j1 + kJTol; j += 1.0) {
        const double radius = std::exp2(-j);
        const int bins = 2 * static_cast<int>(j) + opts.extra_bins;

        std::vector<double> offsets{0.0};
        for (int v = 0; v <= per_oct * bins; ++v) {
            const double o = radius * std::exp2(-static_cast<double>(v) / per_oct);
            offsets.push_back(o);
            offsets.push_back(-o);
        }

        std::vector<std::pair<double, double>> bin_sup;  // (delta, sup |f(x)-f(y)|)
        for (int l = 1; l <= bins; ++l) {
            const double delta = radius * std::exp2(-l);
            double sup = 0.0;
            for (double o : offsets) {
                const double x = x0 + o;
                const std::complex<double> fx = kth_derivative(x);
                for (double y : {x + delta, x - delta}) {
                    if (std::abs(y - x0) > radius) continue;
                    sup = std::max(sup, std::abs(fx - kth_derivative(y)));
                }
            }
            sup = std::max(sup, std::abs(kth_derivative(x0 + delta / 2) -
                                         kth_derivative(x0 - delta / 2)));
            if (sup > 0.0) bin_sup.emplace_back(delta, sup);
        }

        ScanPoint pt;
        pt.j = j;
        pt.log2_scale = -j;
        if (bin_sup.size() < 6) {
            pt.usable = false;
            pt.log2_modulus = -std::numeric_limits<double>::infinity();
            scan.points.push_back(pt);
            continue;
        }
        // coarse-to-fine order; bisect on the largest s for which the fine
        // half of the Holder quotients g/delta^s stays under the coarse half
        std::sort(bin_sup.begin(), bin_sup.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        const std::size_t mid = bin_sup.size() / 2;
        auto feasible = [&](double sexp) {
            double coarse = 0.0, fine = 0.0;
            for (std::size_t i = 0; i < bin_sup.size(); ++i) {
                const double q = bin_sup[i].second * std::pow(bin_sup[i].first, -sexp);
                if (i < mid) {
                    coarse = std::max(coarse, q);
                } else {
                    fine = std::max(fine, q);
                }
            }
            return fine <= opts.allowance * coarse;
        };
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 40; ++it) {
            const double smid = 0.5 * (lo + hi);
            if (feasible(smid)) {
                lo = smid;
            } else {
                hi = smid;
            }
        }
        // allowance bias correction when the fine-half quotient peaks at the
        // finest bin (pure-power profiles)
        double s_est = lo;
        std::size_t argmax = mid;
        double best_q = -1.0;
        for (std::size_t i = mid; i < bin_sup.size(); ++i) {
            const double q = bin_sup[i].second * std::pow(bin_sup[i].first, -s_est);
            if (q > best_q) {
                best_q = q;
                argmax = i;
            }
        }
        if (argmax + 1 == bin_sup.size()) {
            s_est = std::max(0.0, s_est - 2.0 * std::log2(opts.allowance) /
                                              static_cast<double>(bin_sup.size()));
        }
        pt.usable = true;
        pt.log2_modulus = s_est;  // per-interval exponent, not a log-modulus
        scan.points.push_back(pt);
    }
    return scan;
}

VerticalScan vertical_scan(const CoefficientSequence& coeffs, double x0, JRange range,
                           const VerticalOptions& opts) {
    if (range.j1 < range.j0) throw std::invalid_argument("vertical_scan: empty scale range");
    VerticalScan out;
    out.scan.kind = ScanKind::Vertical;
    out.scan.params = {{"x0", x0}, {"j0", range.j0}, {"j1", range.j1}};

    std::vector<std::pair<double, double>> abs_points;  // (1/y, log2 |f|)
    const int subs = std::max(1, opts.scales_per_octave);
    for (double j = range.j0; j <= range.j1 + kJTol; j += 1.0 / subs) {
        const double y = std::exp2(-j);
        const HalfplaneSample hs = eval_halfplane_detail(coeffs, x0, y);
        const double floor = 10.0 * (hs.roundoff + hs.tail_bound);
        const double m_sub = std::abs(hs.value - coeffs.a0);
        const double m_abs = std::abs(hs.value);

        ScanPoint pt;
        pt.j = j;
        pt.log2_scale = -j;
        pt.usable = m_sub > floor;
        pt.log2_modulus =
            pt.usable ? std::log2(m_sub) : -std::numeric_limits<double>::infinity();
        out.scan.points.push_back(pt);

        if (m_abs > floor) abs_points.emplace_back(std::exp2(j), std::log2(m_abs));
    }

    // power-law model on log2|f - a0| vs log2 y
    DecayFit power;
    power.model = DecayFit::Model::PowerLaw;
    bool power_ok = false;
    try {
        const ExponentEstimate plain = fit_slope(out.scan);
        const ExponentEstimate hull = fit_upper_hull(out.scan);
        power.exponent_or_rate = hull.slope;
        power.r_squared = plain.r_squared;  // selection statistic on the full set
        power_ok = true;
    } catch (const std::runtime_error&) {
        power.exponent_or_rate = std::numeric_limits<double>::quiet_NaN();
        power.r_squared = 0.0;
    }

    // exponential model log2|f| ~ c - (K/ln 2) / y
    DecayFit expo;
    expo.model = DecayFit::Model::Exponential;
    bool expo_ok = false;
    if (abs_points.size() >= 4) {
        const double n = static_cast<double>(abs_points.size());
        double mx = 0, my = 0;
        for (const auto& [u, v] : abs_points) {
            mx += u;
            my += v;
        }
        mx /= n;
        my /= n;
        double sxx = 0, sxy = 0, ss_tot = 0;
        for (const auto& [u, v] : abs_points) {
            sxx += (u - mx) * (u - mx);
            sxy += (u - mx) * (v - my);
            ss_tot += (v - my) * (v - my);
        }
        if (sxx > 0) {
            const double slope = sxy / sxx;
            double ss_res = 0;
            for (const auto& [u, v] : abs_points) {
                const double r = v - (my + slope * (u - mx));
                ss_res += r * r;
            }
            expo.exponent_or_rate = -slope * std::numbers::ln2;  // K of e^{-K/y}
            expo.r_squared = ss_tot > 1e-30 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
            expo_ok = true;
        }
    }
    if (!expo_ok) {
        expo.exponent_or_rate = std::numeric_limits<double>::quiet_NaN();
        expo.r_squared = 0.0;
    }

    out.power_law = power;
    out.exponential = expo;
    const bool expo_wins = expo_ok && expo.r_squared >= power.r_squared + opts.r2_margin;
    out.chosen = expo_wins ? expo : power;
    out.ambiguous = power_ok && expo_ok &&
                    std::abs(expo.r_squared - power.r_squared) < opts.r2_margin;
    return out;
}

PartialSumGrowth partial_sum_growth(const CoefficientSequence& coeffs,
                                    const std::vector<std::int64_t>& n_list,
                                    std::int64_t grid_size) {
    if (n_list.size() < 2) throw std::invalid_argument("partial_sum_growth: need >= 2 sizes");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const std::int64_t v = n_list[i];
        if (v < 1 || (v & (v - 1)) != 0) {
            throw std::invalid_argument("partial_sum_growth: N list must be dyadic");
        }
        if (i > 0 && n_list[i] <= n_list[i - 1]) {
            throw std::invalid_argument("partial_sum_growth: N list must be ascending");
        }
    }
    if (n_list.back() > coeffs.length()) {
        throw ResourceError("partial_sum_growth: N exceeds materialized length");
    }

    std::vector<double> log2_max(n_list.size(), -std::numeric_limits<double>::infinity());
    std::vector<double> maxima(n_list.size(), 0.0);
    for (std::int64_t g = 0; g < grid_size; ++g) {
        const double x = static_cast<double>(g) / static_cast<double>(grid_size);
        const double ang = kTwoPi * x;
        const std::complex<double> rot(std::cos(ang), std::sin(ang));
        std::complex<double> e = rot;
        KahanSum re, im;
        std::size_t checkpoint = 0;
        for (std::int64_t n = 1; n <= n_list.back(); ++n) {
            const std::complex<double> a = coeffs.at(n);
            if (a != std::complex<double>(0.0, 0.0)) {
                const std::complex<double> term = a * e;
                re.add(term.real());
                im.add(term.imag());
            }
            e *= rot;
            while (checkpoint < n_list.size() && n == n_list[checkpoint]) {
                const double mod = std::abs(std::complex<double>(re.value(), im.value()));
                maxima[checkpoint] = std::max(maxima[checkpoint], mod);
                ++checkpoint;
            }
        }
    }
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        log2_max[i] = maxima[i] > 0.0 ? std::log2(maxima[i])
                                      : -std::numeric_limits<double>::infinity();
    }

    PartialSumGrowth out;
    out.scan.kind = ScanKind::PartialSum;
    out.scan.params = {{"grid_size", static_cast<double>(grid_size)}};
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        ScanPoint pt;
        pt.j = std::log2(static_cast<double>(n_list[i]));
        pt.log2_scale = -pt.j;
        pt.usable = maxima[i] > 0.0;
        pt.log2_modulus = log2_max[i];
        out.scan.points.push_back(pt);
    }
    out.gamma_estimate = fit_slope(out.scan);
    out.gamma_estimate.slope = -out.gamma_estimate.slope;
    return out;
}

L2EnergyBand l2_energy_check(const CoefficientSequence& coeffs, double r,
                             const std::vector<std::int64_t>& n_list) {
    if (n_list.empty()) throw std::invalid_argument("l2_energy_check: empty N list");
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) {
            throw std::invalid_argument("l2_energy_check: N list must be ascending");
        }
    }
    if (n_list.back() > coeffs.length()) {
        throw ResourceError("l2_energy_check: N exceeds materialized length");
    }
    L2EnergyBand band;
    KahanSum energy;
    std::size_t checkpoint = 0;
    for (std::int64_t n = 1; n <= n_list.back(); ++n) {
        energy.add(std::norm(coeffs.at(n)));
        while (checkpoint < n_list.size() && n == n_list[checkpoint]) {
            band.ratios.push_back(energy.value() / std::pow(static_cast<double>(n), r));
            ++checkpoint;
        }
    }
    band.min_ratio = *std::min_element(band.ratios.begin(), band.ratios.end());
    band.max_ratio = *std::max_element(band.ratios.begin(), band.ratios.end());
    return band;
}

}  // namespace fracreg
