#include "sipot/trace.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace sipot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> uniform_grid(double e_min, double e_max, long samples) {
    std::vector<double> g(static_cast<size_t>(samples));
    double step = (e_max - e_min) / static_cast<double>(samples - 1);
    for (long i = 0; i < samples; ++i)
        g[static_cast<size_t>(i)] = e_min + step * static_cast<double>(i);
    g.back() = e_max;
    return g;
}

/// Highest bound level with energy <= cap.
long last_level_below(const CatalogEntry& entry, double cap) {
    if (cap < 0.0) return -1;
    double counting_cap = std::min(cap, std::nextafter(entry.spectrum_sup(), 0.0));
    long n = static_cast<long>(std::floor(entry.counting(counting_cap))) + 1;
    if (entry.finite_spectrum()) n = std::min(n, entry.bound_state_count() - 1);
    while (n > 0 && entry.spectrum_level(n) > cap) --n;
    return n;
}

}  // namespace

DensityCurve density_curve(const CatalogEntry& entry, double e_min, double e_max, long samples,
                           double sigma, long k_max) {
    if (!(sigma > 0.0)) throw Error(ErrorKind::Configuration, "sigma must be positive");
    if (k_max < 1) throw Error(ErrorKind::Configuration, "k_max must be >= 1");
    if (samples < 2) throw Error(ErrorKind::Configuration, "need at least 2 samples");
    if (!(e_min >= 0.0) || !(e_min < e_max))
        throw Error(ErrorKind::Configuration, "need 0 <= e_min < e_max");
    double spacing = (e_max - e_min) / static_cast<double>(samples - 1);
    if (spacing > sigma / 5.0 * (1.0 + 1e-12))
        throw Error(ErrorKind::Configuration, "grid spacing exceeds sigma/5");

    DensityCurve curve;
    curve.energies = uniform_grid(e_min, e_max, samples);
    curve.sigma = sigma;
    curve.k_max = k_max;
    curve.smooth.reserve(curve.energies.size());
    curve.oscillating.reserve(curve.energies.size());
    curve.total.reserve(curve.energies.size());

    for (double e : curve.energies) {
        double f = entry.counting(e);
        double fp = entry.counting_derivative(e);
        double smooth = fp;  // degeneracy D(E) = 1 throughout the catalog
        double osc = 0.0;
        double damp_rate = kTwoPi * sigma * fp;
        for (long k = 1; k <= k_max; ++k) {
            double a = damp_rate * static_cast<double>(k);
            if (a * a > 2.0 * 41.5) break;  // damping below ~1e-18: spent
            osc += 2.0 * fp * std::cos(kTwoPi * static_cast<double>(k) * f) *
                   std::exp(-0.5 * a * a);
        }
        curve.smooth.push_back(smooth);
        curve.oscillating.push_back(osc);
        curve.total.push_back(smooth + osc);
    }
    return curve;
}

DensityCurve broadened_stick_density(const CatalogEntry& entry, const std::vector<double>& grid,
                                     double sigma) {
    if (!(sigma > 0.0)) throw Error(ErrorKind::Configuration, "sigma must be positive");
    if (grid.size() < 2) throw Error(ErrorKind::Configuration, "need at least 2 samples");

    DensityCurve curve;
    curve.energies = grid;
    curve.sigma = sigma;
    curve.k_max = 0;
    size_t n = grid.size();
    curve.smooth.assign(n, 0.0);
    curve.total.assign(n, 0.0);

    long top = last_level_below(entry, grid.back() + 8.0 * sigma);
    double lo_cut = grid.front() - 8.0 * sigma;
    double norm = 1.0 / (sigma * std::sqrt(kTwoPi));
    for (long level = 0; level <= top; ++level) {
        double e_n = entry.spectrum_level(level);
        if (e_n < lo_cut) continue;
        for (size_t i = 0; i < n; ++i) {
            double z = (grid[i] - e_n) / sigma;
            curve.total[i] += norm * std::exp(-0.5 * z * z);
        }
    }
    curve.oscillating = curve.total;
    return curve;
}

PeakList extract_peaks(const DensityCurve& curve, double min_height) {
    const auto& e = curve.energies;
    const auto& y = curve.total;
    if (y.size() < 3) throw Error(ErrorKind::Configuration, "need at least 3 samples");

    PeakList peaks;
    size_t n = y.size();
    double h = e[1] - e[0];
    for (size_t i = 1; i < n; ++i) {
        if (!(y[i] > y[i - 1])) continue;
        if (i + 1 < n && y[i] < y[i + 1]) continue;
        if (y[i] < min_height) continue;
        size_t j = (i + 1 < n) ? i : n - 2;  // parabola window, shifted at the edge
        double y0 = y[j - 1], y1 = y[j], y2 = y[j + 1];
        double den = y0 - 2.0 * y1 + y2;
        double loc = e[i], height = y[i];
        if (den < 0.0) {
            double dx = 0.5 * (y0 - y2) / den;
            if (std::abs(dx) <= 2.0) {  // interior peaks give |dx| <= 1/2
                loc = e[j] + dx * h;
                height = y1 - 0.25 * (y0 - y2) * dx;
            }
        }
        peaks.energies.push_back(loc);
        peaks.heights.push_back(height);
    }
    return peaks;
}

void write_density_csv(std::ostream& os, const DensityCurve& curve,
                       const DensityCurve& reference) {
    if (reference.total.size() != curve.total.size())
        throw Error(ErrorKind::Configuration, "reference grid does not match the curve");
    os << "E,smooth,oscillating,total,reference\n";
    char buf[512];
    for (size_t i = 0; i < curve.energies.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g\n", curve.energies[i],
                      curve.smooth[i], curve.oscillating[i], curve.total[i], reference.total[i]);
        os << buf;
    }
}

}  // namespace sipot
