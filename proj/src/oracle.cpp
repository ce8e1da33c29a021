#include "sipot/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sipot/quadrature.hpp"

namespace sipot {

namespace {

/// Number of eigenvalues of the tridiagonal matrix (diag d, off-diagonal e)
/// strictly below lambda, from the sign count of the Sturm pivot sequence.
long sturm_count(const std::vector<double>& d, double e2, double lambda) {
    const double tiny = 1e-300;
    double q = d[0] - lambda;
    long count = q < 0.0 ? 1 : 0;
    for (size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = -tiny;
        q = d[i] - lambda - e2 / q;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace

GridSpec default_grid(const CatalogEntry& entry, long n_levels, long points) {
    if (n_levels < 1) throw Error(ErrorKind::Range, "need at least one level");
    long top = std::min(n_levels, entry.bound_state_count()) - 1;
    double e_top = entry.spectrum_level(top);
    TurningPoints tp = turning_points(entry, std::max(e_top, 1e-12), ActionTarget::V1);

    const Domain& dom = entry.domain();
    const UnitSystem& u = entry.units();
    auto extend = [&](double x_t, double dir) {
        // march outward until the accumulated decay exponent reaches ~6
        double step = 0.05 * (1.0 + std::abs(x_t));
        double x = x_t;
        for (int i = 0; i < 400; ++i) {
            x += dir * step;
            double v = entry.potential(x, Partner::V1);
            if (v > e_top) {
                double kappa = u.sqrt_2m() * std::sqrt(v - e_top) / u.hbar;
                if (kappa * std::abs(x - x_t) >= 6.0) return x;
            }
            step *= 1.25;
        }
        throw Error(ErrorKind::Numeric, "could not find a confining box edge");
    };

    double lo = dom.finite_min() ? dom.x_min : extend(tp.x1, -1.0);
    double hi = dom.finite_max() ? dom.x_max : extend(tp.x2, +1.0);
    if (entry.radial()) lo = 1e-6 * hi;
    return {lo, hi, points};
}

std::vector<double> fd_spectrum(const CatalogEntry& entry, Partner which, const GridSpec& grid,
                                long n_levels) {
    if (which != Partner::V1)
        throw Error(ErrorKind::Parameter, "the eigensolver oracle only treats V1");
    if (grid.points < 100) throw Error(ErrorKind::Parameter, "grid needs at least 100 points");
    if (!(grid.x_lo < grid.x_hi)) throw Error(ErrorKind::Parameter, "grid box is empty");
    if (n_levels < 1 || n_levels > grid.points / 10)
        throw Error(ErrorKind::Parameter, "n_levels must be in [1, points/10]");

    // The box must confine the requested states: each edge is either a domain
    // wall or sits in the forbidden region a few decay lengths beyond the
    // classical turning point of the top level.
    double e_top = entry.spectrum_level(std::min(n_levels, entry.bound_state_count()) - 1);
    TurningPoints tp = turning_points(entry, std::max(e_top, 1e-12), ActionTarget::V1);
    const Domain& dom = entry.domain();
    const UnitSystem& u = entry.units();
    auto check_edge = [&](double edge, double x_t, bool at_wall) {
        if (at_wall) return;
        double v = entry.potential(edge, Partner::V1);
        double margin = std::abs(edge - x_t);
        if (v <= e_top ||
            u.sqrt_2m() * std::sqrt(v - e_top) / u.hbar * margin < 2.0)
            throw Error(ErrorKind::Truncation, "eigensolver box does not confine the states");
    };
    double wall_pad = 1e-5 * (grid.x_hi - grid.x_lo);
    check_edge(grid.x_lo, tp.x1,
               dom.finite_min() && grid.x_lo <= dom.x_min + wall_pad + 1e-6 * std::abs(grid.x_hi));
    check_edge(grid.x_hi, tp.x2, dom.finite_max() && grid.x_hi >= dom.x_max - wall_pad);

    long n = grid.points;
    double dx = (grid.x_hi - grid.x_lo) / static_cast<double>(n + 1);
    double c = u.hbar * u.hbar / (2.0 * u.mass);
    std::vector<double> diag(n);
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (long i = 0; i < n; ++i) {
        double x = grid.x_lo + dx * static_cast<double>(i + 1);
        double v = entry.potential(x, Partner::V1);
        diag[i] = 2.0 * c / (dx * dx) + v;
        vmin = std::min(vmin, diag[i]);
        vmax = std::max(vmax, diag[i]);
    }
    double e = -c / (dx * dx);
    double e2 = e * e;

    // Gershgorin bounds.
    double lo = vmin - 2.0 * std::abs(e);
    double hi = vmax + 2.0 * std::abs(e);

    std::vector<double> out(static_cast<size_t>(n_levels));
    for (long k = 0; k < n_levels; ++k) {
        double a = lo, b = hi;
        while (b - a > 1e-13 * (1.0 + std::abs(a) + std::abs(b))) {
            double mid = 0.5 * (a + b);
            if (sturm_count(diag, e2, mid) > k)
                b = mid;
            else
                a = mid;
        }
        out[static_cast<size_t>(k)] = 0.5 * (a + b);
    }
    return out;
}

}  // namespace sipot
