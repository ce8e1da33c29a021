#include "sipot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace sipot {

namespace detail {

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double f_lo, double f_hi) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw Error(ErrorKind::Numeric, "root bracket does not straddle zero");

    double a = lo, b = hi, fa = f_lo, fb = f_hi;
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5e-13 * (1.0 + std::abs(b));
        double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;  // bisection
        } else {
            double s = fb / fa, p, q;
            if (a == c) {  // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {  // inverse quadratic interpolation
                double r = fb / fc, t = fa / fc;
                p = s * (2.0 * m * t * (t - r) - (b - a) * (r - 1.0));
                q = (t - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; e = d = b - a; }
    }
    throw Error(ErrorKind::Numeric, "root refinement did not converge");
}

namespace {

struct DeNode {
    double offset;  // distance to the endpoint as a fraction of the half-span
    double weight;
};

DeNode de_node(double t) {
    double u = 0.5 * std::numbers::pi * std::sinh(t);
    if (u > 350.0) return {0.0, 0.0};
    double ch = std::cosh(u);
    return {1.0 / (std::exp(u) * ch), 0.5 * std::numbers::pi * std::cosh(t) / (ch * ch)};
}

constexpr double kTMax = 6.0;

}  // namespace

QuadratureResult tanh_sinh(const OffsetIntegrand& f, double a, double b, double abs_tol,
                           double rel_tol, int max_level) {
    double span = 0.5 * (b - a);
    if (!(span > 0.0)) return {0.0, 0.0, 0};

    long evals = 0;
    auto sample = [&](double t) -> double {
        auto [off, wgt] = de_node(std::abs(t));
        if (off <= 0.0 || wgt < 1e-290) return 0.0;
        double d = off * span;
        ++evals;
        return t >= 0.0 ? wgt * f(b - d, d, true) : wgt * f(a + d, d, false);
    };

    // Cached node values keyed by integer multiples of the finest spacing, so
    // each abscissa is evaluated once across levels.
    int finest = 1 << max_level;
    std::vector<double> cache(static_cast<size_t>(2 * (static_cast<long>(kTMax * finest) + 2)),
                              std::numeric_limits<double>::quiet_NaN());
    auto value_at = [&](long idx) -> double {  // idx in units of 1/finest, signed
        size_t slot = static_cast<size_t>(2 * std::abs(idx) + (idx < 0 ? 1 : 0));
        if (std::isnan(cache[slot])) cache[slot] = sample(static_cast<double>(idx) / finest);
        return cache[slot];
    };

    double prev = 0.0, cur = 0.0, err = std::numeric_limits<double>::infinity();
    for (int level = 0; level <= max_level; ++level) {
        double h = 1.0 / (1 << level);
        long stride = finest >> level;
        double s = value_at(0);
        for (long k = 1; k * h <= kTMax; ++k) {
            s += value_at(k * stride) + value_at(-k * stride);
        }
        cur = s * h * span;
        if (level > 0) {
            err = std::abs(cur - prev);
            if (err <= std::max(abs_tol, rel_tol * std::abs(cur)))
                return {cur, err, evals};
        }
        prev = cur;
    }
    std::ostringstream os;
    os << "quadrature stalled at error estimate " << err << " (best value " << cur << ")";
    throw Error(ErrorKind::Numeric, os.str());
}

}  // namespace detail

namespace {

constexpr double kCoincidentTol = 1e-13;

double domain_scale(double x) { return 1.0 + std::abs(x); }

/// Minimize a single-well curve by golden-section after expanding a bracket
/// around the start point.
double minimize(const Curve& curve, const Domain& dom, double start) {
    double step = 1e-3 * domain_scale(start);
    auto clamp_in = [&](double x) {
        if (dom.finite_min()) x = std::max(x, dom.x_min + 1e-12 * domain_scale(dom.x_min));
        if (dom.finite_max()) x = std::min(x, dom.x_max - 1e-12 * domain_scale(dom.x_max));
        return x;
    };
    double lo = start, hi = start;
    double f0 = curve(start);
    // walk outward until the curve rises on both sides (or a wall is reached)
    for (int side = 0; side < 2; ++side) {
        double dir = side == 0 ? -1.0 : 1.0;
        double x = start, fx = f0, s = step;
        for (int i = 0; i < 200; ++i) {
            double xn = clamp_in(x + dir * s);
            if (xn == x) break;
            double fn = curve(xn);
            if (fn > fx) break;
            x = xn; fx = fn; s *= 2.0;
        }
        (side == 0 ? lo : hi) = clamp_in(x + dir * s);
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = curve(c), fd = curve(d);
    while (hi - lo > 1e-12 * domain_scale(lo)) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - gr * (hi - lo);
            fc = curve(c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + gr * (hi - lo);
            fd = curve(d);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TurningPoints find_turning_points(const Curve& curve, double energy, const Domain& domain,
                                  std::optional<double> hint) {
    double start;
    if (hint && domain.contains(*hint)) {
        start = *hint;
    } else if (domain.finite_min() && domain.finite_max()) {
        start = 0.5 * (domain.x_min + domain.x_max);
    } else if (domain.finite_min()) {
        start = domain.x_min + domain_scale(domain.x_min);
    } else if (domain.finite_max()) {
        start = domain.x_max - domain_scale(domain.x_max);
    } else {
        start = 0.0;
    }

    double f_start = curve(start);
    if (f_start > energy) {
        // the hint is above the level line: locate the minimum properly
        double xm = minimize(curve, domain, start);
        double fm = curve(xm);
        if (energy < fm - 1e-12 * (1.0 + std::abs(energy))) {
            std::ostringstream os;
            os << "no classical motion: E = " << energy << " below curve minimum " << fm;
            throw Error(ErrorKind::NoClassicalMotion, os.str());
        }
        if (energy - fm <= kCoincidentTol * (1.0 + std::abs(energy)))
            return {xm, xm, false, false};
        start = xm;
        f_start = fm;
    } else if (energy - f_start <= kCoincidentTol * (1.0 + std::abs(energy))) {
        double xm = minimize(curve, domain, start);
        return {xm, xm, false, false};
    }

    TurningPoints tp{};
    for (int side = 0; side < 2; ++side) {
        double dir = side == 0 ? -1.0 : 1.0;
        double wall = side == 0 ? domain.x_min : domain.x_max;
        bool finite_wall = std::isfinite(wall);
        double inside = start, f_inside = f_start;
        double step = 1e-3 * domain_scale(start);
        double outside = 0.0, f_outside = 0.0;
        bool bracketed = false, clamped = false;

        for (int i = 0; i < 400; ++i) {
            double x = inside + dir * step;
            if (finite_wall && (dir > 0 ? x >= wall : x <= wall)) {
                // probe just inside the wall; clamp if still below the level
                double probe = wall - dir * 1e-9 * domain_scale(wall);
                double fp = curve(probe);
                if (fp <= energy) {
                    clamped = true;
                } else {
                    outside = probe;
                    f_outside = fp;
                    bracketed = true;
                }
                break;
            }
            if (!finite_wall && std::abs(x) > 1e18) break;
            double fx = curve(x);
            if (fx > energy) {
                outside = x;
                f_outside = fx;
                bracketed = true;
                break;
            }
            inside = x;
            f_inside = fx;
            step *= 2.0;
        }

        double result;
        if (clamped) {
            result = wall;
        } else if (bracketed) {
            auto g = [&](double x) { return curve(x) - energy; };
            if (dir > 0)
                result = detail::brent_root(g, inside, outside, f_inside - energy,
                                            f_outside - energy);
            else
                result = detail::brent_root(g, outside, inside, f_outside - energy,
                                            f_inside - energy);
        } else {
            throw Error(ErrorKind::Numeric, "turning-point bracketing exceeded the expansion cap");
        }
        if (side == 0) {
            tp.x1 = result;
            tp.clamped_lo = clamped;
        } else {
            tp.x2 = result;
            tp.clamped_hi = clamped;
        }
    }
    return tp;
}

namespace {

Curve make_curve(const CatalogEntry& entry, ActionTarget target) {
    if (target == ActionTarget::V1)
        return [&entry](double x) { return entry.potential(x, Partner::V1); };
    return [&entry](double x) {
        double w = entry.superpotential(x);
        return w * w;
    };
}

/// sqrt/inverse-sqrt integrand of energy - curve with turning-point guards:
/// within d_switch of a root endpoint the difference is replaced by its
/// tangent model slope*d, which stays accurate where the subtraction has
/// cancelled to noise.
struct GuardedIntegrand {
    Curve curve;
    double energy;
    double slope_lo = 0.0, slope_hi = 0.0;  // 0 => clamped endpoint, no guard
    double d_switch = 0.0;
    bool inverse = false;

    GuardedIntegrand(Curve c, double e, const TurningPoints& tp, bool inv)
        : curve(std::move(c)), energy(e), inverse(inv) {
        double width = tp.x2 - tp.x1;
        d_switch = 1e-9 * width;
        double d0 = 1e-6 * width;
        if (!tp.clamped_lo) slope_lo = std::max((energy - curve(tp.x1 + d0)) / d0, 0.0);
        if (!tp.clamped_hi) slope_hi = std::max((energy - curve(tp.x2 - d0)) / d0, 0.0);
    }

    double operator()(double x, double d, bool upper_half) const {
        double slope = upper_half ? slope_hi : slope_lo;
        double g;
        if (slope > 0.0 && d < d_switch) {
            g = slope * d;
        } else {
            g = energy - curve(x);
            if (g <= 0.0) g = slope > 0.0 ? slope * d : 0.0;
        }
        if (!inverse) return std::sqrt(g);
        return g > 0.0 ? 1.0 / std::sqrt(g) : 0.0;
    }
};

}  // namespace

TurningPoints turning_points(const CatalogEntry& entry, double energy, ActionTarget target) {
    return find_turning_points(make_curve(entry, target), energy, entry.domain(),
                               entry.well_center());
}

QuadratureResult action_integral(const CatalogEntry& entry, double energy, ActionTarget target) {
    Curve curve = make_curve(entry, target);
    TurningPoints tp = find_turning_points(curve, energy, entry.domain(), entry.well_center());
    if (tp.coincident()) return {0.0, 0.0, 0};
    GuardedIntegrand f(curve, energy, tp, /*inverse=*/false);
    QuadratureResult r = detail::tanh_sinh(
        [&f](double x, double d, bool up) { return f(x, d, up); }, tp.x1, tp.x2);
    double scale = 2.0 * entry.units().sqrt_2m();
    return {scale * r.value, scale * r.abs_error_estimate, r.evaluations};
}

QuadratureResult smooth_density_integral(const CatalogEntry& entry, double energy) {
    if (!(energy > 0.0))
        throw Error(ErrorKind::Range, "smooth density integral requires E > 0");
    Curve curve = make_curve(entry, ActionTarget::V1);
    TurningPoints tp = find_turning_points(curve, energy, entry.domain(), entry.well_center());
    if (tp.coincident())
        throw Error(ErrorKind::Numeric, "coincident turning points in the density integral");
    GuardedIntegrand f(curve, energy, tp, /*inverse=*/true);
    QuadratureResult r = detail::tanh_sinh(
        [&f](double x, double d, bool up) { return f(x, d, up); }, tp.x1, tp.x2);
    double scale = entry.units().sqrt_2m() / entry.units().planck_h();
    return {scale * r.value, scale * r.abs_error_estimate, r.evaluations};
}

}  // namespace sipot
