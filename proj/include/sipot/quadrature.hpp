#pragma once

#include <functional>
#include <optional>

#include "sipot/catalog.hpp"

namespace sipot {

struct TurningPoints {
    double x1;
    double x2;
    bool clamped_lo = false;  // x1 sits on a finite domain edge, not a root
    bool clamped_hi = false;

    bool coincident() const { return x2 - x1 < 1e-10 * (1.0 + std::abs(x1)); }
};

struct QuadratureResult {
    double value;
    double abs_error_estimate;
    long evaluations;
};

enum class ActionTarget { V1, Wsq };

using Curve = std::function<double(double)>;

/// Locate x1 <= x2 with curve(x) = energy on either side of the curve's single
/// minimum. Finite domain edges clamp when the curve stays below the energy all
/// the way to the wall. Energy at the minimum yields coincident points; energy
/// below it throws NoClassicalMotion.
TurningPoints find_turning_points(const Curve& curve, double energy, const Domain& domain,
                                  std::optional<double> hint = {});

/// Turning points of V1 or W^2 for a catalog entry, seeded at the well center.
TurningPoints turning_points(const CatalogEntry& entry, double energy, ActionTarget target);

/// 2 sqrt(2m) Int_{x1}^{x2} sqrt(energy - target(x)) dx. Exactly 0 for
/// coincident turning points.
QuadratureResult action_integral(const CatalogEntry& entry, double energy, ActionTarget target);

/// (sqrt(2m) / 2 pi hbar) Int dx / sqrt(energy - V1(x)); equals the analytic
/// counting derivative for every catalog entry. Requires energy > 0.
QuadratureResult smooth_density_integral(const CatalogEntry& entry, double energy);

namespace detail {

/// Integrand evaluated at x with d = distance to the nearer interval endpoint;
/// d is exact at double-exponential node spacings where b - x would round.
using OffsetIntegrand = std::function<double(double x, double d, bool upper_half)>;

/// Double-exponential (tanh-sinh) rule over (a, b) with level doubling until
/// the successive-level difference drops below max(abs_tol, rel_tol * |value|).
/// Throws Numeric (carrying the best estimate in the message) if max_level is
/// exhausted first.
QuadratureResult tanh_sinh(const OffsetIntegrand& f, double a, double b,
                           double abs_tol = 1e-11, double rel_tol = 1e-12,
                           int max_level = 12);

/// Root of f in [lo, hi] (f(lo), f(hi) of opposite sign) by bisection with
/// inverse-quadratic/secant steps, to 1e-13 relative in x.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double f_lo, double f_hi);

}  // namespace detail

}  // namespace sipot
