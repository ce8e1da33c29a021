#pragma once

#include <iosfwd>
#include <vector>

#include "sipot/catalog.hpp"

namespace sipot {

/// Smoothed density of states sampled on a uniform energy grid, split into the
/// smooth part D(E) F'(E) and the damped oscillating sum over orbit
/// repetitions. total = smooth + oscillating per sample.
struct DensityCurve {
    std::vector<double> energies;
    std::vector<double> smooth;
    std::vector<double> oscillating;
    std::vector<double> total;
    double sigma;
    long k_max;
};

struct PeakList {
    std::vector<double> energies;  // strictly ascending
    std::vector<double> heights;   // > 0
};

/// Trace-formula density smoothed with a Gaussian of width sigma: the k-th
/// repetition term 2 D F' cos(2 pi k F) is damped by
/// exp(-(2 pi k sigma F')^2 / 2), the local-period convolution factor.
/// The grid spacing must not exceed sigma/5.
DensityCurve density_curve(const CatalogEntry& entry, double e_min, double e_max, long samples,
                           double sigma, long k_max);

/// Reference density: a normalised Gaussian of width sigma on every bound
/// level within 8 sigma of the grid. Written into the total (and oscillating)
/// channel; smooth is zero.
DensityCurve broadened_stick_density(const CatalogEntry& entry, const std::vector<double>& grid,
                                     double sigma);

/// Local maxima of curve.total above min_height, refined by a three-point
/// parabola. A rising final sample counts as a peak (spectra are scanned
/// upward in energy; the first sample never does).
PeakList extract_peaks(const DensityCurve& curve, double min_height);

/// CSV emission: header E,smooth,oscillating,total,reference; 12 significant
/// digits; LF line endings. reference must share the curve's grid.
void write_density_csv(std::ostream& os, const DensityCurve& curve,
                       const DensityCurve& reference);

}  // namespace sipot
