#pragma once

#include <vector>

#include "sipot/catalog.hpp"

namespace sipot {

/// Dirichlet box for the finite-difference eigensolver.
struct GridSpec {
    double x_lo;
    double x_hi;
    long points;  // interior points; >= 100
};

/// A box containing the classical region of the first n_levels states of V1
/// with several decay lengths of margin. Walls are used exactly; radial
/// entries start at 1e-6 * r_max.
GridSpec default_grid(const CatalogEntry& entry, long n_levels, long points = 4000);

/// Lowest n_levels eigenvalues of the central-difference discretisation of
/// H1 = -(hbar^2/2m) d^2/dx^2 + V1 on the grid, by bisection on the Sturm
/// sequence of the symmetric tridiagonal matrix. Shares no machinery with the
/// action quadrature. `which` must be Partner::V1.
std::vector<double> fd_spectrum(const CatalogEntry& entry, Partner which, const GridSpec& grid,
                                long n_levels);

inline std::vector<double> fd_spectrum(const CatalogEntry& entry, const GridSpec& grid,
                                       long n_levels) {
    return fd_spectrum(entry, Partner::V1, grid, n_levels);
}

}  // namespace sipot
