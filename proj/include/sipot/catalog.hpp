#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sipot/error.hpp"
#include "sipot/units.hpp"

namespace sipot {

enum class Partner { V1, V2 };

enum class BarclayClass { I, II };

/// Coefficients of the superpotential ODE
///   gamma W' = A + B W^2 + C W              (class I)
///   gamma W' = A + B W^2 + C W sqrt(A+BW^2) (class II)
struct BarclayCoefficients {
    BarclayClass class_tag;
    double A;  // energy
    double B;  // dimensionless
    double C;  // class I: sqrt(energy); class II: dimensionless
};

/// Open interval, endpoints possibly infinite. A finite endpoint acts as a
/// hard wall for the classical motion (box walls, the r = 0 axis).
struct Domain {
    double x_min;
    double x_max;

    bool contains(double x) const { return x > x_min && x < x_max; }
    bool finite_min() const { return std::isfinite(x_min); }
    bool finite_max() const { return std::isfinite(x_max); }
};

struct Interval {
    double lo;
    double hi;
};

inline constexpr long kUnboundedLevels = std::numeric_limits<long>::max();

using ParamMap = std::map<std::string, double>;

/// One shape-invariant potential family: superpotential W(x;a), partner
/// potentials V1/V2, the parameter chain a_k = a_1 + (k-1) alpha, the exact
/// spectrum f(n) with its continuous inverse F(E), and the Barclay
/// coefficients certifying the class ODE.
///
/// All member functions are pure with respect to the immutable entry data;
/// instances may be shared across threads freely.
class CatalogEntry {
  public:
    virtual ~CatalogEntry() = default;

    const std::string& name() const { return name_; }
    const UnitSystem& units() const { return units_; }
    const Domain& domain() const { return domain_; }
    const BarclayCoefficients& barclay() const { return barclay_; }
    const ParamMap& params() const { return params_; }

    double a1() const { return a1_; }
    double alpha_step() const { return alpha_; }
    /// a_k = a1 + (k-1) alpha, k >= 1.
    double chain_param(long k) const { return a1_ + static_cast<double>(k - 1) * alpha_; }

    /// Number of bound levels, or kUnboundedLevels.
    long bound_state_count() const { return bound_states_; }
    bool finite_spectrum() const { return bound_states_ != kUnboundedLevels; }
    /// Supremum of the bound spectrum (continuum threshold), +inf if none.
    double spectrum_sup() const { return spectrum_sup_; }
    /// Radial problems live on (0, r_max) with a vanishing reduced wave at 0.
    bool radial() const { return radial_; }

    // --- formulas -----------------------------------------------------------

    double superpotential(double x, double a) const;
    double superpotential(double x) const { return superpotential(x, a1_); }
    double superpotential_prime(double x, double a) const;
    double superpotential_prime(double x) const { return superpotential_prime(x, a1_); }

    /// V1 = W^2 - gamma W', V2 = W^2 + gamma W'.
    double potential(double x, double a, Partner which) const;
    double potential(double x, Partner which) const { return potential(x, a1_, which); }

    double remainder(double a) const { return remainder_of(a); }

    /// E_n = f(n); throws SpectrumExhausted past the last bound level.
    double spectrum_level(long n) const;
    /// F(E): continuous inverse of f. Requires 0 <= E < spectrum_sup().
    double counting(double E) const;
    double counting_derivative(double E) const;

    // --- residual checks ----------------------------------------------------

    /// gamma W'(x) minus the class-I/II right-hand side; 0 to rounding for a
    /// correct entry. Class II throws Classification when A + B W^2 < 0.
    double barclay_residual(double x) const;

    /// V2(x;a1) - V1(x;a2) - R(a1) with a2 = a1 + alpha; 0 to rounding.
    double shape_invariance_residual(double x) const;

    // --- numerical support --------------------------------------------------

    /// A point where W(x;a1) = 0; interior minimum of W^2 and a point with
    /// V1 < 0. Used to seed turning-point searches.
    virtual double well_center() const = 0;
    /// Finite box, away from singular walls, for quasi-random residual sweeps.
    virtual Interval residual_box() const = 0;

  protected:
    CatalogEntry(std::string name, UnitSystem units, Domain domain,
                 BarclayCoefficients barclay, double a1, double alpha,
                 long bound_states, double spectrum_sup, bool radial,
                 ParamMap params);

    virtual double w(double x, double a) const = 0;
    virtual double w_prime(double x, double a) const = 0;
    virtual double remainder_of(double a) const = 0;
    virtual double level_of(long n) const = 0;
    virtual double count_of(double E) const = 0;
    virtual double count_derivative_of(double E) const = 0;

    void require_inside(double x) const;

    UnitSystem units_;

  private:
    std::string name_;
    Domain domain_;
    BarclayCoefficients barclay_;
    double a1_;
    double alpha_;
    long bound_states_;
    double spectrum_sup_;
    bool radial_;
    ParamMap params_;
};

using EntryPtr = std::unique_ptr<CatalogEntry>;

/// Names accepted by make_entry, in catalog order.
std::vector<std::string> entry_names();

/// Construct an entry by CLI name ("square-well", "harmonic-1d", "radial-ho",
/// "coulomb", "morse", "poschl-teller"). Unlisted parameters take defaults;
/// unknown parameter keys throw Parameter errors.
EntryPtr make_entry(const std::string& name, const ParamMap& params = {},
                    const UnitSystem& units = {});

/// All entries with default parameters.
std::vector<EntryPtr> default_catalog(const UnitSystem& units = {});

}  // namespace sipot
