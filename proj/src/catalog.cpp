#include "sipot/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sipot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double take(const ParamMap& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown(const ParamMap& params, std::initializer_list<const char*> known,
                    const std::string& entry) {
    for (const auto& [key, value] : params) {
        (void)value;
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok)
            throw Error(ErrorKind::Parameter,
                        "unknown parameter '" + key + "' for entry '" + entry + "'");
    }
}

void require_positive(double v, const std::string& what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorKind::Parameter, what + " must be positive and finite");
}

long angular_momentum(const ParamMap& params) {
    double l = take(params, "l", 0.0);
    long li = std::lround(l);
    if (li < 0 || std::abs(l - static_cast<double>(li)) > 1e-9)
        throw Error(ErrorKind::Parameter, "l must be a nonnegative integer");
    return li;
}

}  // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::Range: return "range";
        case ErrorKind::SpectrumExhausted: return "spectrum-exhausted";
        case ErrorKind::NoClassicalMotion: return "no-classical-motion";
        case ErrorKind::Classification: return "classification";
        case ErrorKind::Numeric: return "numeric";
        case ErrorKind::Convergence: return "convergence";
        case ErrorKind::Configuration: return "configuration";
        case ErrorKind::Truncation: return "truncation";
        case ErrorKind::UnknownEntry: return "unknown-entry";
        case ErrorKind::Usage: return "usage";
    }
    return "error";
}

CatalogEntry::CatalogEntry(std::string name, UnitSystem units, Domain domain,
                           BarclayCoefficients barclay, double a1, double alpha,
                           long bound_states, double spectrum_sup, bool radial,
                           ParamMap params)
    : units_(units),
      name_(std::move(name)),
      domain_(domain),
      barclay_(barclay),
      a1_(a1),
      alpha_(alpha),
      bound_states_(bound_states),
      spectrum_sup_(spectrum_sup),
      radial_(radial),
      params_(std::move(params)) {
    if (barclay_.B > 1.0 + 1e-12)
        throw Error(ErrorKind::Parameter, name_ + ": Barclay B > 1 would make eta complex");
    if (barclay_.class_tag == BarclayClass::II) {
        if (barclay_.B < 0.0)
            throw Error(ErrorKind::Parameter, name_ + ": class II requires B >= 0");
        double s = barclay_.C * std::sqrt(barclay_.B);
        if (barclay_.B + s > 1.0 + 1e-12 || barclay_.B - s > 1.0 + 1e-12)
            throw Error(ErrorKind::Parameter, name_ + ": class II z's exceed 1");
    }
}

void CatalogEntry::require_inside(double x) const {
    if (!domain_.contains(x)) {
        std::ostringstream os;
        os << name_ << ": x = " << x << " outside domain (" << domain_.x_min << ", "
           << domain_.x_max << ")";
        throw Error(ErrorKind::Domain, os.str());
    }
}

double CatalogEntry::superpotential(double x, double a) const {
    require_inside(x);
    return w(x, a);
}

double CatalogEntry::superpotential_prime(double x, double a) const {
    require_inside(x);
    return w_prime(x, a);
}

double CatalogEntry::potential(double x, double a, Partner which) const {
    require_inside(x);
    double wv = w(x, a);
    double g = units_.gamma() * w_prime(x, a);
    return which == Partner::V1 ? wv * wv - g : wv * wv + g;
}

double CatalogEntry::spectrum_level(long n) const {
    if (n < 0) throw Error(ErrorKind::Range, name_ + ": level index must be >= 0");
    if (n >= bound_states_)
        throw Error(ErrorKind::SpectrumExhausted,
                    name_ + ": level " + std::to_string(n) + " beyond the bound spectrum");
    return level_of(n);
}

double CatalogEntry::counting(double E) const {
    if (E < 0.0) throw Error(ErrorKind::Range, name_ + ": counting requires E >= 0");
    if (E >= spectrum_sup_)
        throw Error(ErrorKind::Range, name_ + ": E above the top of the bound spectrum");
    return count_of(E);
}

double CatalogEntry::counting_derivative(double E) const {
    if (E < 0.0) throw Error(ErrorKind::Range, name_ + ": counting requires E >= 0");
    if (E >= spectrum_sup_)
        throw Error(ErrorKind::Range, name_ + ": E above the top of the bound spectrum");
    return count_derivative_of(E);
}

double CatalogEntry::barclay_residual(double x) const {
    require_inside(x);
    double wv = w(x, a1_);
    double lhs = units_.gamma() * w_prime(x, a1_);
    const auto& bc = barclay_;
    if (bc.class_tag == BarclayClass::I)
        return lhs - (bc.A + bc.B * wv * wv + bc.C * wv);
    double inner = bc.A + bc.B * wv * wv;
    if (inner < 0.0)
        throw Error(ErrorKind::Classification,
                    name_ + ": A + B W^2 < 0; class II coefficients are wrong");
    return lhs - (inner + bc.C * wv * std::sqrt(inner));
}

double CatalogEntry::shape_invariance_residual(double x) const {
    require_inside(x);
    double a2 = a1_ + alpha_;
    return potential(x, a1_, Partner::V2) - potential(x, a2, Partner::V1) - remainder_of(a1_);
}

// ---------------------------------------------------------------------------
// Infinite square well on (0, L):
//   W(x;a) = -a sqrt(E0) cot(pi x / L),  E0 = hbar^2 pi^2 / (2 m L^2)
//   a1 = 1, alpha = 1, R(a) = (2a+1) E0, f(n) = n(n+2) E0.
// Class I, A = E0, B = 1, C = 0.
// ---------------------------------------------------------------------------
class SquareWell final : public CatalogEntry {
  public:
    SquareWell(const ParamMap& params, const UnitSystem& units)
        : SquareWell(take(params, "L", kPi), params, units) {}

    double well_center() const override { return 0.5 * length_; }
    Interval residual_box() const override { return {0.005 * length_, 0.995 * length_}; }

  protected:
    double w(double x, double a) const override {
        double t = kPi * x / length_;
        return -a * sqrt_e0_ * std::cos(t) / std::sin(t);
    }
    double w_prime(double x, double a) const override {
        double s = std::sin(kPi * x / length_);
        return a * sqrt_e0_ * (kPi / length_) / (s * s);
    }
    double remainder_of(double a) const override { return (2.0 * a + 1.0) * e0_; }
    double level_of(long n) const override {
        return static_cast<double>(n) * static_cast<double>(n + 2) * e0_;
    }
    double count_of(double E) const override { return std::sqrt(1.0 + E / e0_) - 1.0; }
    double count_derivative_of(double E) const override {
        return 1.0 / (2.0 * e0_ * std::sqrt(1.0 + E / e0_));
    }

  private:
    SquareWell(double L, const ParamMap& params, const UnitSystem& units)
        : CatalogEntry("square-well", units, Domain{0.0, L},
                       BarclayCoefficients{BarclayClass::I, e0_of(L, units), 1.0, 0.0},
                       /*a1=*/1.0, /*alpha=*/1.0, kUnboundedLevels, kInf,
                       /*radial=*/false, ParamMap{{"L", L}}),
          length_(L),
          e0_(e0_of(L, units)),
          sqrt_e0_(std::sqrt(e0_)) {
        reject_unknown(params, {"L"}, "square-well");
        require_positive(L, "square-well L");
    }

    static double e0_of(double L, const UnitSystem& u) {
        require_positive(L, "square-well L");
        double p = u.hbar * kPi / (u.sqrt_2m() * L);
        return p * p;
    }

    double length_;
    double e0_;
    double sqrt_e0_;
};

// ---------------------------------------------------------------------------
// 1-d harmonic oscillator: W = sqrt(m/2) omega x (independent of a),
// R = hbar omega, f(n) = n hbar omega. Class I, A = hbar omega / 2, B = C = 0.
// ---------------------------------------------------------------------------
class Harmonic1d final : public CatalogEntry {
  public:
    Harmonic1d(const ParamMap& params, const UnitSystem& units)
        : CatalogEntry("harmonic-1d", units, Domain{-kInf, kInf},
                       BarclayCoefficients{BarclayClass::I,
                                           0.5 * units.hbar * take(params, "omega", 1.0), 0.0,
                                           0.0},
                       1.0, 1.0, kUnboundedLevels, kInf, false,
                       ParamMap{{"omega", take(params, "omega", 1.0)}}),
          omega_(take(params, "omega", 1.0)),
          slope_(std::sqrt(0.5 * units.mass) * omega_) {
        reject_unknown(params, {"omega"}, "harmonic-1d");
        require_positive(omega_, "harmonic-1d omega");
    }

    double well_center() const override { return 0.0; }
    Interval residual_box() const override {
        // |W| up to sqrt(60 hbar omega)
        double xb = std::sqrt(60.0 * units_.hbar * omega_) / slope_;
        return {-xb, xb};
    }

  protected:
    double w(double x, double) const override { return slope_ * x; }
    double w_prime(double, double) const override { return slope_; }
    double remainder_of(double) const override { return units_.hbar * omega_; }
    double level_of(long n) const override { return static_cast<double>(n) * units_.hbar * omega_; }
    double count_of(double E) const override { return E / (units_.hbar * omega_); }
    double count_derivative_of(double) const override { return 1.0 / (units_.hbar * omega_); }

  private:
    double omega_;
    double slope_;
};

// ---------------------------------------------------------------------------
// Radial harmonic oscillator at fixed partial wave l:
//   W(r;a) = sqrt(2m) omega r / 2 - gamma a / r,  a1 = l+1, alpha = 1,
//   R = 2 hbar omega, f(n) = 2 n hbar omega.
// Class II, A = hbar omega, B = 1/(2l+2), C = -sqrt(B).
// ---------------------------------------------------------------------------
class RadialHo final : public CatalogEntry {
  public:
    RadialHo(const ParamMap& params, const UnitSystem& units)
        : CatalogEntry("radial-ho", units, Domain{0.0, kInf},
                       barclay_of(params, units), 1.0 + static_cast<double>(angular_momentum(params)),
                       1.0, kUnboundedLevels, kInf, true,
                       ParamMap{{"omega", take(params, "omega", 1.0)},
                                {"l", static_cast<double>(angular_momentum(params))}}),
          omega_(take(params, "omega", 1.0)),
          p_(0.5 * units.sqrt_2m() * omega_) {
        reject_unknown(params, {"omega", "l"}, "radial-ho");
        require_positive(omega_, "radial-ho omega");
    }

    double well_center() const override { return std::sqrt(units_.gamma() * a1() / p_); }
    Interval residual_box() const override {
        // turning points of W^2 at 60 hbar omega
        double se = std::sqrt(60.0 * units_.hbar * omega_);
        double ga = units_.gamma() * a1();
        double lo = (-se + std::sqrt(se * se + 4.0 * p_ * ga)) / (2.0 * p_);
        double hi = (se + std::sqrt(se * se + 4.0 * p_ * ga)) / (2.0 * p_);
        return {lo, hi};
    }

  protected:
    double w(double r, double a) const override { return p_ * r - units_.gamma() * a / r; }
    double w_prime(double r, double a) const override {
        return p_ + units_.gamma() * a / (r * r);
    }
    double remainder_of(double) const override { return 2.0 * units_.hbar * omega_; }
    double level_of(long n) const override {
        return 2.0 * static_cast<double>(n) * units_.hbar * omega_;
    }
    double count_of(double E) const override { return E / (2.0 * units_.hbar * omega_); }
    double count_derivative_of(double) const override {
        return 1.0 / (2.0 * units_.hbar * omega_);
    }

  private:
    static BarclayCoefficients barclay_of(const ParamMap& params, const UnitSystem& units) {
        double omega = take(params, "omega", 1.0);
        require_positive(omega, "radial-ho omega");
        double B = 1.0 / (2.0 * (1.0 + static_cast<double>(angular_momentum(params))));
        return {BarclayClass::II, units.hbar * omega, B, -std::sqrt(B)};
    }

    double omega_;
    double p_;
};

// ---------------------------------------------------------------------------
// Radial Coulomb problem at fixed l, attraction -q/r:
//   W(r;a) = q/(2 gamma a) - gamma a / r,  a1 = l+1, alpha = 1,
//   R(a) = c(a)^2 - c(a+1)^2 with c(a) = q/(2 gamma a),
//   f(n) = c1^2 - c(a1+n)^2, threshold c1^2.
// Class I, A = c1^2/a1, B = 1/a1, C = -2 c1 / a1.
// ---------------------------------------------------------------------------
class CoulombRadial final : public CatalogEntry {
  public:
    CoulombRadial(const ParamMap& params, const UnitSystem& units)
        : CoulombRadial(take(params, "q", 1.0), angular_momentum(params), params, units) {}

    double well_center() const override { return units_.gamma() * a1() / c1_; }
    Interval residual_box() const override {
        double se = std::sqrt(0.96) * c1_;
        double ga = units_.gamma() * a1();
        return {ga / (c1_ + se), ga / (c1_ - se)};
    }

  protected:
    double w(double r, double a) const override { return c_of(a) - units_.gamma() * a / r; }
    double w_prime(double r, double a) const override { return units_.gamma() * a / (r * r); }
    double remainder_of(double a) const override {
        double ca = c_of(a), cb = c_of(a + 1.0);
        return ca * ca - cb * cb;
    }
    double level_of(long n) const override {
        double cn = c_of(a1() + static_cast<double>(n));
        return c1_ * c1_ - cn * cn;
    }
    double count_of(double E) const override {
        return a1() * (1.0 / std::sqrt(1.0 - E / (c1_ * c1_)) - 1.0);
    }
    double count_derivative_of(double E) const override {
        double u = 1.0 - E / (c1_ * c1_);
        return a1() / (2.0 * c1_ * c1_) * std::pow(u, -1.5);
    }

  private:
    CoulombRadial(double q, long l, const ParamMap& params, const UnitSystem& units)
        : CatalogEntry("coulomb", units, Domain{0.0, kInf},
                       barclay_of(q, l, units), static_cast<double>(l + 1), 1.0,
                       kUnboundedLevels, threshold_of(q, l, units), true,
                       ParamMap{{"q", q}, {"l", static_cast<double>(l)}}),
          q_(q),
          c1_(c_of_impl(q, static_cast<double>(l + 1), units)) {
        reject_unknown(params, {"q", "l"}, "coulomb");
        require_positive(q, "coulomb q");
    }

    static double c_of_impl(double q, double a, const UnitSystem& u) {
        return q / (2.0 * u.gamma() * a);
    }
    double c_of(double a) const { return c_of_impl(q_, a, units_); }

    static double threshold_of(double q, long l, const UnitSystem& u) {
        double c1 = c_of_impl(q, static_cast<double>(l + 1), u);
        return c1 * c1;
    }
    static BarclayCoefficients barclay_of(double q, long l, const UnitSystem& u) {
        require_positive(q, "coulomb q");
        double a1 = static_cast<double>(l + 1);
        double c1 = c_of_impl(q, a1, u);
        return {BarclayClass::I, c1 * c1 / a1, 1.0 / a1, -2.0 * c1 / a1};
    }

    double q_;
    double c1_;
};

// ---------------------------------------------------------------------------
// Morse and Poschl-Teller share the chain a1 = A gamma alpha, step -gamma alpha
// and the spectrum f(n) = a1^2 - (a1 - n gamma alpha)^2. A is the dimensionless
// well strength, so Barclay's B is a pure number for any hbar.
// ---------------------------------------------------------------------------
class FiniteLevelEntry : public CatalogEntry {
  protected:
    FiniteLevelEntry(std::string name, const UnitSystem& units, BarclayCoefficients bc,
                     double strength, double alpha_range, ParamMap params)
        : CatalogEntry(std::move(name), units, Domain{-kInf, kInf}, bc,
                       strength * units.gamma() * alpha_range,
                       -units.gamma() * alpha_range,
                       static_cast<long>(std::ceil(strength)),
                       std::pow(strength * units.gamma() * alpha_range, 2), false,
                       std::move(params)),
          strength_(strength),
          range_(alpha_range),
          ga_(units.gamma() * alpha_range),
          w0_(strength * units.gamma() * alpha_range) {}

    double remainder_of(double a) const override {
        double b = a - ga_;
        return a * a - b * b;
    }
    double level_of(long n) const override {
        double b = w0_ - static_cast<double>(n) * ga_;
        return w0_ * w0_ - b * b;
    }
    double count_of(double E) const override {
        return (w0_ - std::sqrt(w0_ * w0_ - E)) / ga_;
    }
    double count_derivative_of(double E) const override {
        return 1.0 / (2.0 * ga_ * std::sqrt(w0_ * w0_ - E));
    }

    double strength_;  // dimensionless A
    double range_;     // alpha
    double ga_;        // gamma * alpha
    double w0_;        // A gamma alpha, the W amplitude at a1
};

/// Morse well: W(x;a) = a - w0 exp(-alpha x). Class I, A = s (gamma alpha)^2,
/// B = 0, C = -gamma alpha.
class Morse final : public FiniteLevelEntry {
  public:
    Morse(const ParamMap& params, const UnitSystem& units)
        : FiniteLevelEntry("morse", units,
                           barclay_of(take(params, "A", 6.0), take(params, "alpha", 1.0), units),
                           checked_strength(params), take(params, "alpha", 1.0),
                           ParamMap{{"A", take(params, "A", 6.0)},
                                    {"alpha", take(params, "alpha", 1.0)}}) {
        reject_unknown(params, {"A", "alpha"}, "morse");
    }

    double well_center() const override { return 0.0; }
    Interval residual_box() const override {
        // turning points of W^2 at 0.9 of the threshold
        double s = std::sqrt(0.9);
        return {-std::log(1.0 + s) / range_, -std::log(1.0 - s) / range_};
    }

  protected:
    double w(double x, double a) const override { return a - w0_ * std::exp(-range_ * x); }
    double w_prime(double x, double) const override {
        return w0_ * range_ * std::exp(-range_ * x);
    }

  private:
    static double checked_strength(const ParamMap& params) {
        double s = take(params, "A", 6.0);
        require_positive(s, "morse A");
        require_positive(take(params, "alpha", 1.0), "morse alpha");
        return s;
    }
    static BarclayCoefficients barclay_of(double s, double alpha, const UnitSystem& u) {
        double ga = u.gamma() * alpha;
        return {BarclayClass::I, s * ga * ga, 0.0, -ga};
    }
};

/// Poschl-Teller well: W(x;a) = a tanh(alpha x). Class I,
/// A = s (gamma alpha)^2, B = -1/s, C = 0.
class PoschlTeller final : public FiniteLevelEntry {
  public:
    PoschlTeller(const ParamMap& params, const UnitSystem& units)
        : FiniteLevelEntry("poschl-teller", units,
                           barclay_of(take(params, "A", 5.0), take(params, "alpha", 1.0), units),
                           checked_strength(params), take(params, "alpha", 1.0),
                           ParamMap{{"A", take(params, "A", 5.0)},
                                    {"alpha", take(params, "alpha", 1.0)}}) {
        reject_unknown(params, {"A", "alpha"}, "poschl-teller");
    }

    double well_center() const override { return 0.0; }
    Interval residual_box() const override {
        double xb = std::atanh(std::sqrt(0.97)) / range_;
        return {-xb, xb};
    }

  protected:
    double w(double x, double a) const override { return a * std::tanh(range_ * x); }
    double w_prime(double x, double a) const override {
        double c = std::cosh(range_ * x);
        return a * range_ / (c * c);
    }

  private:
    static double checked_strength(const ParamMap& params) {
        double s = take(params, "A", 5.0);
        require_positive(s, "poschl-teller A");
        require_positive(take(params, "alpha", 1.0), "poschl-teller alpha");
        return s;
    }
    static BarclayCoefficients barclay_of(double s, double alpha, const UnitSystem& u) {
        double ga = u.gamma() * alpha;
        return {BarclayClass::I, s * ga * ga, -1.0 / s, 0.0};
    }
};

std::vector<std::string> entry_names() {
    return {"square-well", "harmonic-1d", "radial-ho", "coulomb", "morse", "poschl-teller"};
}

EntryPtr make_entry(const std::string& name, const ParamMap& params, const UnitSystem& units) {
    if (name == "square-well") return std::make_unique<SquareWell>(params, units);
    if (name == "harmonic-1d") return std::make_unique<Harmonic1d>(params, units);
    if (name == "radial-ho") return std::make_unique<RadialHo>(params, units);
    if (name == "coulomb") return std::make_unique<CoulombRadial>(params, units);
    if (name == "morse") return std::make_unique<Morse>(params, units);
    if (name == "poschl-teller") return std::make_unique<PoschlTeller>(params, units);
    throw Error(ErrorKind::UnknownEntry, "unknown entry '" + name + "'");
}

std::vector<EntryPtr> default_catalog(const UnitSystem& units) {
    std::vector<EntryPtr> out;
    for (const auto& n : entry_names()) out.push_back(make_entry(n, {}, units));
    return out;
}

}  // namespace sipot
