#include "sipot/maslov.hpp"

#include <cmath>
#include <numbers>

#include "sipot/quadrature.hpp"

namespace sipot {

namespace {

/// (1 - sqrt(1-z))/z with a series branch near z = 0 where the subtraction
/// cancels.
double catalan_kernel(double z) {
    if (std::abs(z) < 1e-4)
        return 0.5 + z * (0.125 + z * (0.0625 + z * 5.0 / 128.0));
    return (1.0 - std::sqrt(1.0 - z)) / z;
}

void require_z(double z, const char* label) {
    if (z > 1.0)
        throw Error(ErrorKind::Domain,
                    std::string(label) + " exceeds 1; eta would be complex");
}

/// Series sum over k >= 1 of c_k * m_k with c_k = (2k-1)!!/((k+1)(2k)!!) and
/// m_k the mean of z^k over the given z list. Terms are generated by the
/// double-factorial recurrence; no factorials are formed.
struct SeriesSum {
    double sum = 0.0;
    double tail_bound = 0.0;
    bool reached_tol = false;
    long terms = 0;
};

SeriesSum zmean_series(const std::vector<double>& zs, double tol, long k_max) {
    SeriesSum out;
    size_t m = zs.size();
    std::vector<double> pow(m, 1.0);
    double c = 1.0;  // c_k with the (k+1) factor handled separately
    double zmax = 0.0;
    for (double z : zs) zmax = std::max(zmax, std::abs(z));
    long k = 0;
    double term_abs = 0.0;
    while (k < k_max) {
        ++k;
        // c_k = c_{k-1} * (2k-1)/(2k); full coefficient is c_k/(k+1)
        c *= (2.0 * k - 1.0) / (2.0 * k);
        double mean = 0.0, mean_abs = 0.0;
        for (size_t i = 0; i < m; ++i) {
            pow[i] *= zs[i];
            mean += pow[i];
            mean_abs += std::abs(pow[i]);
        }
        mean /= static_cast<double>(m);
        mean_abs /= static_cast<double>(m);
        out.sum += c / (k + 1.0) * mean;
        term_abs = c / (k + 1.0) * mean_abs;
        if (term_abs < tol && k >= 2) {
            out.reached_tol = true;
            break;
        }
    }
    out.terms = k;
    // Remainder bound. Coefficients obey c_k/(k+1) <= k^(-3/2)/sqrt(pi):
    // at zmax = 1 compare with the integral of x^(-3/2); below 1 the
    // magnitudes decay at least geometrically from the last kept term.
    if (zmax >= 1.0 - 1e-12) {
        out.tail_bound = 2.0 / std::sqrt(std::numbers::pi * static_cast<double>(k));
    } else {
        out.tail_bound = term_abs * zmax / (1.0 - zmax);
    }
    return out;
}

EtaValue series_eta(const std::vector<double>& zs, EtaMethod method, double tol, long k_max,
                    double zmax_abs) {
    SeriesSum s = zmean_series(zs, tol, k_max);
    double value = 0.5 * (1.0 + s.sum);
    double tail = 0.5 * s.tail_bound;
    if (!s.reached_tol && zmax_abs < 1.0 - 1e-12 && tail > 10.0 * tol)
        throw Error(ErrorKind::Convergence,
                    "eta series did not reach tolerance; partial sum " + std::to_string(value));
    return {value, method, tail};
}

}  // namespace

EtaValue eta_class1_closed(double B) {
    require_z(B, "B");
    return {catalan_kernel(B), EtaMethod::ClosedI, std::nullopt};
}

EtaValue eta_class2_closed(double B, double C) {
    if (B < 0.0) throw Error(ErrorKind::Domain, "class II requires B >= 0");
    double s = C * std::sqrt(B);
    double zp = B + s, zm = B - s;
    require_z(zp, "z+");
    require_z(zm, "z-");
    return {0.5 * (catalan_kernel(zp) + catalan_kernel(zm)), EtaMethod::ClosedII, std::nullopt};
}

EtaValue eta_class1_series(double B, double tol, long k_max) {
    require_z(B, "B");
    return series_eta({B}, EtaMethod::SeriesI, tol, k_max, std::abs(B));
}

EtaValue eta_class2_series(double B, double C, double tol, long k_max) {
    if (B < 0.0) throw Error(ErrorKind::Domain, "class II requires B >= 0");
    double s = C * std::sqrt(B);
    double zp = B + s, zm = B - s;
    require_z(zp, "z+");
    require_z(zm, "z-");
    return series_eta({zp, zm}, EtaMethod::SeriesII, tol, k_max,
                      std::max(std::abs(zp), std::abs(zm)));
}

EtaValue eta_from_action(const CatalogEntry& entry) {
    QuadratureResult s0 = action_integral(entry, 0.0, ActionTarget::V1);
    return {s0.value / entry.units().planck_h(), EtaMethod::Action, std::nullopt};
}

EtaValue eta_closed(const CatalogEntry& entry) {
    const auto& bc = entry.barclay();
    return bc.class_tag == BarclayClass::I ? eta_class1_closed(bc.B)
                                           : eta_class2_closed(bc.B, bc.C);
}

EtaValue eta_series(const CatalogEntry& entry, double tol, long k_max) {
    const auto& bc = entry.barclay();
    return bc.class_tag == BarclayClass::I ? eta_class1_series(bc.B, tol, k_max)
                                           : eta_class2_series(bc.B, bc.C, tol, k_max);
}

double class2_inner_raw(double B, double C, int k) {
    // sum over even binomial slots: C(k, 2n) B^(k-n) C^(2n)
    double total = 0.0;
    for (int n = 0; 2 * n <= k; ++n) {
        double binom = 1.0;
        for (int j = 0; j < 2 * n; ++j) binom = binom * (k - j) / (j + 1.0);
        total += binom * std::pow(B, k - n) * std::pow(C, 2 * n);
    }
    return total;
}

double class2_inner_zmean(double B, double C, int k) {
    double s = C * std::sqrt(B);
    return 0.5 * (std::pow(B + s, k) + std::pow(B - s, k));
}

}  // namespace sipot
