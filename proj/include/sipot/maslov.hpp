#pragma once

#include <optional>

#include "sipot/catalog.hpp"

namespace sipot {

enum class EtaMethod { ClosedI, ClosedII, SeriesI, SeriesII, Action };

/// The energy-independent quantisation constant eta in S1(E)/h = F(E) + eta.
struct EtaValue {
    double value;
    EtaMethod method;
    std::optional<double> tail_bound;  // present iff method is a series
};

/// Class I closed form (1 - sqrt(1-B))/B, with the B -> 0 limit 1/2.
/// Requires B <= 1.
EtaValue eta_class1_closed(double B);

/// Class II closed form: sum over z = B +- C sqrt(B) of (1 - sqrt(1-z))/(2z),
/// with the z -> 0 limit 1/4 per term. Requires B >= 0 and both z <= 1.
EtaValue eta_class2_closed(double B, double C);

/// Truncated series (1/2)(1 + sum_{k>=1} B^k (2k-1)!!/((k+1)(2k)!!)), stopped
/// when a term drops below tol or k reaches k_max. tail_bound is a
/// conservative bound on the dropped remainder. Throws Convergence when
/// |B| < 1 strictly, tol was not reached, and the tail exceeds 10 tol; at
/// |B| = 1 the truncated sum with its tail bound is always returned.
EtaValue eta_class1_series(double B, double tol = 1e-12, long k_max = 200000);

/// Class II series via the mean of z+^k and z-^k inside the class-I kernel.
EtaValue eta_class2_series(double B, double C, double tol = 1e-12, long k_max = 200000);

/// eta = S1(0)/h from the classical action of V1 at zero energy.
EtaValue eta_from_action(const CatalogEntry& entry);

/// Closed form dispatched on the entry's Barclay class.
EtaValue eta_closed(const CatalogEntry& entry);

/// Series dispatched on the entry's Barclay class.
EtaValue eta_series(const CatalogEntry& entry, double tol = 1e-12, long k_max = 200000);

/// Raw binomial inner sum of the class II series,
///   sum_{n=0..floor(k/2)} k! B^(k-n) C^(2n) / ((k-2n)! (2n)!),
/// kept as a direct cross-check of the z-mean identity for small k.
double class2_inner_raw(double B, double C, int k);

/// (z+^k + z-^k)/2 with z+- = B +- C sqrt(B).
double class2_inner_zmean(double B, double C, int k);

}  // namespace sipot
