#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sipot/catalog.hpp"

namespace sipot {

enum class CheckKind { Swkb, Wkb, Semi, Count, Shape, Barclay, Eta, Oracle, Trace };

const char* to_string(CheckKind kind);
CheckKind check_kind_from_string(const std::string& name);
std::vector<CheckKind> all_check_kinds();

struct CheckSample {
    double at;        // sampled E, x, or level index
    double residual;  // |measured deviation| in the check's units
};

/// Machine-readable record of one verification run.
struct CheckReport {
    std::string entry;
    CheckKind kind;
    double tolerance;
    double worst_residual;
    long sample_count;
    bool pass;
    std::vector<CheckSample> details;
    std::string note;  // diagnostic text (numeric failures); not serialised
};

/// Per-kind default tolerance. Pure quadrature checks run at 1e-8, mixed
/// quadrature/closed-form checks at 1e-6, analytic residual checks at 1e-10,
/// the eigensolver comparison at 1e-3 relative, and the trace peak agreement
/// at 1 in normalised units (location per sigma/2, height per 2%).
double default_tolerance(CheckKind kind);

/// Run one named check. Residuals are evaluated over the first
/// min(10, bound count - 1) + 1 levels and/or 20 random energies drawn
/// uniformly in (0.1 E1, E_top) from the seed; identical inputs give
/// identical reports. Numeric failures become failed reports, never throws.
CheckReport run_check(const CatalogEntry& entry, CheckKind kind, double tol, std::uint64_t seed);

inline CheckReport run_check(const CatalogEntry& entry, CheckKind kind, std::uint64_t seed = 1) {
    return run_check(entry, kind, default_tolerance(kind), seed);
}

/// Every (entry x kind) pair, ordered by entry name then kind.
std::vector<CheckReport> run_all(const std::vector<const CatalogEntry*>& entries,
                                 std::uint64_t seed = 1);
std::vector<CheckReport> run_all(const std::vector<EntryPtr>& entries, std::uint64_t seed = 1);

bool all_pass(const std::vector<CheckReport>& reports);

/// {entry, kind, tol, worst_residual, samples: [{at, residual}], pass}
std::string to_json(const CheckReport& report);
std::string to_json(const std::vector<CheckReport>& reports);

/// The seeded random energies used by the energy-sampled checks (exposed for
/// reproducibility in reports and tests).
std::vector<double> seeded_energies(const CatalogEntry& entry, std::uint64_t seed, int count);

/// Low-discrepancy points in the entry's residual box.
std::vector<double> residual_points(const CatalogEntry& entry, std::uint64_t seed, int count);

}  // namespace sipot
