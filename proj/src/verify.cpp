#include "sipot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "sipot/maslov.hpp"
#include "sipot/oracle.hpp"
#include "sipot/quadrature.hpp"
#include "sipot/trace.hpp"

namespace sipot {

namespace {

constexpr int kEnergySamples = 20;
constexpr int kResidualSamples = 1000;

/// 64-bit splitmix step; used instead of <random> distributions so that the
/// sampled energies are identical across standard libraries.
std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
    return static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53;
}

long top_level(const CatalogEntry& entry) { return std::min(10L, entry.bound_state_count() - 1); }

}  // namespace

std::vector<double> seeded_energies(const CatalogEntry& entry, std::uint64_t seed, int count) {
    double e1 = entry.spectrum_level(1);
    double e_top = entry.spectrum_level(top_level(entry));
    std::uint64_t state = seed ^ 0x5297a3d0c1f5b2e7ull;
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back(0.1 * e1 + (e_top - 0.1 * e1) * unit_double(state));
    return out;
}

std::vector<double> residual_points(const CatalogEntry& entry, std::uint64_t seed, int count) {
    Interval box = entry.residual_box();
    // golden-ratio sequence: low-discrepancy, deterministic per seed
    const double phi = 0.6180339887498949;
    double u = 0.5 + static_cast<double>(seed % 8191) * phi;
    u -= std::floor(u);
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        u += phi;
        u -= std::floor(u);
        out.push_back(box.lo + (box.hi - box.lo) * u);
    }
    return out;
}

const char* to_string(CheckKind kind) {
    switch (kind) {
        case CheckKind::Swkb: return "swkb";
        case CheckKind::Wkb: return "wkb";
        case CheckKind::Semi: return "semi";
        case CheckKind::Count: return "count";
        case CheckKind::Shape: return "shape";
        case CheckKind::Barclay: return "barclay";
        case CheckKind::Eta: return "eta";
        case CheckKind::Oracle: return "oracle";
        case CheckKind::Trace: return "trace";
    }
    return "?";
}

CheckKind check_kind_from_string(const std::string& name) {
    for (CheckKind k : all_check_kinds())
        if (name == to_string(k)) return k;
    throw Error(ErrorKind::Usage, "unknown check kind '" + name + "'");
}

std::vector<CheckKind> all_check_kinds() {
    return {CheckKind::Swkb, CheckKind::Wkb, CheckKind::Semi,
            CheckKind::Count, CheckKind::Shape, CheckKind::Barclay,
            CheckKind::Eta, CheckKind::Oracle, CheckKind::Trace};
}

double default_tolerance(CheckKind kind) {
    switch (kind) {
        case CheckKind::Swkb:
        case CheckKind::Wkb: return 1e-8;
        case CheckKind::Semi:
        case CheckKind::Eta:
        case CheckKind::Count: return 1e-6;
        case CheckKind::Shape:
        case CheckKind::Barclay: return 1e-10;
        case CheckKind::Oracle: return 1e-3;
        case CheckKind::Trace: return 1.0;
    }
    return 1e-6;
}

namespace {

using Collector = std::vector<CheckSample>;

/// SWKB quantisation: the W^2 action at E_n equals n h, relative to 1 + n h.
void check_swkb(const CatalogEntry& e, Collector& out) {
    double h = e.units().planck_h();
    for (long n = 0; n <= top_level(e); ++n) {
        double en = e.spectrum_level(n);
        double s = action_integral(e, en, ActionTarget::Wsq).value;
        double want = h * static_cast<double>(n);
        out.push_back({static_cast<double>(n), std::abs(s - want) / (1.0 + want)});
    }
}

/// Quantisation with the Maslov constant: S1(E_n)/h = n + eta.
void check_wkb(const CatalogEntry& e, Collector& out) {
    double h = e.units().planck_h();
    double eta = eta_closed(e).value;
    for (long n = 0; n <= top_level(e); ++n) {
        double en = e.spectrum_level(n);
        double s = action_integral(e, en, ActionTarget::V1).value;
        out.push_back({static_cast<double>(n),
                       std::abs(s / h - static_cast<double>(n) - eta)});
    }
}

/// The gap [S1(E) - S_swkb(E)]/h is the energy-independent constant eta.
void check_semi(const CatalogEntry& e, std::uint64_t seed, Collector& out) {
    double h = e.units().planck_h();
    double eta = eta_closed(e).value;
    for (double en : seeded_energies(e, seed, kEnergySamples)) {
        double gap = (action_integral(e, en, ActionTarget::V1).value -
                      action_integral(e, en, ActionTarget::Wsq).value) / h;
        out.push_back({en, std::abs(gap - eta)});
    }
}

/// The W^2 action equals 2 pi hbar F(E) at any E, and the inverse-sqrt
/// integral of V1 reproduces the analytic counting derivative.
void check_count(const CatalogEntry& e, std::uint64_t seed, Collector& out) {
    double h = e.units().planck_h();
    for (double en : seeded_energies(e, seed, kEnergySamples)) {
        double r1 = std::abs(action_integral(e, en, ActionTarget::Wsq).value / h -
                             e.counting(en));
        double fp = e.counting_derivative(en);
        double r2 = std::abs(smooth_density_integral(e, en).value - fp) / fp;
        out.push_back({en, std::max(r1, r2)});
    }
}

void check_shape(const CatalogEntry& e, std::uint64_t seed, Collector& out) {
    for (double x : residual_points(e, seed, kResidualSamples))
        out.push_back({x, std::abs(e.shape_invariance_residual(x))});
}

void check_barclay(const CatalogEntry& e, std::uint64_t seed, Collector& out) {
    for (double x : residual_points(e, seed, kResidualSamples))
        out.push_back({x, std::abs(e.barclay_residual(x))});
}

/// Closed form vs quadrature and vs the truncated series (net of its tail).
void check_eta(const CatalogEntry& e, Collector& out) {
    double closed = eta_closed(e).value;
    double action = eta_from_action(e).value;
    out.push_back({0.0, std::abs(closed - action)});
    EtaValue series = eta_series(e, 1e-10, 200000);
    double slack = series.tail_bound.value_or(0.0) + 1e-9;
    out.push_back({1.0, std::max(0.0, std::abs(closed - series.value) - slack)});
}

/// Catalog spectrum vs the finite-difference eigensolver, relative to
/// max(|E_n|, E_1).
void check_oracle(const CatalogEntry& e, Collector& out) {
    long levels = std::min(5L, e.bound_state_count());
    GridSpec grid = default_grid(e, levels);
    std::vector<double> fd = fd_spectrum(e, grid, levels);
    double scale = e.spectrum_level(1);
    for (long n = 0; n < levels; ++n) {
        double want = e.spectrum_level(n);
        out.push_back({static_cast<double>(n),
                       std::abs(fd[static_cast<size_t>(n)] - want) /
                           std::max(std::abs(want), scale)});
    }
}

/// Trace-formula curve vs the broadened-stick reference on a window of
/// resolved levels: peak locations within sigma/2 and heights within 2%,
/// reported in units of those tolerances.
void check_trace(const CatalogEntry& e, Collector& out) {
    long n_hi = std::min(4L, e.bound_state_count() - 1);
    double sup = e.spectrum_sup();
    double sigma = 0.0, lo = 0.0, hi = 0.0;
    for (; n_hi >= 1; --n_hi) {
        double gap_min = std::numeric_limits<double>::infinity();
        for (long n = 0; n < n_hi; ++n)
            gap_min = std::min(gap_min, e.spectrum_level(n + 1) - e.spectrum_level(n));
        if (n_hi + 1 < e.bound_state_count())
            gap_min = std::min(gap_min, e.spectrum_level(n_hi + 1) - e.spectrum_level(n_hi));
        sigma = gap_min / 15.0;
        lo = e.spectrum_level(1) - 8.0 * sigma;
        hi = e.spectrum_level(n_hi) + 8.0 * sigma;
        if (hi < sup) break;
    }
    if (n_hi < 1) throw Error(ErrorKind::Configuration, "no usable trace window");

    long samples = static_cast<long>(std::ceil((hi - lo) / (sigma / 5.0))) + 2;
    DensityCurve curve = density_curve(e, lo, hi, samples, sigma, 1000000);
    DensityCurve ref = broadened_stick_density(e, curve.energies, sigma);
    double min_height = 0.5 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    PeakList pc = extract_peaks(curve, min_height);
    PeakList pr = extract_peaks(ref, min_height);
    if (pc.energies.size() != pr.energies.size() || pc.energies.empty())
        throw Error(ErrorKind::Numeric, "trace and reference peak counts differ");
    for (size_t i = 0; i < pc.energies.size(); ++i) {
        double r_loc = std::abs(pc.energies[i] - pr.energies[i]) / (0.5 * sigma);
        double r_height = std::abs(pc.heights[i] - pr.heights[i]) / (0.02 * pr.heights[i]);
        out.push_back({pr.energies[i], std::max(r_loc, r_height)});
    }
}

}  // namespace

CheckReport run_check(const CatalogEntry& entry, CheckKind kind, double tol, std::uint64_t seed) {
    CheckReport report;
    report.entry = entry.name();
    report.kind = kind;
    report.tolerance = tol;
    report.worst_residual = 0.0;
    try {
        switch (kind) {
            case CheckKind::Swkb: check_swkb(entry, report.details); break;
            case CheckKind::Wkb: check_wkb(entry, report.details); break;
            case CheckKind::Semi: check_semi(entry, seed, report.details); break;
            case CheckKind::Count: check_count(entry, seed, report.details); break;
            case CheckKind::Shape: check_shape(entry, seed, report.details); break;
            case CheckKind::Barclay: check_barclay(entry, seed, report.details); break;
            case CheckKind::Eta: check_eta(entry, report.details); break;
            case CheckKind::Oracle: check_oracle(entry, report.details); break;
            case CheckKind::Trace: check_trace(entry, report.details); break;
        }
        for (const auto& s : report.details)
            report.worst_residual = std::max(report.worst_residual, s.residual);
        report.pass = report.worst_residual <= tol;
    } catch (const Error& err) {
        report.pass = false;
        report.worst_residual = std::numeric_limits<double>::infinity();
        report.note = std::string(to_string(err.kind())) + ": " + err.what();
        if (report.details.empty())
            report.details.push_back({0.0, report.worst_residual});
    } catch (const std::exception& err) {
        report.pass = false;
        report.worst_residual = std::numeric_limits<double>::infinity();
        report.note = err.what();
        if (report.details.empty())
            report.details.push_back({0.0, report.worst_residual});
    }
    report.sample_count = static_cast<long>(report.details.size());
    return report;
}

std::vector<CheckReport> run_all(const std::vector<const CatalogEntry*>& entries,
                                 std::uint64_t seed) {
    std::vector<const CatalogEntry*> sorted = entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const CatalogEntry* a, const CatalogEntry* b) { return a->name() < b->name(); });
    std::vector<CheckReport> out;
    for (const CatalogEntry* e : sorted)
        for (CheckKind k : all_check_kinds())
            out.push_back(run_check(*e, k, default_tolerance(k), seed));
    return out;
}

std::vector<CheckReport> run_all(const std::vector<EntryPtr>& entries, std::uint64_t seed) {
    std::vector<const CatalogEntry*> ptrs;
    ptrs.reserve(entries.size());
    for (const auto& e : entries) ptrs.push_back(e.get());
    return run_all(ptrs, seed);
}

bool all_pass(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const CheckReport& r) { return r.pass; });
}

namespace {

nlohmann::json report_json(const CheckReport& r) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : r.details) samples.push_back({{"at", s.at}, {"residual", s.residual}});
    return {{"entry", r.entry},          {"kind", to_string(r.kind)},
            {"tol", r.tolerance},        {"worst_residual", r.worst_residual},
            {"samples", std::move(samples)}, {"pass", r.pass}};
}

}  // namespace

std::string to_json(const CheckReport& report) { return report_json(report).dump(2); }

std::string to_json(const std::vector<CheckReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    return arr.dump(2);
}

}  // namespace sipot
