#include "sipot/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sipot/catalog.hpp"
#include "sipot/maslov.hpp"
#include "sipot/oracle.hpp"
#include "sipot/quadrature.hpp"
#include "sipot/trace.hpp"
#include "sipot/verify.hpp"

namespace sipot::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain:
        case ErrorKind::Parameter:
        case ErrorKind::Range:
        case ErrorKind::SpectrumExhausted:
        case ErrorKind::Configuration:
        case ErrorKind::UnknownEntry:
        case ErrorKind::Usage:
            return kUsage;
        default:
            return kFailure;
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ParamMap parse_params(const std::vector<std::string>& kvs) {
    ParamMap params;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorKind::Usage, "--param expects key=value, got '" + kv + "'");
        std::string key = kv.substr(0, eq);
        std::string val = kv.substr(eq + 1);
        size_t used = 0;
        double v;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Usage, "--param " + key + ": '" + val + "' is not a number");
        }
        if (used != val.size())
            throw Error(ErrorKind::Usage, "--param " + key + ": '" + val + "' is not a number");
        params[key] = v;
    }
    return params;
}

struct CommonOpts {
    double hbar = 1.0;
    double mass = 0.5;
    std::vector<std::string> params;
    std::string out_path;
    std::string format = "csv";

    UnitSystem units() const { return {hbar, mass}; }
};

void add_unit_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--hbar", o.hbar, "Planck constant over 2 pi (default 1)");
    cmd->add_option("--mass", o.mass, "particle mass (default 1/2, so 2m = 1)");
}

void add_param_flag(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--param", o.params, "entry parameter as key=value (repeatable)");
}

/// Route the payload to --out or to the console.
void emit(const CommonOpts& o, std::ostream& console, const std::string& payload) {
    if (o.out_path.empty()) {
        console << payload;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Usage, "cannot open output file '" + o.out_path + "'");
    f << payload;
}

int cmd_list(const CommonOpts& o, std::ostream& out) {
    auto catalog = default_catalog(o.units());
    std::ostringstream s;
    if (o.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : catalog) {
            const auto& bc = e->barclay();
            nlohmann::json params;
            for (const auto& [k, v] : e->params()) params[k] = v;
            arr.push_back({{"entry", e->name()},
                           {"class", bc.class_tag == BarclayClass::I ? "I" : "II"},
                           {"A", bc.A},
                           {"B", bc.B},
                           {"C", bc.C},
                           {"eta", eta_closed(*e).value},
                           {"levels", e->finite_spectrum()
                                          ? nlohmann::json(e->bound_state_count())
                                          : nlohmann::json("unbounded")},
                           {"params", params}});
        }
        s << arr.dump(2) << "\n";
    } else {
        s << "entry          class  A               B               C               eta             levels\n";
        for (const auto& e : catalog) {
            const auto& bc = e->barclay();
            s << std::left << std::setw(15) << e->name() << std::setw(7)
              << (bc.class_tag == BarclayClass::I ? "I" : "II") << std::setw(16) << fmt(bc.A)
              << std::setw(16) << fmt(bc.B) << std::setw(16) << fmt(bc.C) << std::setw(16)
              << fmt(eta_closed(*e).value);
            if (e->finite_spectrum())
                s << e->bound_state_count();
            else
                s << "unbounded";
            s << "\n";
        }
    }
    emit(o, out, s.str());
    return kOk;
}

int cmd_spectrum(const std::string& entry_name, long levels, const CommonOpts& o,
                 std::ostream& out) {
    auto entry = make_entry(entry_name, parse_params(o.params), o.units());
    long n_levels = std::min(levels, entry->bound_state_count());
    std::ostringstream s;
    if (o.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (long n = 0; n < n_levels; ++n)
            arr.push_back({{"n", n}, {"E", entry->spectrum_level(n)}});
        s << arr.dump(2) << "\n";
    } else {
        s << "n,E\n";
        for (long n = 0; n < n_levels; ++n)
            s << n << "," << fmt(entry->spectrum_level(n)) << "\n";
    }
    emit(o, out, s.str());
    return kOk;
}

int cmd_verify(const std::string& entry_name, const std::string& check_name, double tol,
               std::uint64_t seed, const CommonOpts& o, std::ostream& out) {
    std::vector<EntryPtr> owned;
    if (entry_name == "all") {
        owned = default_catalog(o.units());
    } else {
        owned.push_back(make_entry(entry_name, parse_params(o.params), o.units()));
    }

    std::vector<CheckReport> reports;
    if (check_name == "all") {
        reports = run_all(owned, seed);
    } else {
        CheckKind kind = check_kind_from_string(check_name);
        double use_tol = tol > 0.0 ? tol : default_tolerance(kind);
        for (const auto& e : owned) reports.push_back(run_check(*e, kind, use_tol, seed));
    }

    std::ostringstream s;
    if (o.format == "json") {
        s << to_json(reports) << "\n";
    } else {
        for (const auto& r : reports) {
            s << (r.pass ? "pass" : "FAIL") << "  " << std::left << std::setw(15) << r.entry
              << std::setw(9) << to_string(r.kind) << " worst=" << fmt(r.worst_residual)
              << " tol=" << fmt(r.tolerance);
            if (!r.note.empty()) s << "  [" << r.note << "]";
            s << "\n";
        }
    }
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw Error(ErrorKind::Usage, "cannot open output file '" + o.out_path + "'");
        f << to_json(reports) << "\n";
        out << s.str();
    } else {
        out << s.str();
    }
    return all_pass(reports) ? kOk : kFailure;
}

int cmd_trace(const std::string& entry_name, double e_min, double e_max, double sigma,
              long k_max, long samples, const CommonOpts& o, std::ostream& out) {
    auto entry = make_entry(entry_name, parse_params(o.params), o.units());
    DensityCurve curve = density_curve(*entry, e_min, e_max, samples, sigma, k_max);
    DensityCurve ref = broadened_stick_density(*entry, curve.energies, sigma);
    std::ostringstream s;
    write_density_csv(s, curve, ref);
    emit(o, out, s.str());
    return kOk;
}

int cmd_oracle(const std::string& entry_name, long levels, long points, const CommonOpts& o,
               std::ostream& out) {
    auto entry = make_entry(entry_name, parse_params(o.params), o.units());
    long n_levels = std::min(levels, entry->bound_state_count());
    GridSpec grid = default_grid(*entry, n_levels, points);
    std::vector<double> fd = fd_spectrum(*entry, grid, n_levels);
    std::ostringstream s;
    if (o.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (long n = 0; n < n_levels; ++n)
            arr.push_back({{"n", n},
                           {"catalog", entry->spectrum_level(n)},
                           {"fd", fd[static_cast<size_t>(n)]},
                           {"abs_diff",
                            std::abs(fd[static_cast<size_t>(n)] - entry->spectrum_level(n))}});
        s << arr.dump(2) << "\n";
    } else {
        s << "n,catalog,fd,abs_diff\n";
        for (long n = 0; n < n_levels; ++n) {
            double want = entry->spectrum_level(n);
            double got = fd[static_cast<size_t>(n)];
            s << n << "," << fmt(want) << "," << fmt(got) << "," << fmt(std::abs(got - want))
              << "\n";
        }
    }
    emit(o, out, s.str());
    return kOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"shape-invariant potential toolkit: exact spectra, SWKB actions, "
                 "trace-formula densities, and their cross-checks"};
    app.require_subcommand(1);

    // list
    CommonOpts list_opts;
    auto* list_cmd = app.add_subcommand("list", "catalog entries with Barclay data and eta");
    add_unit_flags(list_cmd, list_opts);
    list_cmd->add_option("--format", list_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    list_cmd->add_option("--out", list_opts.out_path, "write to file instead of stdout");

    // spectrum
    CommonOpts spec_opts;
    std::string spec_entry;
    long spec_levels = 10;
    auto* spec_cmd = app.add_subcommand("spectrum", "bound levels n, E_n of one entry");
    spec_cmd->add_option("entry", spec_entry, "catalog entry name")->required();
    spec_cmd->add_option("--levels", spec_levels, "number of levels (default 10)")
        ->check(CLI::PositiveNumber);
    add_param_flag(spec_cmd, spec_opts);
    add_unit_flags(spec_cmd, spec_opts);
    spec_cmd->add_option("--format", spec_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    spec_cmd->add_option("--out", spec_opts.out_path, "write to file instead of stdout");

    // verify
    CommonOpts ver_opts;
    std::string ver_entry = "all", ver_check = "all";
    double ver_tol = 0.0;
    std::uint64_t ver_seed = 1;
    auto* ver_cmd = app.add_subcommand("verify", "run named checks; exit 0 iff all pass");
    ver_cmd->add_option("entry", ver_entry, "entry name or 'all'");
    ver_cmd->add_option("--check", ver_check,
                        "swkb|wkb|semi|count|shape|barclay|eta|oracle|trace|all");
    ver_cmd->add_option("--tol", ver_tol, "override the default tolerance");
    ver_cmd->add_option("--seed", ver_seed, "seed for the sampled energies");
    add_param_flag(ver_cmd, ver_opts);
    add_unit_flags(ver_cmd, ver_opts);
    ver_opts.format = "text";
    ver_cmd->add_option("--format", ver_opts.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    ver_cmd->add_option("--out", ver_opts.out_path, "also write the JSON report to a file");

    // trace
    CommonOpts trace_opts;
    std::string trace_entry;
    double tr_emin = 0.0, tr_emax = 0.0, tr_sigma = 0.0;
    long tr_kmax = 10000, tr_samples = 0;
    auto* trace_cmd =
        app.add_subcommand("trace", "smoothed trace-formula density as CSV "
                                    "(E,smooth,oscillating,total,reference)");
    trace_cmd->add_option("entry", trace_entry, "catalog entry name")->required();
    trace_cmd->add_option("--emin", tr_emin, "grid start")->required();
    trace_cmd->add_option("--emax", tr_emax, "grid end")->required();
    trace_cmd->add_option("--sigma", tr_sigma, "Gaussian smoothing width")->required();
    trace_cmd->add_option("--kmax", tr_kmax, "orbit-repetition truncation (default 10000)");
    trace_cmd->add_option("--samples", tr_samples, "grid samples")->required();
    add_param_flag(trace_cmd, trace_opts);
    add_unit_flags(trace_cmd, trace_opts);
    trace_cmd->add_option("--out", trace_opts.out_path, "write CSV to file");

    // oracle
    CommonOpts or_opts;
    std::string or_entry;
    long or_levels = 4, or_points = 4000;
    auto* or_cmd = app.add_subcommand("oracle", "catalog spectrum vs finite-difference solver");
    or_cmd->add_option("entry", or_entry, "catalog entry name")->required();
    or_cmd->add_option("--levels", or_levels, "levels to compare (default 4)")
        ->check(CLI::PositiveNumber);
    or_cmd->add_option("--grid-points", or_points, "interior grid points (default 4000)");
    add_param_flag(or_cmd, or_opts);
    add_unit_flags(or_cmd, or_opts);
    or_cmd->add_option("--format", or_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    or_cmd->add_option("--out", or_opts.out_path, "write to file instead of stdout");

    // CLI11 wants argv-style input: program name first, then the arguments.
    std::vector<const char*> argv;
    argv.push_back("sipot");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << app.help();
        return kUsage;
    }

    try {
        if (list_cmd->parsed()) return cmd_list(list_opts, out);
        if (spec_cmd->parsed()) return cmd_spectrum(spec_entry, spec_levels, spec_opts, out);
        if (ver_cmd->parsed())
            return cmd_verify(ver_entry, ver_check, ver_tol, ver_seed, ver_opts, out);
        if (trace_cmd->parsed())
            return cmd_trace(trace_entry, tr_emin, tr_emax, tr_sigma, tr_kmax, tr_samples,
                             trace_opts, out);
        if (or_cmd->parsed()) return cmd_oracle(or_entry, or_levels, or_points, or_opts, out);
    } catch (const Error& e) {
        nlohmann::json diag{{"error", to_string(e.kind())}, {"message", e.what()}};
        err << diag.dump() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        nlohmann::json diag{{"error", "numeric"}, {"message", e.what()}};
        err << diag.dump() << "\n";
        return kFailure;
    }
    return kUsage;
}

}  // namespace sipot::cli
