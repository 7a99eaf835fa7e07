#include "cstre/cli.hpp"

#include "cstre/analytic.hpp"
#include "cstre/criteria.hpp"
#include "cstre/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cstre::cli {

namespace {

// Thrown for bad flag combinations that CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_number(const char* pattern, double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

std::string sig10(double value)
{
    return format_number("%.10g", value);
}

std::string fixed4(double value)
{
    return format_number("%.4f", round_half_up(value, 4));
}

FamilyKind family_flag(const std::string& text, int n)
{
    const auto family = parse_family(text);
    if (!family) throw UsageError("unknown family '" + text + "' (expected pp-w, pp-ghz, wl-w or wl-ghz)");
    if (n < min_qubits(*family) || n > kDefaultMaxQubits) {
        throw UsageError(text + " requires " + std::to_string(min_qubits(*family)) + " <= n <= " +
                         std::to_string(kDefaultMaxQubits) + ", got " + std::to_string(n));
    }
    return *family;
}

CriterionKind criterion_flag(const std::string& text)
{
    const auto kind = parse_criterion(text);
    if (!kind) throw UsageError("unknown criterion '" + text + "'");
    return *kind;
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + path + "' for writing");
    return file;
}

void finish_output(std::ofstream& file, const std::string& path)
{
    file.close();
    if (!file) throw UsageError("failed writing '" + path + "'");
}

struct ThresholdFlags {
    std::string family;
    int n = 0;
    std::string criterion;
    std::optional<double> q;
    double tol = 1e-10;
};

int cmd_threshold(const ThresholdFlags& flags, std::ostream& out)
{
    const FamilyKind family = family_flag(flags.family, flags.n);
    const CriterionKind kind = criterion_flag(flags.criterion);
    if (needs_order(kind) && !flags.q) throw UsageError("--q is required for " + flags.criterion);
    if (!needs_order(kind) && flags.q) throw UsageError("--q does not apply to " + flags.criterion);
    if (!(flags.tol > 0.0)) throw UsageError("--tol must be positive");

    Criterion criterion{kind, std::nullopt};
    if (flags.q) criterion.q = EntropicOrder(*flags.q);
    ThresholdOptions options;
    options.x_tol = flags.tol;
    const auto result = threshold(family, flags.n, criterion, options);

    out << "family,n,criterion,q,x_threshold\n"
        << to_string(family) << ',' << flags.n << ',' << to_string(kind) << ',' << (flags.q ? sig10(*flags.q) : "")
        << ',' << sig10(result.x_star) << '\n';
    return kExitOk;
}

struct TableFlags {
    std::string id;
    std::string out;
};

int cmd_table(const TableFlags& flags)
{
    std::ostringstream csv;
    if (flags.id == "1" || flags.id == "2") {
        const FamilyKind family = flags.id == "1" ? FamilyKind::PseudopureW : FamilyKind::WernerLikeW;
        csv << "n,vn,ar,cstre,ppt\n";
        for (int n = 3; n <= 6; ++n) {
            csv << n;
            for (const auto& criterion : {Criterion::von_neumann(), Criterion::ar_infinity(),
                                          Criterion::cstre_infinity(), Criterion::ppt()}) {
                csv << ',' << fixed4(threshold(family, n, criterion).x_star);
            }
            csv << '\n';
        }
    } else if (flags.id == "pp-ghz" || flags.id == "wl-ghz") {
        const FamilyKind family = flags.id == "pp-ghz" ? FamilyKind::PseudopureGhz : FamilyKind::WernerLikeGhz;
        csv << "n,threshold\n";
        for (int n = 3; n <= 6; ++n) {
            csv << n << ',' << fixed4(threshold(family, n, Criterion::cstre_infinity()).x_star) << '\n';
        }
    } else {
        throw UsageError("unknown table id '" + flags.id + "' (expected 1, 2, pp-ghz or wl-ghz)");
    }
    auto file = open_output(flags.out);
    file << csv.str();
    finish_output(file, flags.out);
    return kExitOk;
}

struct CurveFlags {
    std::string family;
    int n = 0;
    std::string criteria;
    double q_min = 1.5;
    double q_max = 2000.0;
    int q_steps = 40;
    bool log_spacing = false;
    std::string out;
};

int cmd_curve(const CurveFlags& flags)
{
    const FamilyKind family = family_flag(flags.family, flags.n);
    std::vector<CriterionKind> kinds;
    std::stringstream list(flags.criteria);
    for (std::string item; std::getline(list, item, ',');) {
        const CriterionKind kind = criterion_flag(item);
        if (!needs_order(kind)) throw UsageError("curve criteria must be cstre or ar, got '" + item + "'");
        kinds.push_back(kind);
    }
    if (kinds.empty()) throw UsageError("--criterion needs at least one entry");

    std::vector<double> grid;
    try {
        grid = make_q_grid(flags.q_min, flags.q_max, flags.q_steps, flags.log_spacing);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }

    std::ostringstream csv;
    csv << "criterion,q,x_threshold\n";
    for (auto kind : kinds)
        for (const auto& point : curve(family, flags.n, kind, grid)) {
            csv << to_string(kind) << ',' << sig10(point.q) << ',' << (point.x_star ? sig10(*point.x_star) : "")
                << '\n';
        }
    auto file = open_output(flags.out);
    file << csv.str();
    finish_output(file, flags.out);
    return kExitOk;
}

struct EigsFlags {
    std::string family;
    int n = 0;
    double x = 0.0;
    double q = 2.0;
    std::string source = "numeric";
};

int cmd_eigs(const EigsFlags& flags, std::ostream& out, std::ostream& err)
{
    const FamilyKind family = family_flag(flags.family, flags.n);
    if (!(flags.x >= 0.0 && flags.x <= 1.0)) throw UsageError("--x must lie in [0, 1]");
    const EntropicOrder q(flags.q);

    std::vector<SpectrumEntry> rows;
    if (flags.source == "numeric") {
        if (flags.x == 1.0) {
            err << "warning: x=1 is a pure-state endpoint; powers of the rank-deficient reduced state are taken on "
                   "its support\n";
        }
        const auto rho = build(StateFamily{family, flags.n, flags.x});
        for (double value : eigvals_hermitian(sandwiched_matrix(rho, flags.n, q))) rows.push_back({value, 1});
    } else if (flags.source == "analytic") {
        if (flags.n < 3) throw UsageError("analytic spectra need n >= 3");
        if (flags.x >= 1.0) throw UsageError("analytic spectra need x < 1");
        SandwichSpectrum spectrum;
        switch (family) {
        case FamilyKind::PseudopureW: spectrum = pp_w_sandwich_eigs(flags.n, flags.x, q.value()); break;
        case FamilyKind::PseudopureGhz: spectrum = pp_ghz_sandwich_eigs(flags.n, flags.x, q.value()); break;
        case FamilyKind::WernerLikeW: spectrum = wl_w_sandwich_eigs(flags.n, flags.x, q.value()); break;
        case FamilyKind::WernerLikeGhz: spectrum = wl_ghz_sandwich_eigs(flags.n, flags.x, q.value()); break;
        }
        if (spectrum.defect) err << "warning: " << *spectrum.defect << '\n';
        rows = spectrum.entries;
        std::stable_sort(rows.begin(), rows.end(),
                         [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    } else {
        throw UsageError("--source must be numeric or analytic");
    }

    out << "eigenvalue,multiplicity\n";
    for (const auto& row : rows) out << format_number("%.12g", row.value) << ',' << row.multiplicity << '\n';
    return kExitOk;
}

struct VerifyFlags {
    int n_max = 6;
    bool inject_fault = false;
};

int cmd_verify(const VerifyFlags& flags, std::ostream& out)
{
    if (flags.n_max < 3 || flags.n_max > kDefaultMaxQubits) throw UsageError("--n-max must lie in [3, 8]");
    const auto report = verify(VerifyOptions{flags.n_max, flags.inject_fault});
    out << report.render();
    return report.passed() ? kExitOk : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Separability thresholds of noisy W and GHZ families from conditional Tsallis entropies", "cstre"};
    app.require_subcommand(1);

    ThresholdFlags threshold_flags;
    auto* threshold_cmd = app.add_subcommand("threshold", "Solve for the separability threshold x*");
    threshold_cmd->add_option("--family", threshold_flags.family, "pp-w, pp-ghz, wl-w or wl-ghz")->required();
    threshold_cmd->add_option("--n", threshold_flags.n, "Number of qubits")->required();
    threshold_cmd->add_option("--criterion", threshold_flags.criterion, "cstre, ar, vn, ppt, cstre-inf or ar-inf")
        ->required();
    threshold_cmd->add_option("--q", threshold_flags.q, "Entropic order (cstre and ar only)");
    threshold_cmd->add_option("--tol", threshold_flags.tol, "Bisection tolerance on x")->capture_default_str();

    TableFlags table_flags;
    auto* table_cmd = app.add_subcommand("table", "Write a threshold table as CSV");
    table_cmd->add_option("--id", table_flags.id, "1, 2, pp-ghz or wl-ghz")->required();
    table_cmd->add_option("--out", table_flags.out, "Output CSV path")->required();

    CurveFlags curve_flags;
    auto* curve_cmd = app.add_subcommand("curve", "Write x*(q) convergence curves as CSV");
    curve_cmd->add_option("--family", curve_flags.family)->required();
    curve_cmd->add_option("--n", curve_flags.n)->required();
    curve_cmd->add_option("--criterion", curve_flags.criteria, "Comma list drawn from cstre, ar")->required();
    curve_cmd->add_option("--q-min", curve_flags.q_min)->capture_default_str();
    curve_cmd->add_option("--q-max", curve_flags.q_max)->capture_default_str();
    curve_cmd->add_option("--q-steps", curve_flags.q_steps)->capture_default_str();
    curve_cmd->add_flag("--log-spacing", curve_flags.log_spacing, "Geometric q grid");
    curve_cmd->add_option("--out", curve_flags.out, "Output CSV path")->required();

    EigsFlags eigs_flags;
    auto* eigs_cmd = app.add_subcommand("eigs", "Print the sandwiched-matrix spectrum as CSV");
    eigs_cmd->add_option("--family", eigs_flags.family)->required();
    eigs_cmd->add_option("--n", eigs_flags.n)->required();
    eigs_cmd->add_option("--x", eigs_flags.x)->required();
    eigs_cmd->add_option("--q", eigs_flags.q)->required();
    eigs_cmd->add_option("--source", eigs_flags.source, "numeric or analytic")->capture_default_str();

    VerifyFlags verify_flags;
    auto* verify_cmd = app.add_subcommand("verify", "Cross-check closed forms, tables and limits");
    verify_cmd->add_option("--n-max", verify_flags.n_max)->capture_default_str();
    verify_cmd->add_flag("--inject-fault", verify_flags.inject_fault, "Offset thresholds to exercise failure paths")
        ->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (threshold_cmd->parsed()) return cmd_threshold(threshold_flags, out);
        if (table_cmd->parsed()) return cmd_table(table_flags);
        if (curve_cmd->parsed()) return cmd_curve(curve_flags);
        if (eigs_cmd->parsed()) return cmd_eigs(eigs_flags, out, err);
        if (verify_cmd->parsed()) return cmd_verify(verify_flags, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        const bool solver = e.code() == ErrorCode::NoSignChange || e.code() == ErrorCode::MultipleRoots;
        return solver ? kExitNoSignChange : kExitUsage;
    }
    return kExitUsage;
}

} // namespace cstre::cli
