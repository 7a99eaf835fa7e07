#include "cstre/criteria.hpp"

#include "cstre/analytic.hpp"
#include "cstre/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace cstre {

std::string_view to_string(CriterionKind kind)
{
    switch (kind) {
    case CriterionKind::Cstre: return "cstre";
    case CriterionKind::Ar: return "ar";
    case CriterionKind::VonNeumann: return "vn";
    case CriterionKind::Ppt: return "ppt";
    case CriterionKind::CstreInfinity: return "cstre-inf";
    case CriterionKind::ArInfinity: return "ar-inf";
    }
    return "?";
}

std::optional<CriterionKind> parse_criterion(std::string_view text)
{
    for (auto kind : {CriterionKind::Cstre, CriterionKind::Ar, CriterionKind::VonNeumann, CriterionKind::Ppt,
                      CriterionKind::CstreInfinity, CriterionKind::ArInfinity}) {
        if (text == to_string(kind)) return kind;
    }
    return std::nullopt;
}

bool needs_order(CriterionKind kind)
{
    return kind == CriterionKind::Cstre || kind == CriterionKind::Ar;
}

namespace {

EntropicOrder require_order(const Criterion& criterion)
{
    if (!criterion.q) {
        throw Error(ErrorCode::BadParameter, std::string(to_string(criterion.kind)) + " requires an entropic order q");
    }
    return *criterion.q;
}

} // namespace

double margin(const ComplexMatrix& rho, int n, const Criterion& criterion)
{
    switch (criterion.kind) {
    case CriterionKind::Cstre: return -log_sandwiched_trace(rho, n, require_order(criterion));
    case CriterionKind::Ar: return ar_log_margin(rho, n, require_order(criterion));
    case CriterionKind::VonNeumann: return von_neumann_conditional(rho, n);
    case CriterionKind::Ppt: return ppt_margin(rho, n);
    case CriterionKind::CstreInfinity: return cstre_infinity_margin(rho, n);
    case CriterionKind::ArInfinity: return ar_infinity_margin(rho, n);
    }
    throw Error(ErrorCode::BadParameter, "unknown criterion");
}

double margin(const StateFamily& family, const Criterion& criterion, int max_qubits)
{
    return margin(build(family, max_qubits), family.n_qubits, criterion);
}

RootSearch find_threshold(const std::function<double(double)>& margin_at, const ThresholdOptions& options)
{
    if (options.scan_points < 2 || !(options.x_tol > 0.0) || !(options.x_max > 0.0 && options.x_max <= 1.0)) {
        throw Error(ErrorCode::BadParameter, "invalid threshold options");
    }
    const int cells = options.scan_points - 1;
    auto grid_x = [&](int i) { return options.x_max * static_cast<double>(i) / cells; };

    std::vector<bool> positive(static_cast<std::size_t>(options.scan_points));
    for (int i = 0; i < options.scan_points; ++i) positive[i] = margin_at(grid_x(i)) > 0.0;

    int changes = 0;
    int cell = -1;
    for (int i = 0; i < cells; ++i) {
        if (positive[i] != positive[i + 1]) {
            ++changes;
            cell = i;
        }
    }
    if (changes == 0) {
        throw Error(ErrorCode::NoSignChange,
                    std::string("margin is ") + (positive[0] ? "positive" : "non-positive") + " on the whole scan");
    }
    if (changes > 1) throw Error(ErrorCode::MultipleRoots, std::to_string(changes) + " sign changes found in scan");

    RootSearch out{};
    out.bracket_lo = grid_x(cell);
    out.bracket_hi = grid_x(cell + 1);
    double lo = out.bracket_lo;
    double hi = out.bracket_hi;
    const bool lo_positive = positive[cell];
    while (hi - lo > options.x_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ++out.iterations;
        const double m = margin_at(mid);
        if ((m > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.x_star = 0.5 * (lo + hi);
    out.residual = margin_at(out.x_star);
    return out;
}

ThresholdResult threshold(FamilyKind family, int n, const Criterion& criterion, const ThresholdOptions& options)
{
    if (needs_order(criterion.kind)) require_order(criterion);
    validate(StateFamily{family, n, 0.0}, options.max_qubits);
    const auto search = find_threshold(
        [&](double x) { return margin(StateFamily{family, n, x}, criterion, options.max_qubits); }, options);
    return ThresholdResult{family,           n, criterion, search.x_star, search.bracket_lo, search.bracket_hi,
                           search.iterations, search.residual};
}

std::vector<CurvePoint> curve(FamilyKind family, int n, CriterionKind kind, std::span<const double> q_grid,
                              const ThresholdOptions& options)
{
    if (!needs_order(kind)) throw Error(ErrorCode::BadParameter, "curves are defined for cstre and ar only");
    if (q_grid.empty()) throw Error(ErrorCode::BadParameter, "empty q grid");

    std::vector<CurvePoint> points;
    points.reserve(q_grid.size());
    for (double q : q_grid) {
        const Criterion criterion{kind, EntropicOrder(q)};
        try {
            points.push_back({q, threshold(family, n, criterion, options).x_star});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoSignChange) throw;
            points.push_back({q, std::nullopt});
        }
    }
    return points;
}

std::vector<double> default_q_grid()
{
    return {1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0, 500.0, 2000.0};
}

std::vector<double> make_q_grid(double q_min, double q_max, int steps, bool log_spacing)
{
    if (steps < 1) throw Error(ErrorCode::BadParameter, "q grid needs at least one step");
    if (!(q_min > 1.0) || !(q_max >= q_min) || q_max > kMaxOrder) {
        throw Error(ErrorCode::BadParameter, "q grid needs 1 < q_min <= q_max <= 1e6");
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid[0] = q_min;
        return grid;
    }
    for (int i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / (steps - 1);
        grid[i] = log_spacing ? q_min * std::pow(q_max / q_min, t) : q_min + (q_max - q_min) * t;
    }
    grid.back() = q_max;
    return grid;
}

double round_half_up(double value, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    return std::floor(value * scale + 0.5) / scale;
}

std::string_view to_string(CheckStatus status)
{
    switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Warn: return "WARN";
    case CheckStatus::Fail: return "FAIL";
    }
    return "?";
}

bool VerificationReport::passed() const
{
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.mandatory && c.status == CheckStatus::Fail; });
}

std::string VerificationReport::render() const
{
    std::ostringstream out;
    int warnings = 0;
    int failures = 0;
    for (const auto& c : checks) {
        out << to_string(c.status) << "  " << c.name;
        if (!c.detail.empty()) out << "  " << c.detail;
        out << '\n';
        if (c.status == CheckStatus::Warn) ++warnings;
        if (c.status == CheckStatus::Fail) ++failures;
    }
    out << "SUMMARY: " << (passed() ? "PASS" : "FAIL") << " (" << checks.size() << " checks, " << failures
        << " failed, " << warnings << " warnings)\n";
    return out.str();
}

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

constexpr double kTableTol = 5e-4;
constexpr double kClosedFormTol = 1e-8;
constexpr double kPptAgreementTol = 1e-6;
constexpr double kLargeQTol = 2e-3;
constexpr double kOracleTol = 1e-9;

// Reference thresholds for N = 3..6: von Neumann, AR (q -> inf), CSTRE (q -> inf), PPT.
constexpr std::array<std::array<double, 4>, 4> kTablePpW{{
    {0.7390, 0.3636, 0.3083, 0.3083},
    {0.6963, 0.25, 0.1807, 0.1807},
    {0.6723, 0.1621, 0.1014, 0.1014},
    {0.6621, 0.1, 0.0552, 0.0552},
}};
constexpr std::array<std::array<double, 4>, 4> kTableWlW{{
    {0.7018, 0.2727, 0.2095, 0.2095},
    {0.6760, 0.2, 0.1261, 0.1261},
    {0.6618, 0.1351, 0.0724, 0.0724},
    {0.6567, 0.0857, 0.0402, 0.0402},
}};
constexpr std::array<double, 4> kPpGhz{0.3, 0.1666, 0.0882, 0.0454};

constexpr std::array<FamilyKind, 4> kFamilies{FamilyKind::PseudopureW, FamilyKind::PseudopureGhz,
                                              FamilyKind::WernerLikeW, FamilyKind::WernerLikeGhz};

double closed_form_bound(FamilyKind family, int n)
{
    switch (family) {
    case FamilyKind::PseudopureW: return bound_pp_w(n);
    case FamilyKind::PseudopureGhz: return bound_pp_ghz(n);
    case FamilyKind::WernerLikeW: return bound_wl_w(n);
    case FamilyKind::WernerLikeGhz: return bound_wl_ghz(n);
    }
    return NAN;
}

SandwichSpectrum closed_form_spectrum(FamilyKind family, int n, double x, double q)
{
    switch (family) {
    case FamilyKind::PseudopureW: return pp_w_sandwich_eigs(n, x, q);
    case FamilyKind::PseudopureGhz: return pp_ghz_sandwich_eigs(n, x, q);
    case FamilyKind::WernerLikeW: return wl_w_sandwich_eigs(n, x, q);
    case FamilyKind::WernerLikeGhz: return wl_ghz_sandwich_eigs(n, x, q);
    }
    throw Error(ErrorCode::BadParameter, "unknown family");
}

class ThresholdCache {
public:
    explicit ThresholdCache(double offset) : offset_(offset) {}

    // Returns NaN when the solver fails; callers report that as a failure.
    double get(FamilyKind family, int n, const Criterion& criterion)
    {
        const auto key = std::make_tuple(static_cast<int>(family), n, static_cast<int>(criterion.kind),
                                         criterion.q ? criterion.q->value() : 0.0);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        double value = NAN;
        try {
            value = threshold(family, n, criterion).x_star + offset_;
        } catch (const Error&) {
        }
        cache_.emplace(key, value);
        return value;
    }

private:
    double offset_;
    std::map<std::tuple<int, int, int, double>, double> cache_;
};

CheckResult compare(std::string name, bool mandatory, double got, double want, double tol)
{
    const double dev = std::abs(got - want);
    const bool ok = dev <= tol;  // NaN fails
    return {std::move(name), ok ? CheckStatus::Pass : (mandatory ? CheckStatus::Fail : CheckStatus::Warn), mandatory,
            fmt("got %.10g want %.10g |dev| %.3g", got, want, dev)};
}

void oracle_checks(int n_max, std::vector<CheckResult>& out)
{
    for (auto family : kFamilies) {
        double worst = 0.0;
        std::string defect;
        for (int n = 3; n <= std::min(n_max, 5); ++n)
            for (double x : {0.05, 0.2, 0.5, 0.8})
                for (double q : {1.5, 2.0, 5.0, 20.0}) {
                    const auto numeric = eigvals_hermitian(
                        sandwiched_matrix(build(StateFamily{family, n, x}), n, EntropicOrder(q)));
                    const auto spectrum = closed_form_spectrum(family, n, x, q);
                    const auto closed = spectrum.expanded();
                    if (spectrum.defect && defect.empty()) defect = *spectrum.defect;
                    for (std::size_t k = 0; k < numeric.size(); ++k)
                        worst = std::max(worst, std::abs(numeric[k] - closed[k]));
                }
        CheckResult check{"oracle/spectrum/" + std::string(to_string(family)),
                          worst <= kOracleTol ? CheckStatus::Pass : CheckStatus::Warn, false,
                          fmt("max |numeric - closed form| %.3g", worst)};
        if (!defect.empty()) check.detail += "; " + defect;
        out.push_back(std::move(check));
    }
}

void bound_identity_checks(std::vector<CheckResult>& out)
{
    double worst = 0.0;
    for (int n = 3; n <= 12; ++n) {
        const long d_sq = 1L << n;
        const auto [w1, w2] = schmidt_coeffs(PureKind::W, n);
        const auto [g1, g2] = schmidt_coeffs(PureKind::Ghz, n);
        worst = std::max({worst, std::abs(bound_pp_w(n) - vidal_tarrach_pp(w1, w2, d_sq)),
                          std::abs(bound_wl_w(n) - vidal_tarrach_wl(w1, w2, d_sq)),
                          std::abs(bound_pp_ghz(n) - vidal_tarrach_pp(g1, g2, d_sq)),
                          std::abs(bound_wl_ghz(n) - vidal_tarrach_wl(g1, g2, d_sq))});
    }
    out.push_back({"bounds/vidal-tarrach-identity", worst <= 1e-12 ? CheckStatus::Pass : CheckStatus::Fail, true,
                   fmt("N=3..12 max deviation %.3g", worst)});
}

void table_checks(int n_max, ThresholdCache& cache, std::vector<CheckResult>& out)
{
    const std::array<Criterion, 4> columns{Criterion::von_neumann(), Criterion::ar_infinity(),
                                           Criterion::cstre_infinity(), Criterion::ppt()};
    const std::array<std::pair<FamilyKind, const std::array<std::array<double, 4>, 4>*>, 2> tables{
        {{FamilyKind::PseudopureW, &kTablePpW}, {FamilyKind::WernerLikeW, &kTableWlW}}};
    for (const auto& [family, table] : tables) {
        const std::string prefix = family == FamilyKind::PseudopureW ? "table1" : "table2";
        for (int n = 3; n <= std::min(n_max, 6); ++n)
            for (std::size_t c = 0; c < columns.size(); ++c) {
                out.push_back(compare(prefix + "/N=" + std::to_string(n) + "/" +
                                          std::string(to_string(columns[c].kind)),
                                      true, cache.get(family, n, columns[c]), (*table)[n - 3][c], kTableTol));
            }
    }
    for (int n = 3; n <= std::min(n_max, 6); ++n)
        for (const auto& criterion : {Criterion::cstre_infinity(), Criterion::ar_infinity(), Criterion::ppt()}) {
            out.push_back(compare("pp-ghz-reference/N=" + std::to_string(n) + "/" + std::string(to_string(criterion.kind)),
                                  true, cache.get(FamilyKind::PseudopureGhz, n, criterion), kPpGhz[n - 3], kTableTol));
        }
    if (n_max >= 6) {
        out.push_back(compare("wl-ghz-limit/N=6/cstre-inf", true,
                              cache.get(FamilyKind::WernerLikeGhz, 6, Criterion::cstre_infinity()), 0.0303, kTableTol));
    }
}

void limit_checks(int n_max, ThresholdCache& cache, std::vector<CheckResult>& out)
{
    for (auto family : kFamilies)
        for (int n = 3; n <= n_max; ++n) {
            const std::string tag = std::string(to_string(family)) + "/N=" + std::to_string(n);
            const double inf_root = cache.get(family, n, Criterion::cstre_infinity());
            out.push_back(compare("closed-form-bound/" + tag, true, inf_root, closed_form_bound(family, n),
                                  kClosedFormTol));
            out.push_back(compare("ppt-vs-cstre-inf/" + tag, true, cache.get(family, n, Criterion::ppt()), inf_root,
                                  kPptAgreementTol));
            out.push_back(compare("large-q-vs-limit/" + tag, false, cache.get(family, n, Criterion::cstre(2000.0)),
                                  inf_root, kLargeQTol));
        }
}

} // namespace

VerificationReport verify(const VerifyOptions& options)
{
    if (options.n_max < 3 || options.n_max > kDefaultMaxQubits) {
        throw Error(ErrorCode::BadParameter, "verify needs 3 <= n_max <= 8");
    }
    VerificationReport report;
    ThresholdCache cache(options.inject_fault ? 1e-2 : 0.0);
    oracle_checks(options.n_max, report.checks);
    bound_identity_checks(report.checks);
    table_checks(options.n_max, cache, report.checks);
    limit_checks(options.n_max, cache, report.checks);
    std::stable_sort(report.checks.begin(), report.checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return report;
}

} // namespace cstre
