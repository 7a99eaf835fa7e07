#pragma once

#include "cstre/entropy.hpp"
#include "cstre/states.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cstre {

enum class CriterionKind { Cstre, Ar, VonNeumann, Ppt, CstreInfinity, ArInfinity };

std::string_view to_string(CriterionKind kind);  // cstre, ar, vn, ppt, cstre-inf, ar-inf
std::optional<CriterionKind> parse_criterion(std::string_view text);
bool needs_order(CriterionKind kind);

struct Criterion {
    CriterionKind kind;
    std::optional<EntropicOrder> q;

    static Criterion cstre(double q) { return {CriterionKind::Cstre, EntropicOrder(q)}; }
    static Criterion ar(double q) { return {CriterionKind::Ar, EntropicOrder(q)}; }
    static Criterion von_neumann() { return {CriterionKind::VonNeumann, std::nullopt}; }
    static Criterion ppt() { return {CriterionKind::Ppt, std::nullopt}; }
    static Criterion cstre_infinity() { return {CriterionKind::CstreInfinity, std::nullopt}; }
    static Criterion ar_infinity() { return {CriterionKind::ArInfinity, std::nullopt}; }
};

// Positive on the side a criterion calls separable, negative where it
// witnesses entanglement. Finite-q criteria use log-domain forms (-ln Q for
// CSTRE, ln Tr s^q - ln Tr rho^q for AR) so large q cannot overflow.
double margin(const ComplexMatrix& rho, int n, const Criterion& criterion);
double margin(const StateFamily& family, const Criterion& criterion, int max_qubits = kDefaultMaxQubits);

struct ThresholdOptions {
    double x_tol = 1e-10;
    int scan_points = 1001;
    double x_max = 1.0 - 1e-9;
    int max_qubits = kDefaultMaxQubits;
};

struct RootSearch {
    double x_star;
    double bracket_lo;  // scan cell holding the sign change
    double bracket_hi;
    int iterations;
    double residual;  // margin at x_star
};

// Uniform scan of [0, x_max] followed by bisection of the single cell where
// the margin changes sign. NoSignChange / MultipleRoots otherwise.
RootSearch find_threshold(const std::function<double(double)>& margin_at, const ThresholdOptions& options = {});

struct ThresholdResult {
    FamilyKind family;
    int n_qubits;
    Criterion criterion;
    double x_star;
    double bracket_lo;
    double bracket_hi;
    int iterations;
    double residual;
};

ThresholdResult threshold(FamilyKind family, int n, const Criterion& criterion, const ThresholdOptions& options = {});

struct CurvePoint {
    double q;
    std::optional<double> x_star;  // empty when the margin never changes sign
};

// x*(q) for each q in grid order. kind must be Cstre or Ar.
std::vector<CurvePoint> curve(FamilyKind family, int n, CriterionKind kind, std::span<const double> q_grid,
                              const ThresholdOptions& options = {});

std::vector<double> default_q_grid();
// steps points from q_min to q_max inclusive; geometric when log_spacing.
std::vector<double> make_q_grid(double q_min, double q_max, int steps, bool log_spacing);

// Half-up rounding to a fixed number of decimals.
double round_half_up(double value, int decimals);

enum class CheckStatus { Pass, Warn, Fail };
std::string_view to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    CheckStatus status;
    bool mandatory;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;  // sorted by name

    // True iff no mandatory check failed.
    bool passed() const;
    std::string render() const;
};

struct VerifyOptions {
    int n_max = 6;
    // Offsets every reproduced table threshold; lets tests confirm that a
    // broken solver turns the report red.
    bool inject_fault = false;
};

VerificationReport verify(const VerifyOptions& options = {});

} // namespace cstre
