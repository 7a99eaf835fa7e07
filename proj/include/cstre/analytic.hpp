#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cstre {

struct SpectrumEntry {
    double value;
    long multiplicity;
};

// Closed-form eigenvalues of the sandwiched matrix, with multiplicities
// summing to 2^N.
struct SandwichSpectrum {
    std::vector<SpectrumEntry> entries;
    // Set when the closed form has no real value at this point (negative
    // radicand in a 2x2 block); the affected pair is then reported at the
    // block's midpoint.
    std::optional<std::string> defect;

    long total_multiplicity() const;
    // All eigenvalues with multiplicity expanded, ascending.
    std::vector<double> expanded() const;
};

// Preconditions for all four: n >= 3, 0 <= x < 1, q > 1. BadParameter otherwise.
SandwichSpectrum pp_w_sandwich_eigs(int n, double x, double q);
SandwichSpectrum pp_ghz_sandwich_eigs(int n, double x, double q);
SandwichSpectrum wl_w_sandwich_eigs(int n, double x, double q);
SandwichSpectrum wl_ghz_sandwich_eigs(int n, double x, double q);

// q -> infinity separability bounds in the 1:(N-1) cut, n >= 3.
double bound_pp_w(int n);    // (N + sqrt(N-1)) / (N + 2^N sqrt(N-1))
double bound_pp_ghz(int n);  // 3 / (2^N + 2)
double bound_wl_w(int n);    // N / (N + 2^N sqrt(N-1))
double bound_wl_ghz(int n);  // 1 / (2^(N-1) + 1)

// Vidal-Tarrach separability bounds from the two largest Schmidt
// coefficients u1 >= u2 (BadSchmidt otherwise) and the total dimension d^2.
double vidal_tarrach_pp(double u1, double u2, long d_sq);
double vidal_tarrach_wl(double u1, double u2, long d_sq);

enum class PureKind { W, Ghz };

// Two largest Schmidt coefficients of |W_n> or |GHZ_n> across qubit 1.
std::pair<double, double> schmidt_coeffs(PureKind kind, int n);

} // namespace cstre
