#include "cstre/analytic.hpp"

#include "cstre/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cstre {

long SandwichSpectrum::total_multiplicity() const
{
    long total = 0;
    for (const auto& e : entries) total += e.multiplicity;
    return total;
}

std::vector<double> SandwichSpectrum::expanded() const
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(total_multiplicity()));
    for (const auto& e : entries) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.value);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_spectrum_args(int n, double x, double q)
{
    if (n < 3 || n > 30) throw Error(ErrorCode::BadParameter, "closed-form spectra need 3 <= N, got " + std::to_string(n));
    if (!(x >= 0.0 && x < 1.0)) throw Error(ErrorCode::BadParameter, "closed-form spectra need 0 <= x < 1");
    if (!(q > 1.0)) throw Error(ErrorCode::BadParameter, "closed-form spectra need q > 1");
}

double pow2(int k)
{
    return std::ldexp(1.0, k);
}

// Roots (s +/- sqrt(r)) * scale of a 2x2 block. Radicands within -1e-12 of
// zero (relative to s^2) are clamped; anything more negative is recorded as
// a defect and both roots collapse onto s * scale.
void push_pair(SandwichSpectrum& out, double scale, double s, double radicand, const char* label)
{
    const double tol = 1e-12 * std::max(1.0, s * s);
    if (radicand < 0.0) {
        if (radicand < -tol) {
            out.defect = std::string(label) + ": radicand " + std::to_string(radicand) + " is negative";
        }
        radicand = 0.0;
    }
    const double root = std::sqrt(radicand);
    out.entries.push_back({scale * (s + root), 1});
    out.entries.push_back({scale * (s - root), 1});
}

} // namespace

SandwichSpectrum pp_w_sandwich_eigs(int n, double x, double q)
{
    check_spectrum_args(n, x, q);
    const double e = (1.0 - q) / q;
    const double big_n = n;
    const double dim = pow2(n);
    const double tail = dim - 4.0;  // sum_{j=3}^{N} 2^{j-1}
    const double noise = (1.0 - x) / (dim - 1.0);

    const double alpha_base = 2.0 * big_n - 1.0 + (tail - 2.0 * (big_n - 2.0)) * x;
    const double beta_base = big_n + 1.0 + (tail + (big_n - 2.0) * (dim - 2.0)) * x;
    const double norm = big_n * (dim - 1.0);

    SandwichSpectrum out;
    out.entries.push_back({std::pow(2.0, e) * std::pow(noise, 1.0 / q), static_cast<long>(dim) - 4});
    out.entries.push_back({noise * std::pow(alpha_base / norm, e), 1});
    out.entries.push_back({noise * std::pow(beta_base / norm, e), 1});

    const double alpha = std::pow(alpha_base, e);
    const double beta = std::pow(beta_base, e);
    const double a = (big_n - 1.0) + (tail - big_n + 4.0) * x;
    const double b = 1.0 + (tail + (big_n - 2.0) * (dim - 2.0) + big_n) * x;
    const double s = alpha * a + beta * b;
    const double radicand = s * s + 8.0 * big_n * big_n * (dim - 1.0) * x * (x - 1.0) * alpha * beta;
    push_pair(out, 0.5 * std::pow(norm, -1.0 / q), s, radicand, "pp-w lambda_4/5");
    return out;
}

SandwichSpectrum pp_ghz_sandwich_eigs(int n, double x, double q)
{
    check_spectrum_args(n, x, q);
    const double e = (1.0 - q) / q;
    const double dim = pow2(n);
    const double tail = dim - 4.0;          // sum_{j=3}^{N} 2^{j-1}
    const double full = 2.0 * (dim - 1.0);  // sum_{j=1}^{N} 2^j
    const double noise = (1.0 - x) / (dim - 1.0);
    const double shared = std::pow((3.0 + tail * x) / full, e);

    SandwichSpectrum out;
    out.entries.push_back({noise * std::pow(2.0 * noise, e), static_cast<long>(dim) - 4});
    out.entries.push_back({noise * shared, 3});
    out.entries.push_back({x * shared, 1});
    return out;
}

SandwichSpectrum wl_w_sandwich_eigs(int n, double x, double q)
{
    check_spectrum_args(n, x, q);
    const double e = (1.0 - q) / q;
    const double big_n = n;
    const double dim = pow2(n);
    const double half = pow2(n - 1);
    const double tail = half - 2.0;  // sum_{j=3}^{N} 2^{j-2}
    const double noise = (1.0 - x) / dim;

    const double alpha_base = big_n + (tail - (big_n - 2.0)) * x;
    const double beta_base = big_n + (tail + (big_n - 2.0) * (half - 1.0)) * x;
    const double norm = big_n * half;

    SandwichSpectrum out;
    out.entries.push_back({noise * std::pow((1.0 - x) / half, e), static_cast<long>(dim) - 4});
    out.entries.push_back({noise * std::pow(alpha_base / norm, e), 1});
    out.entries.push_back({noise * std::pow(beta_base / norm, e), 1});

    const double alpha = std::pow(alpha_base, e);
    const double beta = std::pow(beta_base, e);
    const double a = big_n + (tail - (big_n - 2.0) + half) * x;
    const double b = big_n + (tail + half * (2.0 * big_n - 3.0) - (big_n - 2.0)) * x;
    const double s = alpha * a + beta * b;
    const double d = alpha * a - beta * b;
    const double radicand = d * d + pow2(2 * n + 2) * (big_n - 1.0) * x * x * alpha * beta;
    push_pair(out, 0.25 * std::pow(norm, -1.0 / q), s, radicand, "wl-w lambda_4/5");
    return out;
}

SandwichSpectrum wl_ghz_sandwich_eigs(int n, double x, double q)
{
    check_spectrum_args(n, x, q);
    const double e = (1.0 - q) / q;
    const double dim = pow2(n);
    const double half = pow2(n - 1);
    const double noise = (1.0 - x) / dim;
    const double shared = std::pow((1.0 + (pow2(n - 2) - 1.0) * x) / half, e);

    SandwichSpectrum out;
    out.entries.push_back({noise * std::pow((1.0 - x) / half, e), static_cast<long>(dim) - 4});
    out.entries.push_back({noise * shared, 3});
    out.entries.push_back({(1.0 + (dim - 1.0) * x) / dim * shared, 1});
    return out;
}

namespace {

void check_bound_n(int n)
{
    if (n < 3 || n > 60) throw Error(ErrorCode::BadParameter, "bounds need N >= 3, got " + std::to_string(n));
}

} // namespace

double bound_pp_w(int n)
{
    check_bound_n(n);
    const double r = std::sqrt(n - 1.0);
    return (n + r) / (n + pow2(n) * r);
}

double bound_pp_ghz(int n)
{
    check_bound_n(n);
    return 3.0 / (pow2(n) + 2.0);
}

double bound_wl_w(int n)
{
    check_bound_n(n);
    return n / (n + pow2(n) * std::sqrt(n - 1.0));
}

double bound_wl_ghz(int n)
{
    check_bound_n(n);
    return 1.0 / (pow2(n - 1) + 1.0);
}

namespace {

double schmidt_product(double u1, double u2, long d_sq)
{
    constexpr double slack = 1e-12;
    if (!(u1 <= 1.0 + slack && u1 + slack >= u2 && u2 >= 0.0)) {
        throw Error(ErrorCode::BadSchmidt, "need 1 >= u1 >= u2 >= 0, got u1=" + std::to_string(u1) +
                                               " u2=" + std::to_string(u2));
    }
    if (d_sq < 1) throw Error(ErrorCode::BadParameter, "d^2 must be positive");
    return u1 * u2;
}

} // namespace

double vidal_tarrach_pp(double u1, double u2, long d_sq)
{
    const double p = schmidt_product(u1, u2, d_sq);
    return (1.0 + p) / (1.0 + static_cast<double>(d_sq) * p);
}

double vidal_tarrach_wl(double u1, double u2, long d_sq)
{
    const double p = schmidt_product(u1, u2, d_sq);
    return 1.0 / (static_cast<double>(d_sq) * p + 1.0);
}

std::pair<double, double> schmidt_coeffs(PureKind kind, int n)
{
    if (n < 2) throw Error(ErrorCode::BadQubitCount, "Schmidt coefficients need n >= 2");
    if (kind == PureKind::Ghz) return {M_SQRT1_2, M_SQRT1_2};
    return {std::sqrt((n - 1.0) / n), 1.0 / std::sqrt(static_cast<double>(n))};
}

} // namespace cstre
