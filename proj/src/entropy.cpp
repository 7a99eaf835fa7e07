#include "cstre/entropy.hpp"

#include "cstre/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cstre {

namespace {

// Eigenvalues below this are zero in every entropy sum.
constexpr double kZeroEigenvalue = 1e-15;
constexpr double kSupportLeakTol = 1e-10;

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
    return t.real();
}

ComplexMatrix conditioning_power(const ComplexMatrix& rho, int n, double exponent)
{
    const ComplexMatrix reduced = partial_trace_first(rho, n);
    return kron(ComplexMatrix::identity(2), power_on_support(reduced, exponent));
}

// side * rho * side is Hermitian in exact arithmetic; near-singular
// reduced states amplify rounding, so only its Hermitian part is kept.
ComplexMatrix sandwich(const ComplexMatrix& side, const ComplexMatrix& rho)
{
    return (side * rho * side).hermitian_part();
}

void check_support(const ComplexMatrix& rho, const ComplexMatrix& sigma)
{
    if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimensionMismatch, "rho and sigma differ in dimension");
    const ComplexMatrix projector = power_on_support(sigma, 0.0);
    const double leak = rho.trace().real() - trace_product(projector, rho);
    if (leak > kSupportLeakTol) {
        throw Error(ErrorCode::SupportViolation, "rho has weight " + std::to_string(leak) + " outside supp(sigma)");
    }
}

} // namespace

EntropicOrder::EntropicOrder(double q) : q_(q)
{
    if (!(q > 1.0 && q <= kMaxOrder)) {
        throw Error(ErrorCode::BadParameter, "entropic order must satisfy 1 < q <= 1e6, got " + std::to_string(q));
    }
}

double power_sum(std::span<const double> eigenvalues, double q)
{
    double s = 0.0;
    for (double l : eigenvalues)
        if (l > kZeroEigenvalue) s += std::pow(l, q);
    return s;
}

double log_power_sum(std::span<const double> eigenvalues, double q)
{
    double top = 0.0;
    for (double l : eigenvalues) top = std::max(top, l);
    if (top <= kZeroEigenvalue) return -INFINITY;
    double s = 0.0;
    for (double l : eigenvalues)
        if (l > kZeroEigenvalue) s += std::pow(l / top, q);
    return q * std::log(top) + std::log(s);
}

double shannon_entropy(std::span<const double> eigenvalues)
{
    double h = 0.0;
    for (double l : eigenvalues)
        if (l > kZeroEigenvalue) h -= l * std::log(l);
    return h;
}

ComplexMatrix sandwiched_matrix(const ComplexMatrix& rho, int n, EntropicOrder q)
{
    const ComplexMatrix side = conditioning_power(rho, n, q.sandwich_exponent());
    return sandwich(side, rho);
}

double log_sandwiched_trace(const ComplexMatrix& rho, int n, EntropicOrder q)
{
    return log_power_sum(eigvals_hermitian(sandwiched_matrix(rho, n, q)), q.value());
}

double cstre(const ComplexMatrix& rho, int n, EntropicOrder q)
{
    const double big_q = std::exp(log_sandwiched_trace(rho, n, q));
    return (big_q - 1.0) / (1.0 - q.value());
}

double ar_log_margin(const ComplexMatrix& rho, int n, EntropicOrder q)
{
    const double log_rho = log_power_sum(eigvals_hermitian(rho), q.value());
    const double log_reduced = log_power_sum(eigvals_hermitian(partial_trace_first(rho, n)), q.value());
    return log_reduced - log_rho;
}

double ar_conditional(const ComplexMatrix& rho, int n, EntropicOrder q)
{
    return (1.0 - std::exp(-ar_log_margin(rho, n, q))) / (q.value() - 1.0);
}

double von_neumann_conditional(const ComplexMatrix& rho, int n)
{
    return shannon_entropy(eigvals_hermitian(rho)) - shannon_entropy(eigvals_hermitian(partial_trace_first(rho, n)));
}

double traditional_tsallis_relative(const ComplexMatrix& rho, const ComplexMatrix& sigma, EntropicOrder q)
{
    check_support(rho, sigma);
    const ComplexMatrix rho_q = power_on_support(rho, q.value());
    const ComplexMatrix sigma_pow = power_on_support(sigma, 1.0 - q.value());
    return (trace_product(rho_q, sigma_pow) - 1.0) / (q.value() - 1.0);
}

double sandwiched_tsallis_relative(const ComplexMatrix& rho, const ComplexMatrix& sigma, EntropicOrder q)
{
    check_support(rho, sigma);
    const ComplexMatrix side = power_on_support(sigma, q.sandwich_exponent());
    const auto eigs = eigvals_hermitian(sandwich(side, rho));
    return (power_sum(eigs, q.value()) - 1.0) / (q.value() - 1.0);
}

double cstre_infinity_margin(const ComplexMatrix& rho, int n)
{
    const ComplexMatrix side = conditioning_power(rho, n, -0.5);
    return 1.0 - eigvals_hermitian(sandwich(side, rho)).back();
}

double ar_infinity_margin(const ComplexMatrix& rho, int n)
{
    return eigvals_hermitian(partial_trace_first(rho, n)).back() - eigvals_hermitian(rho).back();
}

double ppt_margin(const ComplexMatrix& rho, int n)
{
    return eigvals_hermitian(partial_transpose_first(rho, n)).front();
}

} // namespace cstre
