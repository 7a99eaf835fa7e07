#pragma once

#include "cstre/linalg.hpp"

namespace cstre {

// Entropic order q of the finite-q criteria; 1 < q <= 1e6.
class EntropicOrder {
public:
    explicit EntropicOrder(double q);
    double value() const noexcept { return q_; }
    // (1 - q) / (2q), the exponent applied to the conditioning operator.
    double sandwich_exponent() const noexcept { return (1.0 - q_) / (2.0 * q_); }

private:
    double q_;
};

inline constexpr double kMaxOrder = 1e6;

// (I_2 (x) s)^e rho (I_2 (x) s)^e with s = Tr_1 rho and e = (1-q)/(2q),
// powers taken on the support of s.
ComplexMatrix sandwiched_matrix(const ComplexMatrix& rho, int n, EntropicOrder q);

// Conditional sandwiched Tsallis relative entropy (Q - 1)/(1 - q), with Q
// the sum of the q-th powers of the sandwiched-matrix eigenvalues. Negative
// values witness entanglement across the qubit-1 cut. Overflows to -inf
// when Q exceeds the double range (large q, strongly entangled states);
// margins use log_sandwiched_trace instead.
double cstre(const ComplexMatrix& rho, int n, EntropicOrder q);

// ln Q for the sandwiched matrix, computed without overflow.
double log_sandwiched_trace(const ComplexMatrix& rho, int n, EntropicOrder q);

// Abe-Rajagopal conditional Tsallis entropy (1 - Tr rho^q / Tr s^q)/(q - 1).
double ar_conditional(const ComplexMatrix& rho, int n, EntropicOrder q);

// ln Tr s^q - ln Tr rho^q: same sign as ar_conditional, never overflows.
double ar_log_margin(const ComplexMatrix& rho, int n, EntropicOrder q);

// S(rho) - S(Tr_1 rho), natural log.
double von_neumann_conditional(const ComplexMatrix& rho, int n);

// (Tr[rho^q sigma^{1-q}] - 1)/(q - 1). Throws SupportViolation when rho has
// weight outside the support of sigma.
double traditional_tsallis_relative(const ComplexMatrix& rho, const ComplexMatrix& sigma, EntropicOrder q);

// (Tr[(sigma^e rho sigma^e)^q] - 1)/(q - 1), e = (1-q)/(2q).
double sandwiched_tsallis_relative(const ComplexMatrix& rho, const ComplexMatrix& sigma, EntropicOrder q);

// 1 - lambda_max(S^{-1/2} rho S^{-1/2}), S = I_2 (x) Tr_1 rho. Its sign is the
// q -> infinity sign of cstre.
double cstre_infinity_margin(const ComplexMatrix& rho, int n);

// lambda_max(Tr_1 rho) - lambda_max(rho): the q -> infinity sign of the
// AR conditional entropy.
double ar_infinity_margin(const ComplexMatrix& rho, int n);

// Smallest eigenvalue of the qubit-1 partial transpose.
double ppt_margin(const ComplexMatrix& rho, int n);

// sum_i l_i^q over eigenvalues above 1e-15 (0^q = 0).
double power_sum(std::span<const double> eigenvalues, double q);
// ln of power_sum, evaluated with a shifted exponent to avoid overflow.
double log_power_sum(std::span<const double> eigenvalues, double q);
// -sum l ln l with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> eigenvalues);

} // namespace cstre
