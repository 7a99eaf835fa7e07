#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cstre {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    // |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

    std::span<const Complex> entries() const noexcept { return entries_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    // ||A - A^dagger||_F
    double hermiticity_residual() const;
    // (A + A^dagger) / 2
    ComplexMatrix hermitian_part() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns are the eigenvectors
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius norm drops
// to 1e-13 ||a||_F; throws NoConvergence after 100 sweeps and NotHermitian
// when ||a - a^dagger||_F > 1e-10 ||a||_F.
EigenDecomposition eig_hermitian(const ComplexMatrix& a);

// Eigenvalues only, ascending. Same algorithm and checks as eig_hermitian.
std::vector<double> eigvals_hermitian(const ComplexMatrix& a);

inline constexpr double kDefaultSupportTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

// V f(L) V^dagger with f(l) = l^p on eigenvalues above support_tol * l_max
// and 0 elsewhere. Throws NotPSD for eigenvalues below -1e-10.
ComplexMatrix power_on_support(const ComplexMatrix& a, double p, double support_tol = kDefaultSupportTol);

// Trace over qubit 1 (the most significant index bit) of an n-qubit operator.
ComplexMatrix partial_trace_first(const ComplexMatrix& rho, int n_qubits);

// Transpose of the qubit-1 indices only.
ComplexMatrix partial_transpose_first(const ComplexMatrix& rho, int n_qubits);

} // namespace cstre
