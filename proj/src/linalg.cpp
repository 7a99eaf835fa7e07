#include "cstre/linalg.hpp"

#include "cstre/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cstre {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim)
{
    if (dim == 0) {
        throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be at least 1");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries))
{
    if (dim == 0 || entries_.size() != dim * dim) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim)
{
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values)
{
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v)
{
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == Complex{}) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != Complex{}) m(i, j) = v[i] * std::conj(v[j]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex ComplexMatrix::trace() const
{
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const
{
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_residual() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::hermitian_part() const
{
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs)
{
    if (rhs.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix sum of unequal dimensions");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs)
{
    if (rhs.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix difference of unequal dimensions");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale)
{
    for (auto& z : entries_) z *= scale;
    return *this;
}

// The family states are mostly zeros, so skipping zero multiplicands makes
// the triple loop close to sparse cost without a sparse format.
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs)
{
    if (lhs.dim_ != rhs.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix product of unequal dimensions");
    const std::size_t n = lhs.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex* row = &out.entries_[i * n];
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = lhs(i, k);
            if (aik == Complex{}) continue;
            const Complex* brow = &rhs.entries_[k * n];
            for (std::size_t j = 0; j < n; ++j) row[j] += aik * brow[j];
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "max_abs_diff of unequal dimensions");
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kOffDiagonalTol = 1e-13;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Runs the Jacobi sweeps in place on `work`; accumulates rotations into
// `vectors` when it is non-null. Returns the unsorted diagonal.
std::vector<double> jacobi_diagonalise(ComplexMatrix& work, ComplexMatrix* vectors)
{
    const std::size_t n = work.dim();
    const double norm = work.frobenius_norm();
    if (work.hermiticity_residual() > kHermitianTol * norm) {
        throw Error(ErrorCode::NotHermitian, "residual " + std::to_string(work.hermiticity_residual()) +
                                                 " exceeds 1e-10 * ||A||_F");
    }
    // Symmetrise so the rotations see an exactly Hermitian input.
    for (std::size_t i = 0; i < n; ++i) {
        work(i, i) = work(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (work(i, j) + std::conj(work(j, i)));
            work(i, j) = avg;
            work(j, i) = std::conj(avg);
        }
    }

    const double target = kOffDiagonalTol * norm;
    // Entries this small cannot lift the off-diagonal norm above target.
    const double skip = 1e-16 * norm / static_cast<double>(n);

    int sweep = 0;
    // Negated test so a NaN norm keeps sweeping into NoConvergence.
    while (!(off_diagonal_norm(work) <= target)) {
        if (sweep++ == kMaxSweeps) {
            throw Error(ErrorCode::NoConvergence, "Jacobi did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex beta = work(p, q);
                const double mag = std::abs(beta);
                if (mag <= skip) continue;

                const double alpha = work(p, p).real();
                const double gamma = work(q, q).real();
                const double theta = (gamma - alpha) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex phase = beta / mag;       // e^{i phi}
                const Complex phase_conj = std::conj(phase);

                // A <- A U with U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
                auto rotate_columns = [&](ComplexMatrix& m) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex mkp = m(k, p);
                        const Complex mkq = m(k, q);
                        m(k, p) = c * mkp - s * phase_conj * mkq;
                        m(k, q) = s * mkp + c * phase_conj * mkq;
                    }
                };
                rotate_columns(work);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = work(p, k);
                    const Complex aqk = work(q, k);
                    work(p, k) = c * apk - s * phase * aqk;
                    work(q, k) = s * apk + c * phase * aqk;
                }
                work(p, q) = 0.0;
                work(q, p) = 0.0;
                work(p, p) = alpha - t * mag;
                work(q, q) = gamma + t * mag;
                if (vectors != nullptr) rotate_columns(*vectors);
            }
        }
    }

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = work(i, i).real();
    return diag;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return order;
}

} // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& a)
{
    ComplexMatrix work = a;
    ComplexMatrix vectors = ComplexMatrix::identity(a.dim());
    const std::vector<double> diag = jacobi_diagonalise(work, &vectors);

    const auto order = ascending_order(diag);
    EigenDecomposition out{std::vector<double>(diag.size()), ComplexMatrix(a.dim())};
    for (std::size_t col = 0; col < order.size(); ++col) {
        out.eigenvalues[col] = diag[order[col]];
        for (std::size_t row = 0; row < a.dim(); ++row) out.eigenvectors(row, col) = vectors(row, order[col]);
    }
    return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& a)
{
    ComplexMatrix work = a;
    std::vector<double> diag = jacobi_diagonalise(work, nullptr);
    std::sort(diag.begin(), diag.end());
    return diag;
}

ComplexMatrix power_on_support(const ComplexMatrix& a, double p, double support_tol)
{
    const EigenDecomposition eig = eig_hermitian(a);
    const double lmin = eig.eigenvalues.front();
    const double lmax = eig.eigenvalues.back();
    if (lmin < -kPsdTol) {
        throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lmin) + " below -1e-10");
    }

    const std::size_t n = a.dim();
    std::vector<double> f(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double l = eig.eigenvalues[k];
        if (lmax > 0.0 && l > support_tol * lmax) f[k] = std::pow(l, p);
    }

    const ComplexMatrix& v = eig.eigenvectors;
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (f[k] == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = v(i, k) * f[k];
            if (vik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(v(j, k));
        }
    }
    return out;
}

namespace {

std::size_t check_qubit_dim(const ComplexMatrix& rho, int n_qubits, int min_qubits)
{
    if (n_qubits < min_qubits || n_qubits > 30 || rho.dim() != (std::size_t{1} << n_qubits)) {
        throw Error(ErrorCode::DimensionMismatch, "dimension " + std::to_string(rho.dim()) + " is not 2^" +
                                                      std::to_string(n_qubits) + " with n >= " +
                                                      std::to_string(min_qubits));
    }
    return rho.dim() / 2;
}

} // namespace

ComplexMatrix partial_trace_first(const ComplexMatrix& rho, int n_qubits)
{
    const std::size_t half = check_qubit_dim(rho, n_qubits, 2);
    ComplexMatrix out(half);
    for (std::size_t j = 0; j < half; ++j)
        for (std::size_t l = 0; l < half; ++l) out(j, l) = rho(j, l) + rho(half + j, half + l);
    return out;
}

ComplexMatrix partial_transpose_first(const ComplexMatrix& rho, int n_qubits)
{
    const std::size_t half = check_qubit_dim(rho, n_qubits, 1);
    ComplexMatrix out(rho.dim());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t j = 0; j < half; ++j)
                for (std::size_t l = 0; l < half; ++l) out(k * half + j, i * half + l) = rho(i * half + j, k * half + l);
    return out;
}

} // namespace cstre
