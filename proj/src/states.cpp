#include "cstre/states.hpp"

#include "cstre/errors.hpp"

#include <cmath>
#include <string>

namespace cstre {

PureState::PureState(int n_qubits, std::vector<Complex> amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes))
{
    if (n_qubits < 1 || n_qubits > 30 || amplitudes_.size() != (std::size_t{1} << n_qubits)) {
        throw Error(ErrorCode::DimensionMismatch, "pure state needs 2^n amplitudes");
    }
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) {
        throw Error(ErrorCode::BadParameter, "pure state is not normalised (norm " + std::to_string(std::sqrt(norm2)) + ")");
    }
}

namespace {

void check_qubits(int n)
{
    if (n < 2 || n > 30) throw Error(ErrorCode::BadQubitCount, "need at least 2 qubits, got " + std::to_string(n));
}

void check_x(double x)
{
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::BadParameter, "x must lie in [0, 1], got " + std::to_string(x));
}

} // namespace

PureState w_state(int n)
{
    check_qubits(n);
    std::vector<Complex> amps(std::size_t{1} << n);
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) amps[std::size_t{1} << k] = a;
    return PureState(n, std::move(amps));
}

PureState ghz_state(int n)
{
    check_qubits(n);
    std::vector<Complex> amps(std::size_t{1} << n);
    amps.front() = M_SQRT1_2;
    amps.back() = M_SQRT1_2;
    return PureState(n, std::move(amps));
}

namespace {

// noise * I + weight * |phi><phi|, touching only the nonzero amplitudes.
ComplexMatrix noisy_projector(const PureState& phi, double noise, double weight)
{
    ComplexMatrix rho = ComplexMatrix::identity(phi.dim()) * noise;
    const auto amps = phi.amplitudes();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if (amps[i] != Complex{}) support.push_back(i);
    for (std::size_t i : support)
        for (std::size_t j : support) rho(i, j) += weight * amps[i] * std::conj(amps[j]);
    return rho;
}

} // namespace

ComplexMatrix pseudopure(const PureState& phi, double x)
{
    check_x(x);
    const double noise = (1.0 - x) / static_cast<double>(phi.dim() - 1);
    return noisy_projector(phi, noise, x - noise);
}

ComplexMatrix werner_like(const PureState& phi, double x)
{
    check_x(x);
    return noisy_projector(phi, (1.0 - x) / static_cast<double>(phi.dim()), x);
}

std::string_view to_string(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::PseudopureW: return "pp-w";
    case FamilyKind::PseudopureGhz: return "pp-ghz";
    case FamilyKind::WernerLikeW: return "wl-w";
    case FamilyKind::WernerLikeGhz: return "wl-ghz";
    }
    return "?";
}

std::optional<FamilyKind> parse_family(std::string_view text)
{
    for (auto kind : {FamilyKind::PseudopureW, FamilyKind::PseudopureGhz, FamilyKind::WernerLikeW,
                      FamilyKind::WernerLikeGhz}) {
        if (text == to_string(kind)) return kind;
    }
    return std::nullopt;
}

bool is_pseudopure(FamilyKind kind)
{
    return kind == FamilyKind::PseudopureW || kind == FamilyKind::PseudopureGhz;
}

bool is_ghz(FamilyKind kind)
{
    return kind == FamilyKind::PseudopureGhz || kind == FamilyKind::WernerLikeGhz;
}

int min_qubits(FamilyKind kind)
{
    return is_pseudopure(kind) ? 3 : 2;
}

void validate(const StateFamily& family, int max_qubits)
{
    if (family.n_qubits < min_qubits(family.kind) || family.n_qubits > max_qubits) {
        throw Error(ErrorCode::BadQubitCount, std::string(to_string(family.kind)) + " needs " +
                                                  std::to_string(min_qubits(family.kind)) + " <= N <= " +
                                                  std::to_string(max_qubits) + ", got " +
                                                  std::to_string(family.n_qubits));
    }
    check_x(family.x);
}

ComplexMatrix build(const StateFamily& family, int max_qubits)
{
    validate(family, max_qubits);
    const PureState phi = is_ghz(family.kind) ? ghz_state(family.n_qubits) : w_state(family.n_qubits);
    return is_pseudopure(family.kind) ? pseudopure(phi, family.x) : werner_like(phi, family.x);
}

} // namespace cstre
