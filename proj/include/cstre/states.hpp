#pragma once

#include "cstre/linalg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cstre {

inline constexpr int kDefaultMaxQubits = 8;

// Unit-norm state vector over 2^n computational basis states, qubit 1 being
// the most significant index bit.
class PureState {
public:
    PureState(int n_qubits, std::vector<Complex> amplitudes);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

    ComplexMatrix projector() const { return ComplexMatrix::outer(amplitudes_); }

private:
    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

PureState w_state(int n);
PureState ghz_state(int n);

// (1-x)/(2^N-1) (I - |phi><phi|) + x |phi><phi|
ComplexMatrix pseudopure(const PureState& phi, double x);
// (1-x) I/2^N + x |phi><phi|
ComplexMatrix werner_like(const PureState& phi, double x);

enum class FamilyKind { PseudopureW, PseudopureGhz, WernerLikeW, WernerLikeGhz };

std::string_view to_string(FamilyKind kind);  // "pp-w", "pp-ghz", "wl-w", "wl-ghz"
std::optional<FamilyKind> parse_family(std::string_view text);

bool is_pseudopure(FamilyKind kind);
bool is_ghz(FamilyKind kind);

// Smallest qubit count a family accepts: 3 for the pseudopure families,
// 2 for the Werner-like ones (two-qubit Werner checks).
int min_qubits(FamilyKind kind);

struct StateFamily {
    FamilyKind kind;
    int n_qubits;
    double x;
};

// Throws BadQubitCount / BadParameter when the family is out of range.
void validate(const StateFamily& family, int max_qubits = kDefaultMaxQubits);

ComplexMatrix build(const StateFamily& family, int max_qubits = kDefaultMaxQubits);

} // namespace cstre
