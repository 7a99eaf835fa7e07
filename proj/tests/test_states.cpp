#include "cstre/errors.hpp"
#include "cstre/states.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cstre;

namespace {

constexpr FamilyKind kAll[] = {FamilyKind::PseudopureW, FamilyKind::PseudopureGhz, FamilyKind::WernerLikeW,
                               FamilyKind::WernerLikeGhz};

double purity(const ComplexMatrix& rho)
{
    return (rho * rho).trace().real();
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::BadParameter;
}

} // namespace

TEST_CASE("w_state amplitudes")
{
    const auto w2 = w_state(2);
    CHECK(std::abs(w2.amplitudes()[1] - M_SQRT1_2) < 1e-15);
    CHECK(std::abs(w2.amplitudes()[2] - M_SQRT1_2) < 1e-15);
    CHECK(w2.amplitudes()[0] == Complex{});
    CHECK(w2.amplitudes()[3] == Complex{});

    const auto w3 = w_state(3);
    for (std::size_t i = 0; i < 8; ++i) {
        const bool single = i == 4 || i == 2 || i == 1;
        CHECK(std::abs(w3.amplitudes()[i]) == doctest::Approx(single ? 1.0 / std::sqrt(3.0) : 0.0));
    }

    const auto w4 = w_state(4);
    double norm = 0.0;
    int nonzero = 0;
    for (const auto& a : w4.amplitudes()) {
        norm += std::norm(a);
        nonzero += a != Complex{};
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(nonzero == 4);

    CHECK(code_of([] { w_state(1); }) == ErrorCode::BadQubitCount);
}

TEST_CASE("ghz_state amplitudes")
{
    const auto g2 = ghz_state(2);
    CHECK(g2.amplitudes()[0] == Complex(M_SQRT1_2));
    CHECK(g2.amplitudes()[3] == Complex(M_SQRT1_2));

    const auto g3 = ghz_state(3);
    for (std::size_t i = 1; i < 7; ++i) CHECK(g3.amplitudes()[i] == Complex{});
    CHECK(g3.amplitudes()[7] == Complex(M_SQRT1_2));

    const auto g6 = ghz_state(6);
    CHECK(g6.dim() == 64);
    int nonzero = 0;
    for (const auto& a : g6.amplitudes()) nonzero += a != Complex{};
    CHECK(nonzero == 2);

    CHECK(code_of([] { ghz_state(0); }) == ErrorCode::BadQubitCount);
}

TEST_CASE("pseudopure endpoints and spectrum")
{
    const auto phi = w_state(3);
    CHECK(max_abs_diff(pseudopure(phi, 1.0), phi.projector()) < 1e-15);
    CHECK(max_abs_diff(pseudopure(phi, 1.0 / 8.0), ComplexMatrix::identity(8) * 0.125) < 1e-15);

    for (double x : {0.0, 0.3, 0.8}) {
        for (const auto& state : {w_state(4), ghz_state(4)}) {
            const auto eigs = eigvals_hermitian(pseudopure(state, x));
            std::vector<double> want(15, (1.0 - x) / 15.0);
            want.push_back(x);
            CHECK(test::max_abs_diff(eigs, test::sorted(want)) < 1e-13);
        }
    }
    CHECK(code_of([&] { pseudopure(phi, 1.5); }) == ErrorCode::BadParameter);
    CHECK(code_of([&] { pseudopure(phi, -0.1); }) == ErrorCode::BadParameter);
}

TEST_CASE("werner_like endpoints and spectrum")
{
    const auto phi = ghz_state(3);
    CHECK(max_abs_diff(werner_like(phi, 0.0), ComplexMatrix::identity(8) * 0.125) < 1e-15);
    CHECK(max_abs_diff(werner_like(phi, 1.0), phi.projector()) < 1e-15);
    for (double x : {0.1, 0.5, 0.9}) {
        const auto eigs = eigvals_hermitian(werner_like(w_state(5), x));
        std::vector<double> want(31, (1.0 - x) / 32.0);
        want.push_back((1.0 - x) / 32.0 + x);
        CHECK(test::max_abs_diff(eigs, test::sorted(want)) < 1e-13);
    }
    CHECK(code_of([&] { werner_like(phi, 2.0); }) == ErrorCode::BadParameter);
}

TEST_CASE("build dispatches the four families")
{
    // Two-qubit Werner state (1-x) I/4 + x |Phi+><Phi+|
    const double x = 0.4;
    const auto werner = build(StateFamily{FamilyKind::WernerLikeGhz, 2, x});
    ComplexMatrix want = ComplexMatrix::identity(4) * ((1 - x) / 4);
    want(0, 0) += x / 2;
    want(3, 3) += x / 2;
    want(0, 3) += x / 2;
    want(3, 0) += x / 2;
    CHECK(max_abs_diff(werner, want) < 1e-15);

    CHECK(max_abs_diff(build(StateFamily{FamilyKind::PseudopureW, 3, 1.0}), w_state(3).projector()) < 1e-15);

    const auto pp0 = build(StateFamily{FamilyKind::PseudopureGhz, 4, 0.0});
    CHECK(max_abs_diff(pp0, (ComplexMatrix::identity(16) - ghz_state(4).projector()) * (1.0 / 15.0)) < 1e-15);

    CHECK(code_of([] { build(StateFamily{FamilyKind::PseudopureW, 2, 0.1}); }) == ErrorCode::BadQubitCount);
    CHECK(code_of([] { build(StateFamily{FamilyKind::WernerLikeW, 9, 0.1}); }) == ErrorCode::BadQubitCount);
    CHECK(build(StateFamily{FamilyKind::WernerLikeW, 9, 0.1}, 9).dim() == 512);
    CHECK(code_of([] { build(StateFamily{FamilyKind::WernerLikeW, 3, 1.01}); }) == ErrorCode::BadParameter);
}

TEST_CASE("family states are valid density matrices on the whole grid")
{
    for (auto kind : kAll)
        for (int n = 3; n <= 8; ++n)
            for (int step = 0; step <= 10; ++step) {
                const double x = step / 10.0;
                const auto rho = build(StateFamily{kind, n, x});
                CHECK(rho.hermiticity_residual() <= 1e-12);
                CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
                if (n <= 6) CHECK(eigvals_hermitian(rho).front() >= -1e-10);
            }
}

TEST_CASE("families are invariant under qubit permutations")
{
    for (auto kind : kAll)
        for (double x : {0.0, 0.37, 1.0}) {
            const auto rho = build(StateFamily{kind, 3, x});
            for (auto [a, b] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}})
                CHECK(max_abs_diff(test::swap_qubits(rho, 3, a, b), rho) <= 1e-12);
        }
}

TEST_CASE("pseudopure and werner-like meet at the maximally mixed state")
{
    for (int n = 3; n <= 5; ++n) {
        const double dim = std::ldexp(1.0, n);
        const auto mixed = ComplexMatrix::identity(static_cast<std::size_t>(dim)) * (1.0 / dim);
        for (const auto& phi : {w_state(n), ghz_state(n)}) {
            CHECK(max_abs_diff(werner_like(phi, 0.0), mixed) < 1e-15);
            CHECK(max_abs_diff(pseudopure(phi, 1.0 / dim), mixed) < 1e-15);
        }
    }
}

TEST_CASE("purity increases with x")
{
    for (int n = 3; n <= 5; ++n) {
        const double dim = std::ldexp(1.0, n);
        for (const auto& phi : {w_state(n), ghz_state(n)}) {
            double last_pp = -1.0;
            double last_wl = -1.0;
            for (int step = 0; step <= 50; ++step) {
                const double x_wl = step / 50.0;
                const double x_pp = 1.0 / dim + (1.0 - 1.0 / dim) * step / 50.0;
                const double p_wl = purity(werner_like(phi, x_wl));
                const double p_pp = purity(pseudopure(phi, x_pp));
                CHECK(p_wl > last_wl);
                CHECK(p_pp > last_pp);
                last_wl = p_wl;
                last_pp = p_pp;
            }
        }
    }
}

TEST_CASE("family names round-trip")
{
    for (auto kind : kAll) CHECK(parse_family(to_string(kind)) == kind);
    CHECK_FALSE(parse_family("pp-x").has_value());
}
