#include <catch2/catch_amalgamated.hpp>

#include "mmis/lindblad.hpp"

using namespace mmis;

TEST_CASE("Hamiltonian assembly") {
    SECTION("lambda = 0 is classical Ising, diagonal in the Z basis") {
        const Mat H = Mat(build_hamiltonian(RingSpec(4, 2), 0.0));
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c)
                if (r != c) CHECK(std::abs(H(r, c)) < 1e-15);
    }
    SECTION("L=2 periodic sum double-counts the bond: H = -2 Z1Z2 - lambda(X1+X2)") {
        RingSpec spec(2, 2);
        const double lambda = 0.7;
        const Mat H = Mat(build_hamiltonian(spec, lambda));
        auto [X, Z] = clock_shift_matrices(2);
        const Mat expect = -2.0 * kron(Z, Z) - lambda * (kron(X, Mat::Identity(2, 2)) + kron(Mat::Identity(2, 2), X));
        CHECK(max_abs(H - expect) < 1e-14);
    }
    SECTION("Hermitian and commutes with T at L=5, lambda=1") {
        RingSpec spec(5, 2);
        const Mat H = Mat(build_hamiltonian(spec, 1.0));
        CHECK(is_hermitian(H, 1e-13));
        const Mat T = translation_unitary(spec);
        CHECK(max_abs(H * T - T * H) < 1e-12);
    }
    SECTION("qudit rings are rejected") {
        CHECK_THROWS_AS(build_hamiltonian(RingSpec(3, 3), 1.0), std::invalid_argument);
    }
}

TEST_CASE("collective jump operator") {
    SECTION("L=2: X1Y2 + X2Y1 explicitly") {
        const Mat A = Mat(build_jump(RingSpec(2, 2)));
        auto [X, Z] = clock_shift_matrices(2);
        Mat Y(2, 2);
        Y << 0, cxd(0, -1), cxd(0, 1), 0;
        CHECK(max_abs(A - kron(X, Y) - kron(Y, X)) < 1e-14);
    }
    SECTION("Hermitian, commutes with T") {
        RingSpec spec(6, 2);
        const Mat A = Mat(build_jump(spec));
        CHECK(max_abs(A - A.adjoint()) < 1e-14);
        const Mat T = translation_unitary(spec);
        CHECK(max_abs(A * T - T * A) < 1e-12);
    }
    SECTION("breaks the global spin-flip symmetry at L=4") {
        RingSpec spec(4, 2);
        const Mat A = Mat(build_jump(spec));
        PauliString flip{{1, 1, 1, 1}, {0, 0, 0, 0}};
        const Mat F = pauli_string_matrix(flip, spec);
        CHECK(max_abs(A * F - F * A) > 1e-6);
    }
}

TEST_CASE("stationarity and unitality of the Lindbladian") {
    RingSpec spec(5, 2);
    SECTION("rho_T is an exact steady state") {
        CHECK(lindblad_stationarity_residual(spec, 1.0, 0.5) < 1e-10);
    }
    SECTION("the identity is a fixed point (unital evolution)") {
        const SpMat H = build_hamiltonian(spec, 1.0);
        const SpMat A = build_jump(spec);
        const Mat id = Mat::Identity(32, 32) / 32.0;
        CHECK(max_abs(lindblad_rhs(H, A, 0.5, id)) < 1e-10);
    }
}

TEST_CASE("fidelity against the MMIS") {
    RingSpec spec(4, 2);
    const Mat B = invariant_basis(spec);
    SECTION("F(rho_T, rho_T) = 1") {
        CHECK(std::abs(fidelity_to_mmis(mmis_density(spec), B) - 1.0) < 1e-12);
    }
    SECTION("matches the generic Uhlmann evaluator on a mixed and a pure state") {
        const Mat rho = Mat::Identity(16, 16) / 16.0;
        CHECK(std::abs(fidelity_to_mmis(rho, B) - uhlmann_fidelity(rho, mmis_density(spec))) < 1e-10);
        Mat pure = Mat::Zero(16, 16);
        pure(0, 0) = 1.0;  // |0000>, translation invariant
        CHECK(std::abs(fidelity_to_mmis(pure, B) - uhlmann_fidelity(pure, mmis_density(spec))) < 1e-10);
        CHECK(std::abs(fidelity_to_mmis(pure, B) - 1.0 / std::sqrt(6.0)) < 1e-12);  // rank 6 sector
    }
}

TEST_CASE("closed-system evolution conserves purity") {
    RingSpec ring(4, 2);
    LindbladSpec spec(ring, 1.0, 0.0, 0.005, 1.0);
    Mat rho0 = Mat::Zero(16, 16);
    rho0(0, 0) = 1.0;
    const auto rec = evolve(spec, rho0);
    for (double p : rec.purity) CHECK(std::abs(p - 1.0) < 1e-8);
    for (double drift : rec.trace_drift) CHECK(drift < 1e-8);
}

TEST_CASE("rho_T initial state stays put") {
    RingSpec ring(4, 2);
    LindbladSpec spec(ring, 1.0, 0.5, 0.005, 1.0);
    const auto rec = evolve(spec, mmis_density(ring));
    for (double f : rec.fidelities) CHECK(std::abs(f - 1.0) < 1e-8);
}

TEST_CASE("dissipative trajectory: convergence and conserved charges") {
    RingSpec ring(5, 2);
    LindbladSpec spec(ring, 1.0, 0.5, 0.005, 6.0);
    Mat rho0 = Mat::Zero(32, 32);
    rho0(0, 0) = 1.0;
    const auto rec = evolve(spec, rho0);
    REQUIRE(rec.times.size() > 10);
    // fidelity climbs from 1/sqrt(dim T) toward 1
    CHECK(rec.fidelities.front() < 0.5);
    CHECK(rec.fidelities.back() > 0.98);
    CHECK(rec.max_charge_drift < 1e-7);
    for (double drift : rec.trace_drift) CHECK(drift < 1e-8);
    for (double drift : rec.hermiticity_drift) CHECK(drift < 1e-8);
    // monotone after the initial transient
    for (std::size_t i = 1; i < rec.times.size(); ++i)
        if (rec.times[i - 1] >= 1.0) CHECK(rec.fidelities[i] >= rec.fidelities[i - 1] - 1e-9);
}

TEST_CASE("integrator convergence: halving dt barely moves the final fidelity") {
    RingSpec ring(4, 2);
    Mat rho0 = Mat::Zero(16, 16);
    rho0(0, 0) = 1.0;
    const auto coarse = evolve(LindbladSpec(ring, 1.0, 0.5, 0.01, 2.0), rho0);
    const auto fine = evolve(LindbladSpec(ring, 1.0, 0.5, 0.005, 2.0), rho0);
    CHECK(std::abs(coarse.fidelities.back() - fine.fidelities.back()) < 1e-6);
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(LindbladSpec(RingSpec(11, 2), 1.0, 0.5, 0.005, 1.0), guard_error);
    CHECK_THROWS_AS(LindbladSpec(RingSpec(4, 2), 1.0, 0.5, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_jump(RingSpec(2, 3)), std::invalid_argument);
}
