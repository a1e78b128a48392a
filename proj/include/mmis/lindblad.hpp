#pragma once
//
// Strongly translation-symmetric Lindbladian on a qubit ring,
//
//     H    = -Σ_i Z_i Z_{i+1} - λ Σ_i X_i          (periodic sum)
//     L_XY =  Σ_i X_i Y_{i+1}                       (collective jump)
//     𝓛(ρ) = -i[H,ρ] + γ (L ρ L† - ½{L†L, ρ}),
//
// integrated with fixed-step RK4 (reproducible trajectories, no adaptive
// stepping). Both H and L_XY commute with T and L_XY is Hermitian, so 𝓛 is
// unital, Tr[T^n ρ] are conserved charges, and ρ_T is stationary. The
// fidelity F(ρ(t), ρ_T) is evaluated in the orthonormal translation-
// invariant basis: F = Tr sqrt(B†ρB) / sqrt(dim T).
//
// The RK4 right-hand side uses Hermiticity of ρ and the jump operator:
// with C = Hρ and M = Lρ, the commutator is -i(C - C†) and the dissipator
// is γ(M L - ½(L M + (L M)†)), four sparse-dense products per stage.
//

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "mmis/dims.hpp"
#include "mmis/linalg.hpp"
#include "mmis/mmis_state.hpp"
#include "mmis/ring.hpp"

namespace mmis {

using SpMat = Eigen::SparseMatrix<cxd>;

inline void require_lindblad_guard(const RingSpec& ring) {
    if (ring.d != 2) throw std::invalid_argument("lindblad: qubit rings only (d = 2)");
    if (ring.dim() > 1024) throw guard_error("lindblad: dense-evolution guard d^L <= 1024");
}

// H = -Σ Z_i Z_{i+1} - λ Σ X_i with the wrap bond included; on the 2-ring
// the periodic sum double-counts the single bond.
inline SpMat build_hamiltonian(const RingSpec& ring, double lambda) {
    require_lindblad_guard(ring);
    const std::int64_t dim = ring.dim();
    std::vector<Eigen::Triplet<cxd>> trips;
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        double zz = 0.0;
        for (int i = 0; i < ring.L; ++i) {
            const int bi = (idx >> (ring.L - 1 - i)) & 1;
            const int bj = (idx >> (ring.L - 1 - (i + 1) % ring.L)) & 1;
            zz += (bi == bj) ? 1.0 : -1.0;
        }
        trips.emplace_back(idx, idx, cxd(-zz, 0.0));
        for (int i = 0; i < ring.L; ++i) trips.emplace_back(idx ^ (std::int64_t{1} << (ring.L - 1 - i)), idx, cxd(-lambda, 0.0));
    }
    SpMat H(dim, dim);
    H.setFromTriplets(trips.begin(), trips.end());
    return H;
}

// L_XY = Σ X_i Y_{i+1}; Hermitian since X and Y act on distinct sites.
inline SpMat build_jump(const RingSpec& ring) {
    require_lindblad_guard(ring);
    const std::int64_t dim = ring.dim();
    std::vector<Eigen::Triplet<cxd>> trips;
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        for (int i = 0; i < ring.L; ++i) {
            const int j = (i + 1) % ring.L;
            const std::int64_t maskI = std::int64_t{1} << (ring.L - 1 - i);
            const std::int64_t maskJ = std::int64_t{1} << (ring.L - 1 - j);
            // Y|0> = i|1>, Y|1> = -i|0>
            const cxd phase = (idx & maskJ) ? cxd(0.0, -1.0) : cxd(0.0, 1.0);
            trips.emplace_back((idx ^ maskI) ^ maskJ, idx, phase);
        }
    }
    SpMat A(dim, dim);
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

struct LindbladSpec {
    RingSpec ring;
    double lambda = 1.0;
    double gamma = 0.5;
    double dt = 0.005;
    double t_max = 10.0;

    LindbladSpec(RingSpec r, double lambda_, double gamma_, double dt_, double t_max_)
        : ring(r), lambda(lambda_), gamma(gamma_), dt(dt_), t_max(t_max_) {
        if (dt <= 0) throw std::invalid_argument("LindbladSpec: dt must be positive");
        if (gamma < 0) throw std::invalid_argument("LindbladSpec: gamma must be >= 0");
        require_lindblad_guard(ring);
    }
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> fidelities;        // F(ρ(t), ρ_T), non-squared Uhlmann
    std::vector<double> trace_drift;       // |Tr ρ - 1|
    std::vector<double> hermiticity_drift; // max |ρ - ρ†|
    std::vector<double> purity;            // Tr ρ²
    std::vector<std::vector<cxd>> charge_monitors;  // Tr[T^n ρ] for n = 0..L-1
    double max_charge_drift = 0.0;         // max_n,t |c_n(t) - c_n(0)|
};

// Orthonormal basis of the zero-momentum sector, one column per orbit.
inline Mat invariant_basis(const RingSpec& spec) {
    const auto orbits = orbit_decomposition(spec);
    const std::int64_t dim = spec.dim();
    Mat B = Mat::Zero(dim, orbits.orbit_count());
    for (std::int64_t o = 0; o < orbits.orbit_count(); ++o) {
        std::int64_t cur = orbits.representatives[o];
        const double amp = 1.0 / std::sqrt(static_cast<double>(orbits.periods[o]));
        for (int n = 0; n < orbits.periods[o]; ++n) {
            B(cur, o) = amp;
            cur = translate_index_once(cur, dim, spec.d);
        }
    }
    return B;
}

// F(ρ, ρ_T) = Tr sqrt(B†ρB) / sqrt(dim T); exact because sqrt(ρ_T) ∝ B B†.
inline double fidelity_to_mmis(const Mat& rho, const Mat& B) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(B.adjoint() * rho * B, Eigen::EigenvaluesOnly);
    double f = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i) > 0) f += std::sqrt(solver.eigenvalues()(i));
    return f / std::sqrt(static_cast<double>(B.cols()));
}

inline Mat lindblad_rhs(const SpMat& H, const SpMat& A, double gamma, const Mat& rho) {
    const Mat C = H * rho;
    Mat out = cxd(0.0, -1.0) * (C - C.adjoint());
    if (gamma != 0.0) {
        const Mat M = A * rho;
        const Mat AM = A * M;
        out.noalias() += gamma * (M * A);
        out -= 0.5 * gamma * (AM + AM.adjoint());
    }
    return out;
}

inline double lindblad_stationarity_residual(const RingSpec& ring, double lambda, double gamma) {
    const SpMat H = build_hamiltonian(ring, lambda);
    const SpMat A = build_jump(ring);
    return max_abs(lindblad_rhs(H, A, gamma, mmis_density(ring)));
}

// Fixed-step RK4 integration of dρ/dt = 𝓛(ρ), monitors sampled every
// `sample_stride` steps. Aborts with a diagnostic if the trace drifts by
// more than 1e-6 (step-size instability).
inline TrajectoryRecord evolve(const LindbladSpec& spec, const Mat& rho0, int sample_stride = 0) {
    const std::int64_t dim = spec.ring.dim();
    if (rho0.rows() != dim || rho0.cols() != dim) throw std::invalid_argument("evolve: state dimension mismatch");
    const SpMat H = build_hamiltonian(spec.ring, spec.lambda);
    const SpMat A = build_jump(spec.ring);
    const Mat B = invariant_basis(spec.ring);
    const auto steps = static_cast<std::int64_t>(std::llround(spec.t_max / spec.dt));
    if (sample_stride <= 0) sample_stride = std::max<int>(1, static_cast<int>(std::llround(0.1 / spec.dt)));

    std::vector<std::vector<std::int64_t>> perms;
    for (int n = 0; n < spec.ring.L; ++n) perms.push_back(translation_permutation(spec.ring, n));
    auto charges = [&](const Mat& rho) {
        std::vector<cxd> c(spec.ring.L);
        for (int n = 0; n < spec.ring.L; ++n) {
            cxd sum = 0.0;
            for (std::int64_t idx = 0; idx < dim; ++idx) sum += rho(idx, perms[n][idx]);
            c[n] = sum;  // Tr[T^n ρ] = Σ_idx ρ(idx, T^{-n} idx); permutation is unitary
        }
        return c;
    };

    TrajectoryRecord rec;
    const std::vector<cxd> c0 = charges(rho0);
    auto sample = [&](double t, const Mat& rho) {
        rec.times.push_back(t);
        rec.fidelities.push_back(fidelity_to_mmis(rho, B));
        rec.trace_drift.push_back(std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag()));
        rec.hermiticity_drift.push_back(max_abs(rho - rho.adjoint()));
        rec.purity.push_back((rho * rho).trace().real());
        auto c = charges(rho);
        for (int n = 0; n < spec.ring.L; ++n)
            rec.max_charge_drift = std::max(rec.max_charge_drift, std::abs(c[n] - c0[n]));
        rec.charge_monitors.push_back(std::move(c));
    };

    Mat rho = rho0;
    sample(0.0, rho);
    for (std::int64_t step = 1; step <= steps; ++step) {
        const Mat k1 = lindblad_rhs(H, A, spec.gamma, rho);
        const Mat k2 = lindblad_rhs(H, A, spec.gamma, rho + 0.5 * spec.dt * k1);
        const Mat k3 = lindblad_rhs(H, A, spec.gamma, rho + 0.5 * spec.dt * k2);
        const Mat k4 = lindblad_rhs(H, A, spec.gamma, rho + spec.dt * k3);
        rho += spec.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        // project back onto the Hermitian manifold: the adjoint-based RHS is
        // linear only there, and the unprojected roundoff mode is unstable
        rho = 0.5 * (rho + rho.adjoint()).eval();
        if (std::abs(rho.trace().real() - 1.0) > 1e-6)
            throw std::runtime_error("evolve: trace drift exceeds 1e-6 at t = " + std::to_string(step * spec.dt) +
                                     "; reduce dt");
        if (step % sample_stride == 0 || step == steps) sample(step * spec.dt, rho);
    }
    return rec;
}

}  // namespace mmis
