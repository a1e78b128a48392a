#pragma once
//
// The maximally mixed invariant state of lattice translation:
//
//     P_T = (1/L)(1 + T + T^2 + ... + T^(L-1)),    ρ_T = P_T / rank(P_T).
//
// Dense builds are guarded at d^L <= 4096; a matrix-free apply (L shifted
// copies of the input vector) and a sparse P_T are provided for the larger
// desk-scale sweeps. The canonical ensemble ρ_T = Σ_α w_α |ψ_α⟩⟨ψ_α| runs
// over one member per translation orbit, ψ_α ∝ P_T|σ_α⟩, and reconstructs
// ρ_T exactly with uniform weights w_α = 1/dim T (distinct orbits give
// orthogonal members, and Σ_σ P_T|σ⟩⟨σ|P_T = P_T).
//

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "mmis/dims.hpp"
#include "mmis/linalg.hpp"
#include "mmis/ring.hpp"

namespace mmis {

inline constexpr std::int64_t kDenseGuard = 4096;

inline void require_dense(const RingSpec& spec, const char* what) {
    if (spec.dim() > kDenseGuard) throw guard_error(std::string(what) + ": dense guard d^L <= 4096 exceeded");
}

// Permutation realized by T^n on basis ranks: row translate(idx,n), col idx.
inline std::vector<std::int64_t> translation_permutation(const RingSpec& spec, int n) {
    const std::int64_t dim = spec.dim();
    std::vector<std::int64_t> perm(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) perm[idx] = translate_index(idx, n, spec);
    return perm;
}

inline Mat translation_unitary(const RingSpec& spec, int n = 1) {
    require_dense(spec, "translation_unitary");
    const std::int64_t dim = spec.dim();
    Mat T = Mat::Zero(dim, dim);
    const auto perm = translation_permutation(spec, n);
    for (std::int64_t idx = 0; idx < dim; ++idx) T(perm[idx], idx) = 1.0;
    return T;
}

// Matrix-free v ↦ P_T v; works up to the 2^31 index guard.
inline Vec apply_PT(const RingSpec& spec, const Vec& v) {
    const std::int64_t dim = spec.dim();
    if (v.size() != dim) throw std::invalid_argument("apply_PT: vector length != d^L");
    Vec out = Vec::Zero(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        std::int64_t cur = idx;
        for (int n = 0; n < spec.L; ++n) {
            out(cur) += v(idx);
            cur = translate_index_once(cur, dim, spec.d);
        }
    }
    return out / static_cast<double>(spec.L);
}

inline Mat build_PT(const RingSpec& spec) {
    require_dense(spec, "build_PT");
    const std::int64_t dim = spec.dim();
    Mat P = Mat::Zero(dim, dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        std::int64_t cur = idx;
        for (int n = 0; n < spec.L; ++n) {
            P(cur, idx) += 1.0;
            cur = translate_index_once(cur, dim, spec.d);
        }
    }
    return P / static_cast<double>(spec.L);
}

// P_T is real with at most L nonzeros per column.
inline Eigen::SparseMatrix<double> build_PT_sparse(const RingSpec& spec) {
    const std::int64_t dim = spec.dim();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(dim) * spec.L);
    const double w = 1.0 / spec.L;
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        std::int64_t cur = idx;
        for (int n = 0; n < spec.L; ++n) {
            trips.emplace_back(static_cast<int>(cur), static_cast<int>(idx), w);
            cur = translate_index_once(cur, dim, spec.d);
        }
    }
    Eigen::SparseMatrix<double> P(dim, dim);
    P.setFromTriplets(trips.begin(), trips.end());
    return P;
}

// Numerical rank of the explicit projector: eigenvalues above 0.5 (the
// spectrum is {0,1}, so 0.5 is the maximally robust threshold).
inline std::int64_t rank_PT_check(const RingSpec& spec) {
    const Mat P = build_PT(spec);
    std::int64_t rank = 0;
    for (double lam : hermitian_eigenvalues(P))
        if (lam > 0.5) ++rank;
    return rank;
}

inline Mat mmis_density(const RingSpec& spec) {
    require_dense(spec, "mmis_density");
    return build_PT(spec) / static_cast<double>(dim_translation_subspace(spec.L, spec.d));
}

struct EnsembleMember {
    BasisString representative;
    double weight = 0.0;
    Vec state;  // unit vector P_T|σ⟩ / ‖P_T|σ⟩‖, translation invariant
};

inline std::vector<EnsembleMember> ensemble_decomposition(const RingSpec& spec) {
    require_dense(spec, "ensemble_decomposition");
    const auto orbits = orbit_decomposition(spec);
    const double weight = 1.0 / static_cast<double>(dim_translation_subspace(spec.L, spec.d));
    const std::int64_t dim = spec.dim();
    std::vector<EnsembleMember> members;
    members.reserve(orbits.representatives.size());
    for (std::size_t o = 0; o < orbits.representatives.size(); ++o) {
        const std::int64_t rep = orbits.representatives[o];
        Vec state = Vec::Zero(dim);
        std::int64_t cur = rep;
        // P_T|σ⟩ visits the p distinct shifts of σ, each L/p times.
        for (int n = 0; n < spec.L; ++n) {
            state(cur) += 1.0;
            cur = translate_index_once(cur, dim, spec.d);
        }
        state.normalize();
        members.push_back({make_basis_string(rep, spec), weight, std::move(state)});
    }
    return members;
}

struct EofCertificate {
    double average_entropy = 0.0;          // Σ_α w_α S_A(ψ_α)
    double bound = 0.0;                    // log L
    std::vector<double> member_entropies;  // per orbit
    std::vector<int> member_ranks;         // Schmidt ranks, each <= L
};

// Upper-bound certificate for the entanglement of formation across the cut
// defined by region A (1-based site list): every member of the canonical
// ensemble has Schmidt rank <= L, so the weighted entropy is <= log L.
inline EofCertificate eof_upper_bound_certificate(const RingSpec& spec, const std::vector<int>& region_a) {
    require_dense(spec, "eof_upper_bound_certificate");
    std::vector<int> keep;
    for (int site : region_a) {
        if (site < 1 || site > spec.L) throw std::invalid_argument("eof_upper_bound_certificate: site out of range");
        keep.push_back(site - 1);
    }
    const auto keepOff = subindex_offsets(keep, spec.L, spec.d);
    const auto compOff = subindex_offsets(complement_positions(keep, spec.L), spec.L, spec.d);

    EofCertificate cert;
    cert.bound = std::log(static_cast<double>(spec.L));
    for (const auto& member : ensemble_decomposition(spec)) {
        Mat psi(keepOff.size(), compOff.size());
        for (std::size_t r = 0; r < keepOff.size(); ++r)
            for (std::size_t c = 0; c < compOff.size(); ++c) psi(r, c) = member.state(keepOff[r] + compOff[c]);
        Eigen::JacobiSVD<Mat> svd(psi);
        double entropy = 0.0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
            const double p = svd.singularValues()(i) * svd.singularValues()(i);
            if (p > kEigClip) entropy -= p * std::log(p);
        }
        cert.member_entropies.push_back(entropy);
        cert.member_ranks.push_back(numeric_rank(svd.singularValues(), 1e-8));
        cert.average_entropy += member.weight * entropy;
    }
    return cert;
}

// Logarithmic negativity log‖ρ^{T_B}‖₁ for the partial transpose over the
// sites of region B (1-based). Sufficient but not necessary witness; no
// sign is asserted for ρ_T beyond the separable small-L cases.
inline double negativity_witness(const Mat& rho, const RingSpec& spec, const std::vector<int>& region_b) {
    if (rho.rows() != spec.dim()) throw std::invalid_argument("negativity_witness: dimension mismatch");
    std::vector<int> part;
    for (int site : region_b) {
        if (site < 1 || site > spec.L) throw std::invalid_argument("negativity_witness: site out of range");
        part.push_back(site - 1);
    }
    return std::log(trace_norm(partial_transpose(rho, part, spec.L, spec.d)));
}

}  // namespace mmis
