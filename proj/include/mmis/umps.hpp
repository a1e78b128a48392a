#pragma once
//
// Uniform matrix product states on the ring,
//
//     ψ(σ) = Tr[A^{σ_1} A^{σ_2} ... A^{σ_L}],
//
// their MPS-X variants Tr[X A^{σ_1} ... A^{σ_L}] with a single virtual
// defect X, numerical span-rank estimation against the binomial bound
//
//     dim span uMPS(χ,d,L) <= C(L + dχ² - 1, dχ² - 1),
//
// and the W-state identities: the MPS-X realization with nilpotent defect,
// and |W⟩ ∝ Σ_k ω^{-k} |ψ_k⟩^{⊗L} with ψ_k = (|0⟩ + ω^k|1⟩)/√2, ω = e^{2πi/L}.
//

#include <cstdint>
#include <random>
#include <vector>

#include "mmis/dims.hpp"
#include "mmis/linalg.hpp"
#include "mmis/ring.hpp"

namespace mmis {

struct MpsTensor {
    int chi = 1;
    int d = 2;
    std::vector<Mat> site;  // site[σ] is a chi x chi matrix

    MpsTensor(int chi_, int d_) : chi(chi_), d(d_), site(d_, Mat::Zero(chi_, chi_)) {
        if (chi < 1 || d < 2) throw std::invalid_argument("MpsTensor: need chi >= 1, d >= 2");
    }
};

inline MpsTensor random_mps_tensor(int chi, int d, std::mt19937_64& rng) {
    MpsTensor A(chi, d);
    for (int s = 0; s < d; ++s) A.site[s] = gaussian_matrix(chi, chi, rng);
    return A;
}

inline void require_vector_guard(std::int64_t dim, const char* what) {
    if (dim > (std::int64_t{1} << 24)) throw guard_error(std::string(what) + ": d^L exceeds the vector guard 2^24");
}

// Unnormalized MPS-X wavefunction; X = identity recovers the uMPS.
inline Vec mpsx_vector(const MpsTensor& A, const Mat& X, int L) {
    if (X.rows() != A.chi || X.cols() != A.chi) throw std::invalid_argument("mpsx_vector: defect shape mismatch");
    const std::int64_t dim = ipow(A.d, L);
    require_vector_guard(dim, "mpsx_vector");
    Vec psi(dim);
    std::vector<int> digits(L, 0);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        std::int64_t rem = idx;
        for (int i = L - 1; i >= 0; --i) {
            digits[i] = static_cast<int>(rem % A.d);
            rem /= A.d;
        }
        Mat prod = X;
        for (int i = 0; i < L; ++i) prod = prod * A.site[digits[i]];
        psi(idx) = prod.trace();
    }
    return psi;
}

inline Vec umps_vector(const MpsTensor& A, int L) {
    return mpsx_vector(A, Mat::Identity(A.chi, A.chi), L);
}

struct SpanEstimate {
    int chi = 0, d = 0, L = 0;
    int sample_count = 0;
    std::vector<double> singular_values;  // descending
    int numeric_rank = 0;
    std::int64_t bound = 0;  // C(L + dχ²-1, dχ²-1)
    bool sufficient_samples = false;
};

// Monte-Carlo span rank of the uMPS family: tensors drawn with independent
// standard complex Gaussian entries (generic position maximizes the measured
// rank). Saturation is distinguishable from sample starvation once the
// sample count exceeds min(bound, d^L) by the +10 margin.
inline SpanEstimate span_rank_estimate(int chi, int d, int L, int samples, std::mt19937_64& rng,
                                       double rank_rel_tol = 1e-8) {
    const std::int64_t dim = ipow(d, L);
    require_vector_guard(dim, "span_rank_estimate");
    SpanEstimate est;
    est.chi = chi;
    est.d = d;
    est.L = L;
    est.sample_count = samples;
    est.bound = binomial_exact(L + d * chi * chi - 1, d * chi * chi - 1);
    est.sufficient_samples = samples >= std::min<std::int64_t>(est.bound, dim) + 10;
    Mat M(dim, samples);
    for (int s = 0; s < samples; ++s) {
        Vec v = umps_vector(random_mps_tensor(chi, d, rng), L);
        const double norm = v.norm();
        M.col(s) = (norm > 0) ? Vec(v / norm) : v;
    }
    Eigen::JacobiSVD<Mat> svd(M);
    est.singular_values.assign(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
    est.numeric_rank = numeric_rank(svd.singularValues(), rank_rel_tol);
    return est;
}

inline Vec w_state_vector(int L) {
    const std::int64_t dim = ipow(2, L);
    require_vector_guard(dim, "w_state_vector");
    Vec w = Vec::Zero(dim);
    for (int i = 0; i < L; ++i) w(std::int64_t{1} << (L - 1 - i)) = 1.0;
    return w / std::sqrt(static_cast<double>(L));
}

// W state as an MPS-X: A^0 = 1, A^1 = lowering nilpotent, X = raising
// nilpotent, so Tr[X A^{σ_1} ... A^{σ_L}] = 1 exactly on weight-one strings.
inline Vec w_mpsx_vector(int L) {
    MpsTensor A(2, 2);
    A.site[0] = Mat::Identity(2, 2);
    A.site[1] << 0, 0, 1, 0;
    Mat X(2, 2);
    X << 0, 1, 0, 0;
    return mpsx_vector(A, X, L);
}

// GHZ tensor: χ=2 diagonal tensor whose uMPS is |0...0⟩ + |1...1⟩.
inline MpsTensor ghz_tensor() {
    MpsTensor A(2, 2);
    A.site[0] << 1, 0, 0, 0;
    A.site[1] << 0, 0, 0, 1;
    return A;
}

// Residual of the homogeneous-product superposition identity for |W⟩.
inline double w_superposition_check(int L) {
    if (L < 2) throw std::invalid_argument("w_superposition_check: need L >= 2");
    const std::int64_t dim = ipow(2, L);
    require_vector_guard(dim, "w_superposition_check");
    Vec sum = Vec::Zero(dim);
    for (int k = 0; k < L; ++k) {
        const cxd omega_k = std::polar(1.0, 2.0 * kPi * k / L);
        Vec prod(1);
        prod(0) = 1.0;
        Vec qubit(2);
        qubit << 1.0 / std::sqrt(2.0), omega_k / std::sqrt(2.0);
        for (int i = 0; i < L; ++i) {
            Vec next(prod.size() * 2);
            for (Eigen::Index r = 0; r < prod.size(); ++r) {
                next(2 * r) = prod(r) * qubit(0);
                next(2 * r + 1) = prod(r) * qubit(1);
            }
            prod.swap(next);
        }
        sum += std::polar(1.0, -2.0 * kPi * k / L) * prod;
    }
    sum.normalize();
    // the superposition is a positive multiple of |W⟩, so no phase freedom
    return (sum - w_state_vector(L)).norm();
}

}  // namespace mmis
