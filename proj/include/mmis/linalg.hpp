#pragma once
//
// Dense linear-algebra helpers shared across the lab: tensor products,
// partial trace / partial transpose on site-major qudit indices, spectral
// entropies, trace norm, PSD square root and Uhlmann fidelity, and seeded
// Gaussian / Haar sampling.
//
// Entropy convention: natural logarithm, 0·log 0 = 0, eigenvalues clipped
// at 1e-14 before the log.
//

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "mmis/ring.hpp"

namespace mmis {

inline constexpr double kEigClip = 1e-14;

inline Mat kron(const Mat& A, const Mat& B) {
    Mat out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index r = 0; r < A.rows(); ++r)
        for (Eigen::Index c = 0; c < A.cols(); ++c) out.block(r * B.rows(), c * B.cols(), B.rows(), B.cols()) = A(r, c) * B;
    return out;
}

inline double max_abs(const Mat& M) { return M.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Mat& M, double tol = 1e-12) {
    return max_abs(M - M.adjoint()) < tol;
}

inline std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Offsets for placing the digits of a sub-index at `positions` (0-based,
// site-major) inside a length-`num_sites` d-ary index.
inline std::vector<std::int64_t> subindex_offsets(const std::vector<int>& positions, int num_sites, int d) {
    const int k = static_cast<int>(positions.size());
    const std::int64_t dim = ipow(d, k);
    std::vector<std::int64_t> weight(k);
    for (int i = 0; i < k; ++i) weight[i] = ipow(d, num_sites - 1 - positions[i]);
    std::vector<std::int64_t> offsets(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        std::int64_t rem = idx, global = 0;
        for (int i = k - 1; i >= 0; --i) {
            global += (rem % d) * weight[i];
            rem /= d;
        }
        offsets[idx] = global;
    }
    return offsets;
}

inline std::vector<int> complement_positions(const std::vector<int>& keep, int num_sites) {
    std::vector<bool> kept(num_sites, false);
    for (int p : keep) {
        if (p < 0 || p >= num_sites) throw std::invalid_argument("site position out of range");
        if (kept[p]) throw std::invalid_argument("duplicate site position");
        kept[p] = true;
    }
    std::vector<int> comp;
    for (int p = 0; p < num_sites; ++p)
        if (!kept[p]) comp.push_back(p);
    return comp;
}

// Tr over the complement of `keep` (0-based site positions) of a density
// operator on num_sites qudits of dimension d.
inline Mat partial_trace(const Mat& rho, const std::vector<int>& keep, int num_sites, int d) {
    const auto comp = complement_positions(keep, num_sites);
    const auto keepOff = subindex_offsets(keep, num_sites, d);
    const auto compOff = subindex_offsets(comp, num_sites, d);
    const std::int64_t dimK = static_cast<std::int64_t>(keepOff.size());
    Mat out = Mat::Zero(dimK, dimK);
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(compOff.size()); ++e) {
        const std::int64_t off = compOff[e];
        for (std::int64_t r = 0; r < dimK; ++r)
            for (std::int64_t c = 0; c < dimK; ++c) out(r, c) += rho(keepOff[r] + off, keepOff[c] + off);
    }
    return out;
}

// Transpose the indices of the sites listed in `part` (0-based positions).
inline Mat partial_transpose(const Mat& rho, const std::vector<int>& part, int num_sites, int d) {
    const auto comp = complement_positions(part, num_sites);
    const auto pOff = subindex_offsets(part, num_sites, d);
    const auto cOff = subindex_offsets(comp, num_sites, d);
    Mat out(rho.rows(), rho.cols());
    for (std::int64_t rp = 0; rp < static_cast<std::int64_t>(pOff.size()); ++rp)
        for (std::int64_t cp = 0; cp < static_cast<std::int64_t>(pOff.size()); ++cp)
            for (std::int64_t rc = 0; rc < static_cast<std::int64_t>(cOff.size()); ++rc)
                for (std::int64_t cc = 0; cc < static_cast<std::int64_t>(cOff.size()); ++cc)
                    out(pOff[rp] + cOff[rc], pOff[cp] + cOff[cc]) = rho(pOff[cp] + cOff[rc], pOff[rp] + cOff[cc]);
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const Mat& M) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(M, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

inline double trace_norm(const Mat& M) {
    Eigen::JacobiSVD<Mat> svd(M);
    return svd.singularValues().sum();
}

inline double trace_distance(const Mat& A, const Mat& B) { return trace_norm(A - B); }

inline double von_neumann_entropy_from_eigs(const std::vector<double>& eigs) {
    double s = 0.0;
    for (double lam : eigs)
        if (lam > kEigClip) s -= lam * std::log(lam);
    return s;
}

inline double von_neumann_entropy(const Mat& rho) {
    return von_neumann_entropy_from_eigs(hermitian_eigenvalues(rho));
}

// Rényi entropy S_α = log(Σ λ^α) / (1-α); α = 1 falls back to von Neumann.
inline double renyi_entropy_from_eigs(const std::vector<double>& eigs, double alpha) {
    if (alpha < 0) throw std::invalid_argument("renyi_entropy: alpha must be >= 0");
    if (std::abs(alpha - 1.0) < 1e-12) return von_neumann_entropy_from_eigs(eigs);
    double sum = 0.0;
    for (double lam : eigs)
        if (lam > kEigClip) sum += std::pow(lam, alpha);
    return std::log(sum) / (1.0 - alpha);
}

// PSD square root via Hermitian eigendecomposition, negatives clipped.
inline Mat matrix_sqrt_psd(const Mat& M) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(M);
    Eigen::VectorXd lam = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint();
}

// Uhlmann fidelity, non-squared convention: F = Tr sqrt(sqrt(ρ) σ sqrt(ρ)).
// Eigenvalues below 1e-13 of the largest are rank-deficiency noise; without
// the cutoff their square roots contaminate the trace at the 1e-8 level.
inline double uhlmann_fidelity(const Mat& rho, const Mat& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    const Mat sq = matrix_sqrt_psd(rho);
    Eigen::SelfAdjointEigenSolver<Mat> solver(sq * sigma * sq, Eigen::EigenvaluesOnly);
    const double cutoff = 1e-13 * std::max(0.0, solver.eigenvalues().cwiseAbs().maxCoeff());
    double f = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lam = solver.eigenvalues()(i);
        if (lam > cutoff) f += std::sqrt(lam);
    }
    return f;
}

inline cxd gaussian_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    return {normal(rng), normal(rng)};
}

inline Mat gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
    Mat M(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) M(r, c) = gaussian_complex(rng);
    return M;
}

// Haar-distributed unitary: QR of a Ginibre matrix with phase-fixed R.
inline Mat random_haar_unitary(int n, std::mt19937_64& rng) {
    Mat G = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        cxd diag = R(i, i);
        Q.col(i) *= (std::abs(diag) > 0) ? diag / std::abs(diag) : cxd(1.0, 0.0);
    }
    return Q;
}

// Count of singular values above rel_tol times the largest.
inline int numeric_rank(const Eigen::VectorXd& singular_values, double rel_tol) {
    if (singular_values.size() == 0) return 0;
    const double cutoff = rel_tol * singular_values(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < singular_values.size(); ++i)
        if (singular_values(i) > cutoff) ++rank;
    return rank;
}

}  // namespace mmis
