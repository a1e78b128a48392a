#pragma once
//
// Strong-to-weak SSB diagnostics for ρ_T on a qubit ring (prime L primary).
//
// Momentum-resolved charged operator  O_q = (1/L) Σ_x e^{iqx} Z_x  with
// q = 2πn/L (charge relation T†O_q T = e^{iq} O_q), and three correlators:
//
//   renyi2_local      Tr[ρZ_iZ_jρZ_iZ_j]/Trρ² − (Tr[ρZ_iρZ_i]/Trρ²)(i↔j)
//   renyi2_momentum   Tr[ρ O_qO_{-q} ρ O_qO_{-q}]/Trρ²
//   variance-normalized  R̃_q = Tr[ρOρO]/√(Trρ² · Tr[(OρO)²]),  O = O_qO_{-q}
//
// Every correlator is evaluated through two independent routes: the trace
// form over the sparse projector P_T and the doubled-state inner product
// ⟨⟨ρ|·|ρ⟩⟩ over the sparse Bell-pattern amplitudes. Since ρ_T is a
// projector, the Rényi-2 forms coincide with the Rényi-1 correlators, so
// only the Rényi-2 forms are implemented.
//

#include <optional>
#include <vector>

#include "mmis/dims.hpp"
#include "mmis/doubled.hpp"
#include "mmis/linalg.hpp"
#include "mmis/mmis_state.hpp"
#include "mmis/ring.hpp"

namespace mmis {

// Diagonal of O_q in the computational basis; x = 0..L-1 labels sites.
inline Vec momentum_diagonal(const RingSpec& spec, int momentum_index) {
    const std::int64_t dim = spec.dim();
    const double q = 2.0 * kPi * momentum_index / spec.L;
    const cxd omega = std::polar(1.0, 2.0 * kPi / spec.d);
    Vec diag = Vec::Zero(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        const auto digits = decode_index(idx, spec.L, spec.d);
        cxd val = 0.0;
        for (int x = 0; x < spec.L; ++x) val += std::polar(1.0, q * x) * std::pow(omega, digits[x]);
        diag(idx) = val / static_cast<double>(spec.L);
    }
    return diag;
}

struct MomentumOperator {
    int momentum_index = 0;  // q = 2π·index/L
    double q = 0.0;
    Mat matrix;
};

inline MomentumOperator momentum_operator(const RingSpec& spec, int momentum_index) {
    require_dense(spec, "momentum_operator");
    MomentumOperator op;
    op.momentum_index = ((momentum_index % spec.L) + spec.L) % spec.L;
    op.q = 2.0 * kPi * op.momentum_index / spec.L;
    op.matrix = momentum_diagonal(spec, momentum_index).asDiagonal();
    return op;
}

struct SwssbValue {
    double trace_path = 0.0;
    double doubled_path = 0.0;
    bool denominator_underflow = false;
    bool closed_form_available = true;  // false for non-prime L (brute force only)
};

namespace detail {

// Tr[P D1 P D2] for diagonal operators over the sparse symmetric projector:
// Σ_{rc} P_rc² · D1(r) · D2(c).
inline double projector_diag_trace(const Eigen::SparseMatrix<double>& P, const Eigen::VectorXd& d1,
                                   const Eigen::VectorXd& d2) {
    double sum = 0.0;
    for (int col = 0; col < P.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(P, col); it; ++it)
            sum += it.value() * it.value() * d1(it.row()) * d2(col);
    return sum;
}

// ⟨⟨ρ| D_ket ⊗ conj(D_bra) |ρ⟩⟩ over the sparse doubled amplitudes.
inline double doubled_diag_expectation(const std::unordered_map<std::int64_t, double>& amps, std::int64_t dim,
                                       const Eigen::VectorXd& dket, const Eigen::VectorXd& dbra) {
    double sum = 0.0;
    for (const auto& [idx, a] : amps) sum += a * a * dket(idx / dim) * dbra(idx % dim);
    return sum;
}

}  // namespace detail

// Connected Rényi-2 correlator of Z_i, Z_j (1-based sites, i ≠ j, d = 2).
inline SwssbValue renyi2_local(const RingSpec& spec, int i, int j) {
    if (spec.d != 2) throw std::invalid_argument("renyi2_local: qubit rings only");
    if (i == j) throw std::invalid_argument("renyi2_local: need i != j");
    if (i < 1 || i > spec.L || j < 1 || j > spec.L) throw std::invalid_argument("renyi2_local: site out of range");
    const std::int64_t dim = spec.dim();
    Eigen::VectorXd zi(dim), zj(dim), zij(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        const auto digits = decode_index(idx, spec.L, spec.d);
        zi(idx) = digits[i - 1] ? -1.0 : 1.0;
        zj(idx) = digits[j - 1] ? -1.0 : 1.0;
        zij(idx) = zi(idx) * zj(idx);
    }
    const double dimT = static_cast<double>(dim_translation_subspace(spec.L, spec.d));

    SwssbValue out;
    out.closed_form_available = is_prime(spec.L);
    {
        const auto P = build_PT_sparse(spec);
        const double s2 = detail::projector_diag_trace(P, zij, zij) / dimT;
        const double si = detail::projector_diag_trace(P, zi, zi) / dimT;
        const double sj = detail::projector_diag_trace(P, zj, zj) / dimT;
        out.trace_path = s2 - si * sj;
    }
    {
        const auto amps = doubled_state_sparse(spec);
        const double s2 = detail::doubled_diag_expectation(amps, dim, zij, zij);
        const double si = detail::doubled_diag_expectation(amps, dim, zi, zi);
        const double sj = detail::doubled_diag_expectation(amps, dim, zj, zj);
        out.doubled_path = s2 - si * sj;
    }
    return out;
}

inline double renyi2_local_predicted(const RingSpec& spec) {
    return 1.0 / spec.L - 1.0 / (static_cast<double>(spec.L) * spec.L);
}

// Momentum Rényi-2 correlator for q = 2π·n/L, n ≠ 0 (d = 2).
inline SwssbValue renyi2_momentum(const RingSpec& spec, int momentum_index) {
    if (spec.d != 2) throw std::invalid_argument("renyi2_momentum: qubit rings only");
    if (momentum_index % spec.L == 0) throw std::invalid_argument("renyi2_momentum: q = 0 is uncharged");
    const std::int64_t dim = spec.dim();
    const Vec o = momentum_diagonal(spec, momentum_index);
    Eigen::VectorXd v(dim);  // (O_q O_{-q})(σ) = |o(σ)|²
    for (std::int64_t idx = 0; idx < dim; ++idx) v(idx) = std::norm(o(idx));
    const double dimT = static_cast<double>(dim_translation_subspace(spec.L, spec.d));

    SwssbValue out;
    out.closed_form_available = is_prime(spec.L);
    out.trace_path = detail::projector_diag_trace(build_PT_sparse(spec), v, v) / dimT;
    out.doubled_path = detail::doubled_diag_expectation(doubled_state_sparse(spec), dim, v, v);
    return out;
}

inline double renyi2_momentum_predicted(const RingSpec& spec, int momentum_index) {
    const bool at_pi = (2 * momentum_index) % spec.L == 0;
    return (2.0 + (at_pi ? 1.0 : 0.0)) / (static_cast<double>(spec.L) * spec.L);
}

// Variance-normalized Rényi-2 correlator R̃_q for ρ_T.
inline SwssbValue variance_normalized_renyi2(const RingSpec& spec, int momentum_index) {
    if (spec.d != 2) throw std::invalid_argument("variance_normalized_renyi2: qubit rings only");
    if (momentum_index % spec.L == 0) throw std::invalid_argument("variance_normalized_renyi2: q = 0 is uncharged");
    const std::int64_t dim = spec.dim();
    const Vec o = momentum_diagonal(spec, momentum_index);
    Eigen::VectorXd v(dim), v2(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        v(idx) = std::norm(o(idx));
        v2(idx) = v(idx) * v(idx);
    }
    const double dimT = static_cast<double>(dim_translation_subspace(spec.L, spec.d));

    // scale for the underflow flag: den2 is O(vmax^4) unless O_q annihilates
    // the state's support
    const double vmax = v.maxCoeff();
    const double floor2 = 1e-24 * vmax * vmax * vmax * vmax;

    SwssbValue out;
    out.closed_form_available = is_prime(spec.L);
    {
        const auto P = build_PT_sparse(spec);
        const double num = detail::projector_diag_trace(P, v, v);
        const double den2 = dimT * detail::projector_diag_trace(P, v2, v2);
        out.denominator_underflow = den2 < floor2;
        out.trace_path = out.denominator_underflow ? 0.0 : num / std::sqrt(den2);
    }
    {
        const auto amps = doubled_state_sparse(spec);
        const double num = detail::doubled_diag_expectation(amps, dim, v, v);
        const double den2 = detail::doubled_diag_expectation(amps, dim, v2, v2);
        out.doubled_path = (den2 < floor2) ? 0.0 : num / std::sqrt(den2);
    }
    return out;
}

// Same correlator for an arbitrary dense state; used for the product-state
// contrast, where the denominator underflows (O_q annihilates |0...0⟩).
inline SwssbValue variance_normalized_renyi2_dense(const Mat& rho, const RingSpec& spec, int momentum_index) {
    require_dense(spec, "variance_normalized_renyi2_dense");
    const std::int64_t dim = spec.dim();
    const Vec o = momentum_diagonal(spec, momentum_index);
    Eigen::VectorXd v(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) v(idx) = std::norm(o(idx));
    const Mat ov = v.asDiagonal();
    const Mat orho = ov * rho * ov;
    const double num = (rho * ov * rho * ov).trace().real();
    const double den2 = (rho * rho).trace().real() * (orho * orho).trace().real();
    const double vmax = v.maxCoeff();
    SwssbValue out;
    out.denominator_underflow = den2 < 1e-24 * vmax * vmax * vmax * vmax;
    out.trace_path = out.denominator_underflow ? 0.0 : num / std::sqrt(den2);
    out.doubled_path = out.trace_path;
    return out;
}

}  // namespace mmis
