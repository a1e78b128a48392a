#pragma once
//
// Closed-form dimension counting for the permutationally symmetric subspace
// S and the translationally symmetric (zero-momentum) subspace T:
//
//     dim S = C(L+d-1, d-1)            (multisets of L symbols from d)
//     dim T = (1/L) Σ_{i=0}^{L-1} d^gcd(i,L)   with gcd(0,L) = L
//
// dim T equals the necklace count of length-L strings over d colors. All
// arithmetic is exact in 128-bit integers with an overflow guard; floating
// point enters only through the explicit projector rank check.
//

#include <cstdint>
#include <numeric>
#include <vector>

#include "mmis/linalg.hpp"
#include "mmis/ring.hpp"

namespace mmis {

namespace detail {
inline constexpr __int128 kDimGuard = (static_cast<__int128>(1) << 62);

inline std::int64_t to_i64(__int128 v, const char* what) {
    if (v > kDimGuard) throw guard_error(std::string(what) + ": exceeds 2^62 overflow guard");
    return static_cast<std::int64_t>(v);
}
}  // namespace detail

// Exact binomial via multiply-then-divide (each prefix is divisible).
inline std::int64_t binomial_exact(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
        if (result > detail::kDimGuard) throw guard_error("binomial_exact: exceeds 2^62 overflow guard");
    }
    return static_cast<std::int64_t>(result);
}

inline std::int64_t dim_permutation_subspace(int L, int d) {
    if (L < 1 || d < 2) throw std::invalid_argument("dim_permutation_subspace: need L >= 1, d >= 2");
    return binomial_exact(L + d - 1, d - 1);
}

inline std::int64_t dim_translation_subspace(int L, int d) {
    if (L < 1 || d < 2) throw std::invalid_argument("dim_translation_subspace: need L >= 1, d >= 2");
    __int128 sum = 0;
    for (int i = 0; i < L; ++i) {
        const int g = (i == 0) ? L : std::gcd(i, L);
        __int128 p = 1;
        for (int j = 0; j < g; ++j) {
            p *= d;
            if (p > detail::kDimGuard) throw guard_error("dim_translation_subspace: d^gcd exceeds 2^62 guard");
        }
        sum += p;
        if (sum > 4 * detail::kDimGuard) throw guard_error("dim_translation_subspace: sum exceeds guard");
    }
    if (sum % L != 0) throw std::logic_error("dim_translation_subspace: Burnside sum not divisible by L");
    return detail::to_i64(sum / L, "dim_translation_subspace");
}

struct DimReport {
    int L = 0;
    int d = 0;
    std::int64_t dim_S = 0;
    std::int64_t dim_T = 0;
    bool equal = false;
    bool entanglement_certified = false;  // dim_S < dim_T
};

// Sweep L = 1..L_max. equal holds exactly for (d=2, L<=3) and (any d, L<=2);
// entanglement_certified flips on at L=4 (d=2) resp. L=3 (d>=3).
inline std::vector<DimReport> threshold_report(int d, int L_max) {
    std::vector<DimReport> out;
    for (int L = 1; L <= L_max; ++L) {
        DimReport r;
        r.L = L;
        r.d = d;
        r.dim_S = dim_permutation_subspace(L, d);
        r.dim_T = dim_translation_subspace(L, d);
        r.equal = (r.dim_S == r.dim_T);
        r.entanglement_certified = (r.dim_S < r.dim_T);
        out.push_back(r);
    }
    return out;
}

}  // namespace mmis
