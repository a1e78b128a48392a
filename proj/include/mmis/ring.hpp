#pragma once
//
// Lattice core for a 1D ring of L qudits with on-site dimension d.
//
// Computational basis strings |σ_1 σ_2 ... σ_L⟩ are ranked lexicographically
// with site 1 as the most significant digit:
//     index = Σ_i σ_i · d^(L-1-i).
// The translation T acts as T|σ_1, ..., σ_L⟩ = |σ_L, σ_1, ..., σ_{L-1}⟩,
// i.e. site contents move one step to the right around the ring. On ranks
// this is the O(1) update  idx ↦ (idx mod d)·d^(L-1) + idx div d.
//
// Also provides the orbit (necklace) decomposition under cyclic shifts and
// the generalized Pauli operators X|q⟩ = |q+1 mod d⟩, Z|q⟩ = ω^q |q⟩ with
// ω = exp(2πi/d).
//

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mmis {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Thrown when a request exceeds a documented desk-scale dimension guard.
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

struct RingSpec {
    int L;  // site count, >= 1
    int d;  // on-site dimension, >= 2

    RingSpec(int L_, int d_) : L(L_), d(d_) {
        if (L < 1) throw std::invalid_argument("RingSpec: L must be >= 1");
        if (d < 2) throw std::invalid_argument("RingSpec: d must be >= 2");
        // Hilbert dimension must stay addressable (guard d^L <= 2^31).
        std::int64_t dim = 1;
        for (int i = 0; i < L; ++i) {
            dim *= d;
            if (dim > (std::int64_t{1} << 31))
                throw guard_error("RingSpec: d^L exceeds the 2^31 index guard");
        }
        dim_ = dim;
    }

    std::int64_t dim() const { return dim_; }

  private:
    std::int64_t dim_ = 0;
};

struct BasisString {
    std::vector<int> digits;  // σ_1 ... σ_L, each in [0, d)
    std::int64_t index = 0;   // lexicographic rank, site 1 most significant
};

inline std::int64_t encode_digits(const std::vector<int>& digits, int d) {
    std::int64_t idx = 0;
    for (int v : digits) idx = idx * d + v;
    return idx;
}

inline std::vector<int> decode_index(std::int64_t index, int L, int d) {
    std::vector<int> digits(L);
    for (int i = L - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(index % d);
        index /= d;
    }
    return digits;
}

inline BasisString make_basis_string(std::int64_t index, const RingSpec& spec) {
    return BasisString{decode_index(index, spec.L, spec.d), index};
}

inline BasisString make_basis_string(const std::vector<int>& digits, const RingSpec& spec) {
    if (static_cast<int>(digits.size()) != spec.L)
        throw std::invalid_argument("make_basis_string: digit count != L");
    for (int v : digits)
        if (v < 0 || v >= spec.d) throw std::invalid_argument("make_basis_string: digit out of range");
    return BasisString{digits, encode_digits(digits, spec.d)};
}

// One application of T on a rank: promotes the least significant digit.
inline std::int64_t translate_index_once(std::int64_t index, std::int64_t dim, int d) {
    return (index % d) * (dim / d) + index / d;
}

inline std::int64_t translate_index(std::int64_t index, int n, const RingSpec& spec) {
    const std::int64_t dim = spec.dim();
    int shift = ((n % spec.L) + spec.L) % spec.L;
    for (int i = 0; i < shift; ++i) index = translate_index_once(index, dim, spec.d);
    return index;
}

inline BasisString translate(const BasisString& s, int n, const RingSpec& spec) {
    return make_basis_string(translate_index(s.index, n, spec), spec);
}

// Smallest p >= 1 with T^p s = s; always divides L.
inline int orbit_period(std::int64_t index, const RingSpec& spec) {
    const std::int64_t dim = spec.dim();
    std::int64_t cur = index;
    for (int p = 1; p <= spec.L; ++p) {
        cur = translate_index_once(cur, dim, spec.d);
        if (cur == index) return p;
    }
    throw std::logic_error("orbit_period: shift by L did not return to start");
}

struct OrbitTable {
    RingSpec spec;
    std::vector<std::int64_t> representatives;  // lexicographically minimal per orbit
    std::vector<int> periods;                   // orbit size = minimal period p | L

    std::int64_t orbit_count() const { return static_cast<std::int64_t>(representatives.size()); }
};

// Necklace decomposition of all d^L strings under cyclic shifts.
inline OrbitTable orbit_decomposition(const RingSpec& spec) {
    OrbitTable table{spec, {}, {}};
    const std::int64_t dim = spec.dim();
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        std::int64_t cur = idx;
        bool minimal = true;
        int period = spec.L;
        for (int p = 1; p <= spec.L; ++p) {
            cur = translate_index_once(cur, dim, spec.d);
            if (cur < idx) {
                minimal = false;
                break;
            }
            if (cur == idx) {
                period = p;
                break;
            }
        }
        if (minimal) {
            table.representatives.push_back(idx);
            table.periods.push_back(period);
        }
    }
    return table;
}

// Number of strings fixed by T^n (equals d^gcd(n,L); tested by enumeration).
inline std::int64_t count_fixed_strings(int n, const RingSpec& spec) {
    const std::int64_t dim = spec.dim();
    std::int64_t count = 0;
    for (std::int64_t idx = 0; idx < dim; ++idx)
        if (translate_index(idx, n, spec) == idx) ++count;
    return count;
}

// Generalized clock and shift matrices. X|q⟩ = |q+1 mod d⟩, Z|q⟩ = ω^q|q⟩.
// They obey Z X = ω X Z with ω = exp(2πi/d).
inline std::pair<Mat, Mat> clock_shift_matrices(int d) {
    if (d < 2) throw std::invalid_argument("clock_shift_matrices: d must be >= 2");
    Mat X = Mat::Zero(d, d);
    Mat Z = Mat::Zero(d, d);
    for (int q = 0; q < d; ++q) {
        X((q + 1) % d, q) = 1.0;
        Z(q, q) = std::polar(1.0, 2.0 * kPi * q / d);
    }
    return {X, Z};
}

struct PauliString {
    std::vector<int> a;  // shift exponents per site, in [0, d)
    std::vector<int> b;  // clock exponents per site, in [0, d)

    bool is_identity() const {
        auto zero = [](const std::vector<int>& v) {
            return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
        };
        return zero(a) && zero(b);
    }
};

inline Mat matrix_power(const Mat& M, int n) {
    Mat result = Mat::Identity(M.rows(), M.cols());
    for (int i = 0; i < n; ++i) result = result * M;
    return result;
}

// Dense O_{a,b} = ⊗_i X^{a_i} Z^{b_i}, site 1 as the leading tensor factor.
inline Mat pauli_string_matrix(const PauliString& ps, const RingSpec& spec) {
    if (static_cast<int>(ps.a.size()) != spec.L || static_cast<int>(ps.b.size()) != spec.L)
        throw std::invalid_argument("pauli_string_matrix: exponent length != L");
    if (spec.dim() > 4096) throw guard_error("pauli_string_matrix: dense guard d^L <= 4096");
    auto [X, Z] = clock_shift_matrices(spec.d);
    std::vector<Mat> xpow(spec.d), zpow(spec.d);
    for (int p = 0; p < spec.d; ++p) {
        xpow[p] = matrix_power(X, p);
        zpow[p] = matrix_power(Z, p);
    }
    Mat op = Mat::Identity(1, 1);
    for (int i = 0; i < spec.L; ++i) {
        const Mat site = xpow[ps.a[i]] * zpow[ps.b[i]];
        Mat next(op.rows() * spec.d, op.cols() * spec.d);
        for (Eigen::Index r = 0; r < op.rows(); ++r)
            for (Eigen::Index c = 0; c < op.cols(); ++c) next.block(r * spec.d, c * spec.d, spec.d, spec.d) = op(r, c) * site;
        op.swap(next);
    }
    return op;
}

}  // namespace mmis
