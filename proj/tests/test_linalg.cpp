#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mmis/linalg.hpp"

using namespace mmis;

namespace {
Mat random_density(int dim, std::mt19937_64& rng) {
    Mat G = gaussian_matrix(dim, dim, rng);
    Mat rho = G * G.adjoint();
    return rho / rho.trace().real();
}
}  // namespace

TEST_CASE("kron dimensions and block values") {
    Mat A(2, 2), B(2, 2);
    A << 1, 2, 3, 4;
    B << 0, 1, 1, 0;
    Mat K = kron(A, B);
    REQUIRE(K.rows() == 4);
    CHECK(std::abs(K(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(K(2, 3) - 4.0) < 1e-15);
    CHECK(std::abs(K(3, 2) - 4.0) < 1e-15);
    CHECK(std::abs(K(2, 0)) < 1e-15);
}

TEST_CASE("partial trace factorizes product states and preserves trace") {
    std::mt19937_64 rng(3);
    Mat rhoA = random_density(2, rng), rhoB = random_density(4, rng);
    // two qubits + one ququart is not a homogeneous chain; test on qubits only
    Mat rho = kron(rhoA, random_density(2, rng));
    CHECK(max_abs(partial_trace(rho, {0}, 2, 2) - rhoA) < 1e-12);
    Mat big = random_density(8, rng);
    CHECK(std::abs(partial_trace(big, {0, 2}, 3, 2).trace().real() - 1.0) < 1e-12);
    (void)rhoB;
}

TEST_CASE("Bell state: reduced state is maximally mixed, PT negativity is log 2") {
    Vec bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    Mat rho = bell * bell.adjoint();
    CHECK(max_abs(partial_trace(rho, {0}, 2, 2) - 0.5 * Mat::Identity(2, 2)) < 1e-14);
    const Mat pt = partial_transpose(rho, {1}, 2, 2);
    CHECK(std::abs(trace_norm(pt) - 2.0) < 1e-12);
    CHECK(std::abs(pt.trace().real() - 1.0) < 1e-14);
    // PT of a PT is the original
    CHECK(max_abs(partial_transpose(pt, {1}, 2, 2) - rho) < 1e-14);
}

TEST_CASE("entropies") {
    std::vector<double> uniform(8, 1.0 / 8.0);
    CHECK(std::abs(von_neumann_entropy_from_eigs(uniform) - std::log(8.0)) < 1e-12);
    CHECK(std::abs(renyi_entropy_from_eigs(uniform, 2.0) - std::log(8.0)) < 1e-12);
    std::vector<double> skew{0.7, 0.2, 0.1};
    // S_alpha non-increasing in alpha
    double prev = renyi_entropy_from_eigs(skew, 0.5);
    for (double alpha : {0.9, 1.0, 1.5, 2.0, 3.0}) {
        const double s = renyi_entropy_from_eigs(skew, alpha);
        CHECK(s <= prev + 1e-12);
        prev = s;
    }
    CHECK(std::abs(von_neumann_entropy_from_eigs({1.0, 0.0, 0.0})) < 1e-14);
}

TEST_CASE("matrix square root of a PSD matrix round-trips") {
    std::mt19937_64 rng(5);
    Mat rho = random_density(6, rng);
    Mat sq = matrix_sqrt_psd(rho);
    CHECK(max_abs(sq * sq - rho) < 1e-12);
    CHECK(is_hermitian(sq));
}

TEST_CASE("uhlmann fidelity reference values") {
    Mat ket0 = Mat::Zero(2, 2), ket1 = Mat::Zero(2, 2);
    ket0(0, 0) = 1.0;
    ket1(1, 1) = 1.0;
    const Mat mixed = 0.5 * Mat::Identity(2, 2);
    CHECK(std::abs(uhlmann_fidelity(ket0, ket0) - 1.0) < 1e-12);
    CHECK(uhlmann_fidelity(ket0, ket1) < 1e-10);
    // non-squared convention: F(1/2, |0><0|) = 1/sqrt(2)
    CHECK(std::abs(uhlmann_fidelity(mixed, ket0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    std::mt19937_64 rng(9);
    Mat a = random_density(5, rng), b = random_density(5, rng);
    CHECK(std::abs(uhlmann_fidelity(a, b) - uhlmann_fidelity(b, a)) < 1e-10);
    CHECK(uhlmann_fidelity(a, b) <= 1.0 + 1e-12);
}

TEST_CASE("haar unitaries are unitary") {
    std::mt19937_64 rng(13);
    for (int n : {2, 3, 5}) {
        Mat U = random_haar_unitary(n, rng);
        CHECK(max_abs(U * U.adjoint() - Mat::Identity(n, n)) < 1e-12);
    }
}

TEST_CASE("numeric rank thresholding") {
    Eigen::VectorXd sv(4);
    sv << 1.0, 0.5, 1e-9, 1e-12;
    CHECK(numeric_rank(sv, 1e-8) == 2);
    CHECK(numeric_rank(sv, 1e-10) == 3);
}
