#include <doctest.h>

#include <cmath>

#include "csgd/linalg.hpp"
#include "csgd/rng.hpp"

using namespace csgd;

namespace {

Matrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
    SplitMix64 g(seed);
    Matrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = g.complex_gaussian();
    return A;
}

Vector random_vector(std::size_t n, std::uint64_t seed) {
    SplitMix64 g(seed);
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g.complex_gaussian();
    return v;
}

Matrix random_hermitian(std::size_t n, std::uint64_t seed) {
    Matrix B = random_matrix(n, n, seed);
    Matrix H(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            H(i, j) = 0.5 * (B(i, j) + std::conj(B(j, i)));
    for (std::size_t i = 0; i < n; ++i) H(i, i) = H(i, i).real();
    return H;
}

} // namespace

TEST_CASE("inner product values") {
    const Complex i(0, 1);
    CHECK(inner(Vector{1.0, i}, Vector{1.0, i}) == Complex(2.0));
    CHECK(inner(Vector{1.0, 0.0}, Vector{0.0, 1.0}) == Complex(0.0));
    // (1+i) conj(i) + 2 conj(1) = (1+i)(-i) + 2 = 3 - i
    CHECK(inner(Vector{1.0 + i, 2.0}, Vector{i, 1.0}) == Complex(3.0, -1.0));
    CHECK_THROWS_AS(inner(Vector{1.0}, Vector{1.0, 2.0}), DimensionError);
}

TEST_CASE("inner product conjugate symmetry is exact") {
    for (std::uint64_t t = 0; t < 100; ++t) {
        const std::size_t n = 1 + t % 7;
        const Vector z = random_vector(n, mix_seed(1, 2 * t));
        const Vector w = random_vector(n, mix_seed(1, 2 * t + 1));
        CHECK(inner(z, w) == std::conj(inner(w, z)));
        CHECK(inner_real(z, z) >= 0.0);
        CHECK(inner_real(z, z) == doctest::Approx(z.norm() * z.norm()).epsilon(1e-14));
    }
}

TEST_CASE("vector and matrix invariants") {
    CHECK_THROWS_AS(Vector(std::vector<Complex>{}), DimensionError);
    CHECK_THROWS_AS((Vector{Complex(std::nan("")), 1.0}), ContractViolation);
    CHECK_THROWS_AS(Matrix(0, 3), DimensionError);
    CHECK_THROWS_AS(
        (Matrix(1, 2, {Complex(1.0), Complex(std::numeric_limits<double>::infinity())})),
        ContractViolation);
}

TEST_CASE("hermitian_eig diagonal and 2x2 values") {
    Matrix D(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = 2.0;
    const EigResult e1 = hermitian_eig(D);
    CHECK(e1.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(e1.eigenvalues[1] == doctest::Approx(2.0));

    // [[2, i], [-i, 2]] has characteristic polynomial (2-x)^2 - 1.
    Matrix H(2, 2);
    H(0, 0) = 2.0;
    H(0, 1) = Complex(0, 1);
    H(1, 0) = Complex(0, -1);
    H(1, 1) = 2.0;
    const EigResult e2 = hermitian_eig(H);
    CHECK(e2.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e2.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig reconstructs random matrices") {
    for (std::uint64_t t = 0; t < 10; ++t) {
        const Matrix H = random_hermitian(5, mix_seed(2, t));
        const EigResult e = hermitian_eig(H);
        for (std::size_t k = 1; k < 5; ++k)
            CHECK(e.eigenvalues[k] >= e.eigenvalues[k - 1]);
        double recon = 0.0, unit = 0.0;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                Complex s = 0.0, u = 0.0;
                for (std::size_t k = 0; k < 5; ++k) {
                    s += e.eigenvectors(i, k) * e.eigenvalues[k] *
                         std::conj(e.eigenvectors(j, k));
                    u += std::conj(e.eigenvectors(k, i)) * e.eigenvectors(k, j);
                }
                recon += std::norm(s - H(i, j));
                unit += std::norm(u - (i == j ? 1.0 : 0.0));
            }
        CHECK(std::sqrt(recon) <= 1e-10 * H.frobenius_norm());
        CHECK(std::sqrt(unit) <= 1e-10);
    }
}

TEST_CASE("hermitian_eig rejects non-hermitian input") {
    Matrix M(2, 2);
    M(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(M), ContractViolation);
}

TEST_CASE("svd on simple matrices") {
    Matrix D(2, 2);
    D(0, 0) = 3.0;
    D(1, 1) = 1.0;
    const SVDResult r = svd(D);
    CHECK(r.singular_values[0] == doctest::Approx(3.0));
    CHECK(r.singular_values[1] == doctest::Approx(1.0));
    CHECK(std::abs(r.right_vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.right_vectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix N(2, 2);
    N(0, 1) = 2.0;
    const SVDResult rn = svd(N);
    CHECK(rn.singular_values[0] == doctest::Approx(2.0));
    CHECK(rn.singular_values[1] == doctest::Approx(0.0));
}

TEST_CASE("svd reconstruction and spectral consistency") {
    const std::pair<std::size_t, std::size_t> shapes[] = {{6, 3}, {12, 8}, {4, 7}};
    for (const auto& [m, n] : shapes) {
        const Matrix A = random_matrix(m, n, mix_seed(3, m * 100 + n));
        const SVDResult r = svd(A);
        const std::size_t rank = r.singular_values.size();
        CHECK(rank == std::min(m, n));
        double recon = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Complex s = 0.0;
                for (std::size_t k = 0; k < rank; ++k)
                    s += r.left_vectors(i, k) * r.singular_values[k] *
                         std::conj(r.right_vectors(j, k));
                recon += std::norm(s - A(i, j));
            }
        CHECK(std::sqrt(recon) <= 1e-10 * A.frobenius_norm());
        for (std::size_t k = 1; k < rank; ++k)
            CHECK(r.singular_values[k] <= r.singular_values[k - 1]);

        // sigma_k^2 match the eigenvalues of A*A
        const EigResult e = hermitian_eig(gram_of(A));
        for (std::size_t k = 0; k < rank; ++k) {
            const double lam = e.eigenvalues[e.eigenvalues.size() - 1 - k];
            CHECK(r.singular_values[k] * r.singular_values[k] ==
                  doctest::Approx(lam).epsilon(1e-8));
        }
    }
}

TEST_CASE("solve_hpd simple and random systems") {
    const Vector y{Complex(1.0, 2.0), Complex(-0.5, 0.25)};
    const Vector x1 = solve_hpd(Matrix::identity(2), y);
    CHECK(std::abs(x1[0] - y[0]) <= 1e-15);
    CHECK(std::abs(x1[1] - y[1]) <= 1e-15);

    const Matrix two(1, 1, {Complex(2.0)});
    CHECK(solve_hpd(two, Vector{3.0})[0].real() == doctest::Approx(1.5));

    for (std::uint64_t t = 0; t < 5; ++t) {
        const Matrix B = random_matrix(10, 8, mix_seed(4, t));
        const Matrix H = gram_of(B); // HPD with overwhelming probability
        const Vector y8 = random_vector(8, mix_seed(5, t));
        const Vector x = solve_hpd(H, y8);
        CHECK(sub(matvec(H, x), y8).norm() <= 1e-10 * y8.norm());
    }
}

TEST_CASE("solve_hpd at condition number 1e6") {
    // H = V diag(1e-3 .. 1e3) V* from a random unitary basis.
    const EigResult basis = hermitian_eig(random_hermitian(8, 77));
    Matrix H(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < 8; ++k) {
                const double lam = std::pow(10.0, -3.0 + 6.0 * k / 7.0);
                s += basis.eigenvectors(i, k) * lam * std::conj(basis.eigenvectors(j, k));
            }
            H(i, j) = s;
        }
    for (std::size_t i = 0; i < 8; ++i) H(i, i) = H(i, i).real();
    const Vector y = random_vector(8, 78);
    const Vector x = solve_hpd(H, y);
    CHECK(sub(matvec(H, x), y).norm() <= 1e-10 * y.norm());
}

TEST_CASE("solve_hpd reports indefinite matrices") {
    Matrix H(2, 2);
    H(0, 0) = 1.0;
    H(1, 1) = -2.0;
    try {
        solve_hpd(H, Vector{1.0, 1.0});
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.min_eigenvalue() == doctest::Approx(-2.0).epsilon(1e-10));
    }
    Matrix M(2, 2);
    M(0, 1) = 1.0; // not hermitian
    CHECK_THROWS_AS(solve_hpd(M, Vector{1.0, 1.0}), ContractViolation);
}
