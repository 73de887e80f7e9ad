#include <cmath>

#include <doctest.h>

#include "ocorg/errors.hpp"
#include "ocorg/matrix.hpp"
#include "ocorg/simulator.hpp"

using namespace ocorg;

TEST_CASE("solve_linear identity and diagonal") {
    const Matrix I2 = Matrix::identity(2);
    const Matrix B{{3}, {4}};
    const Matrix X = solve_linear(I2, B);
    CHECK(X(0, 0) == doctest::Approx(3.0));
    CHECK(X(1, 0) == doctest::Approx(4.0));

    const Matrix D{{2, 0}, {0, 4}};
    const Matrix Dinv = solve_linear(D, I2);
    CHECK(Dinv(0, 0) == doctest::Approx(0.5));
    CHECK(Dinv(1, 1) == doctest::Approx(0.25));
    CHECK(Dinv(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("solve_linear recovers a planted solution on random 5x5 systems") {
    for (int trial = 0; trial < 20; ++trial) {
        Matrix A(5, 5);
        Matrix X0(5, 3);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j)
                A(i, j) = uniform_pm1(7, trial, i * 5 + j) + (i == j ? 5.0 : 0.0);
            for (std::size_t j = 0; j < 3; ++j)
                X0(i, j) = uniform_pm1(8, trial, i * 3 + j);
        }
        const Matrix X = solve_linear(A, A * X0);
        CHECK((X - X0).max_abs() < 1e-9);
    }
}

TEST_CASE("solve_linear rejects singular systems") {
    const Matrix S{{1, 2}, {2, 4}};
    CHECK_THROWS_AS(solve_linear(S, Matrix::identity(2)), SingularMatrix);
}

TEST_CASE("spectral_radius_below certificates") {
    CHECK(spectral_radius_below(0.5 * Matrix::identity(2), 0.9).certified);
    CHECK(spectral_radius_below(0.5 * Matrix::identity(2), 0.9).k == 1);
    // Nilpotent: ||A|| = 4 but A^2 = 0.
    CHECK(spectral_radius_below(Matrix{{0, 4}, {0, 0}}, 0.5).certified);
    CHECK_FALSE(spectral_radius_below(Matrix::identity(2), 0.99).certified);
}

TEST_CASE("matrix_power_norms sequences") {
    const auto d = matrix_power_norms(0.5 * Matrix::identity(2), 4);
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(0.5));
    CHECK(d[2] == doctest::Approx(0.25));

    const auto nil = matrix_power_norms(Matrix{{0, 1}, {0, 0}}, 4);
    CHECK(nil[0] == doctest::Approx(1.0));
    CHECK(nil[1] == doctest::Approx(1.0));
    CHECK(nil[2] == doctest::Approx(0.0).epsilon(1e-12));

    // Random stable matrix: norms eventually decay below 1e-6.
    Matrix A(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) A(i, j) = 0.4 * uniform_pm1(3, i, j);
    const auto seq = matrix_power_norms(A, 40);
    CHECK(seq.back() < 1e-6);
}

TEST_CASE("certified contraction implies decaying power norms") {
    Matrix A{{0.3, 0.2, 0.0}, {0.0, 0.4, 0.1}, {0.1, 0.0, 0.2}};
    const auto cert = spectral_radius_below(A, 0.8);
    REQUIRE(cert.certified);
    const auto seq = matrix_power_norms(A, 60);
    CHECK(seq.back() < 1e-6);
}

TEST_CASE("symmetric_eigenvalues on known matrices") {
    const Vector ev = symmetric_eigenvalues(Matrix{{2, 1}, {1, 2}});
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(3.0));
}

TEST_CASE("constructors reject non-finite entries") {
    CHECK_THROWS(Matrix(1, 1, {std::nan("")}));
}
