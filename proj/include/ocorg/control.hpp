#pragma once

#include "ocorg/matrix.hpp"

namespace ocorg {

/// x_{t+1} = A x + B u + B_w w,  y = C_o x + D u + D_w w.
struct PlantModel {
    Matrix A;    // n x n
    Matrix B;    // n x m
    Matrix B_w;  // n x o
    Matrix C_o;  // p x n
    Matrix D;    // p x m
    Matrix D_w;  // p x o

    std::size_t n() const { return A.rows(); }
    std::size_t m() const { return B.cols(); }
    std::size_t o() const { return B_w.cols(); }
    std::size_t p() const { return C_o.rows(); }

    void validate() const;  // throws DimensionMismatch on inconsistency
};

/// Plant stabilized by u = v + K x, with the derived quantities used everywhere:
/// A_K = A + BK, C = C_o + DK, S_K = (I - A_K)^{-1} B.
struct ClosedLoop {
    PlantModel plant;
    Matrix K;    // m x n, already negated so that u = v + Kx stabilizes
    Matrix A_K;  // n x n
    Matrix C;    // p x n
    Matrix S_K;  // n x m
    SpectralCertificate stability;
};

/// Builds the closed loop and certifies rho(A_K) < 1.
/// Throws Unstabilizable when no power certificate is found.
ClosedLoop make_closed_loop(const PlantModel& plant, const Matrix& K,
                            const NumericSettings& cfg = default_settings());

struct DareResult {
    Matrix P;  // Riccati fixed point
    Matrix K;  // gain with A + BK Schur stable (minus sign included)
    int iterations = 0;
};

/// Discrete algebraic Riccati equation by fixed-point iteration,
/// P <- Q + A'PA - A'PB (R + B'PB)^{-1} B'PA, converged in max-norm.
DareResult dare_lqr(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R,
                    const NumericSettings& cfg = default_settings());

/// S_K = (I - A_K)^{-1} B; S_K v is the fixed point of x -> A_K x + B v.
Matrix steady_state_map(const Matrix& A_K, const Matrix& B,
                        const NumericSettings& cfg = default_settings());

}  // namespace ocorg
