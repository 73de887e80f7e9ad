#include "ocorg/control.hpp"

#include <string>

#include "ocorg/errors.hpp"

namespace ocorg {

void PlantModel::validate() const {
    if (A.rows() != A.cols()) throw DimensionMismatch("PlantModel: A not square");
    if (B.rows() != n()) throw DimensionMismatch("PlantModel: B row mismatch");
    if (B_w.rows() != n()) throw DimensionMismatch("PlantModel: B_w row mismatch");
    if (C_o.cols() != n()) throw DimensionMismatch("PlantModel: C_o col mismatch");
    if (D.rows() != p() || D.cols() != m()) throw DimensionMismatch("PlantModel: D shape");
    if (D_w.rows() != p() || D_w.cols() != o()) throw DimensionMismatch("PlantModel: D_w shape");
}

ClosedLoop make_closed_loop(const PlantModel& plant, const Matrix& K,
                            const NumericSettings& cfg) {
    plant.validate();
    if (K.rows() != plant.m() || K.cols() != plant.n())
        throw DimensionMismatch("make_closed_loop: K shape");
    ClosedLoop cl;
    cl.plant = plant;
    cl.K = K;
    cl.A_K = plant.A + plant.B * K;
    cl.C = plant.C_o + plant.D * K;
    cl.stability = spectral_radius_below(cl.A_K, 1.0, cfg.spectral_kmax, cfg);
    if (!cl.stability.certified)
        throw Unstabilizable("make_closed_loop: could not certify rho(A+BK) < 1");
    cl.S_K = steady_state_map(cl.A_K, plant.B, cfg);
    return cl;
}

DareResult dare_lqr(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R,
                    const NumericSettings& cfg) {
    if (A.rows() != A.cols()) throw DimensionMismatch("dare_lqr: A not square");
    if (B.rows() != A.rows()) throw DimensionMismatch("dare_lqr: B row mismatch");
    DareResult res;
    Matrix P = Q;
    const Matrix At = A.transpose();
    const Matrix Bt = B.transpose();
    int it = 0;
    for (; it < cfg.riccati_cap; ++it) {
        const Matrix PB = P * B;
        const Matrix PA = P * A;
        const Matrix G = R + Bt * PB;               // R + B'PB
        const Matrix X = solve_linear(G, Bt * PA);  // (R+B'PB)^{-1} B'PA
        const Matrix Pn = Q + At * PA - (At * PB) * X;
        if ((Pn - P).max_abs() < cfg.riccati_tol) {
            P = Pn;
            break;
        }
        P = Pn;
    }
    if (it >= cfg.riccati_cap)
        throw NoConvergence("dare_lqr: iteration cap " + std::to_string(cfg.riccati_cap) +
                            " reached");
    res.P = P;
    res.iterations = it + 1;
    const Matrix G = R + Bt * P * B;
    res.K = -solve_linear(G, Bt * P * A);
    const auto cert = spectral_radius_below(A + B * res.K, 1.0, cfg.spectral_kmax, cfg);
    if (!cert.certified) throw Unstabilizable("dare_lqr: A+BK not certified Schur stable");
    return res;
}

Matrix steady_state_map(const Matrix& A_K, const Matrix& B, const NumericSettings& cfg) {
    return solve_linear(Matrix::identity(A_K.rows()) - A_K, B, cfg);
}

}  // namespace ocorg
