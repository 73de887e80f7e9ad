#include "ocorg/set_computation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ocorg/errors.hpp"

namespace ocorg {
namespace {

constexpr double kZeroRowTol = 1e-12;

bool row_redundant(const HPolytope& poly, const Vector& a, double b,
                   const NumericSettings& cfg) {
    if (poly.num_rows() == 0) return false;
    const LPResult res = lp_solve(a, poly.H(), poly.h(), /*want_optimizer=*/false, cfg);
    if (res.status == LPStatus::Unbounded) return false;
    if (res.status == LPStatus::Infeasible) return true;
    return res.value <= b + 1e-9;
}

}  // namespace

RPIApprox rpi_outer_approx(const Matrix& A_tilde, const Matrix& B_tilde, const SupportSet& W,
                           double alpha_max, const NumericSettings& cfg) {
    const auto cert = spectral_radius_below(A_tilde, 1.0, cfg.spectral_kmax, cfg);
    if (!cert.certified)
        throw Unstabilizable("rpi_outer_approx: contracted dynamics not certified stable");
    if (alpha_max <= 0.0 || alpha_max >= 1.0)
        throw DimensionMismatch("rpi_outer_approx: alpha_max must lie in (0,1)");

    // Base set B~ W as mapped boxes.
    SupportSet base;
    base.multiplier = W.multiplier;
    for (const auto& t : W.terms) base.terms.push_back({B_tilde * t.map, t.lo, t.hi});

    const auto dirs = base.face_directions();
    Matrix As = A_tilde;  // A~^s
    constexpr int kHorizonCap = 1000;
    for (int s = 1; s <= kHorizonCap; ++s) {
        double alpha = 0.0;
        for (const auto& c : dirs) {
            const double denom = base.support(c);
            if (denom <= 0.0)
                throw Infeasible("rpi_outer_approx: B~W lacks interior along a face direction");
            // support of A~^s B~ W along c equals support of B~W along (A~^s)' c
            const double num = base.support(As.transpose() * c);
            alpha = std::max(alpha, num / denom);
        }
        if (alpha <= alpha_max) {
            RPIApprox rpi;
            rpi.s = s;
            rpi.alpha = alpha;
            rpi.set.multiplier = W.multiplier / (1.0 - alpha);
            Matrix Ai = Matrix::identity(A_tilde.rows());
            for (int i = 0; i < s; ++i) {
                for (const auto& t : W.terms)
                    rpi.set.terms.push_back({Ai * (B_tilde * t.map), t.lo, t.hi});
                Ai = Ai * A_tilde;
            }
            return rpi;
        }
        As = As * A_tilde;
    }
    throw HorizonCap("rpi_outer_approx: no contraction horizon s <= 1000 (lambda too tight?)");
}

HPolytope tightened_reference_set(const ClosedLoop& cl, const HPolytope& Ybar,
                                  const SupportSet& W, const RPIApprox& rpi,
                                  const NumericSettings& cfg) {
    const Matrix G = cl.C * cl.S_K + cl.plant.D;  // p x m
    const Matrix Dwt = cl.plant.D_w.transpose();
    const Matrix Ct = cl.C.transpose();

    Matrix Hv(0, 0);
    Vector hv;
    std::vector<Vector> rows;
    for (std::size_t j = 0; j < Ybar.num_rows(); ++j) {
        const Vector a = Ybar.H().row(j);
        const Vector av = G.transpose() * a;
        const double offset =
            Ybar.h()[j] - W.support(Dwt * a) - rpi.support(Ct * a);
        if (norm2(av) < kZeroRowTol) {
            // Constraint does not involve v; it must hold vacuously.
            if (offset < 0.0)
                throw EmptyTightening(
                    "tightened_reference_set: disturbance exceeds the margin on a fixed row");
            continue;
        }
        if (offset <= 0.0)
            throw EmptyTightening("tightened_reference_set: no interior around 0 left");
        rows.push_back(av);
        hv.push_back(offset);
    }
    if (rows.empty()) throw EmptyTightening("tightened_reference_set: no v-constraints");
    Hv = Matrix(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) Hv(i, j) = rows[i][j];
    return HPolytope(std::move(Hv), std::move(hv));
}

MasResult compute_mas_lambda(const ClosedLoop& cl, const HPolytope& Y, const SupportSet& W,
                             double lambda, double eps_mas, int k_cap,
                             const NumericSettings& cfg) {
    if (!(lambda < 1.0) || lambda <= 0.0)
        throw DimensionMismatch("compute_mas_lambda: lambda must lie in (0,1)");
    if (eps_mas <= 0.0) throw DimensionMismatch("compute_mas_lambda: eps_mas must be > 0");
    const auto cert = spectral_radius_below(cl.A_K, lambda, cfg.spectral_kmax, cfg);
    if (!cert.certified)
        throw Unstabilizable("compute_mas_lambda: rho(A_K) < lambda not certified");

    const std::size_t m = cl.plant.m();
    const std::size_t n = cl.plant.n();
    const std::size_t q = Y.num_rows();
    const Matrix A_tilde = cl.A_K * (1.0 / lambda);
    const Matrix Bw_tilde = cl.plant.B_w * (1.0 / lambda);
    const Matrix G = cl.C * cl.S_K + cl.plant.D;  // p x m
    const Matrix Dwt = cl.plant.D_w.transpose();

    // Row-wise pieces: a_j' G on v, a_j' C A~^k on e, offsets h_j - theta_k.
    std::vector<Vector> gv(q);
    Vector theta0(q);
    for (std::size_t j = 0; j < q; ++j) {
        const Vector a = Y.H().row(j);
        gv[j] = G.transpose() * a;
        theta0[j] = W.support(Dwt * a);
    }

    // Converged tightening offsets theta_inf (geometric tail).
    Vector theta_inf = theta0;
    {
        Matrix P = cl.C;  // C A~^l
        for (int l = 0; l < 100000; ++l) {
            const Matrix M = P * Bw_tilde;
            double largest = 0.0;
            for (std::size_t j = 0; j < q; ++j) {
                const double s = W.support(M.transpose() * Y.H().row(j));
                theta_inf[j] += s;
                largest = std::max(largest, s);
            }
            if (largest < 1e-14) break;
            P = P * A_tilde;
        }
    }

    MasResult mas;
    mas.m = m;
    mas.n = n;
    mas.theta_inf = theta_inf;

    // Limit rows: a_j' G v <= (1 - eps_mas)(h_j - theta_inf_j). The shrink
    // factor is the Gilbert-Tan device forcing finite determination.
    HPolytope acc;
    for (std::size_t j = 0; j < q; ++j) {
        const double margin = Y.h()[j] - theta_inf[j];
        if (margin <= 0.0)
            throw EmptySet("compute_mas_lambda: disturbance tightening annihilates row " +
                           std::to_string(j));
        if (norm2(gv[j]) < kZeroRowTol) continue;
        acc.add_row(concat(gv[j], Vector(n, 0.0)), (1.0 - eps_mas) * margin);
    }

    Vector theta = theta0;
    Matrix P = cl.C;  // C A~^k
    int k = 0;
    for (; k <= k_cap; ++k) {
        mas.theta.push_back(theta);
        bool all_redundant = true;
        for (std::size_t j = 0; j < q; ++j) {
            const Vector ae = P.transpose() * Y.H().row(j);
            const Vector row = concat(gv[j], ae);
            const double b = Y.h()[j] - theta[j];
            if (norm2(row) < kZeroRowTol) continue;
            if (!row_redundant(acc, row, b, cfg)) {
                acc.add_row(row, b);
                all_redundant = false;
            }
        }
        if (all_redundant && k > 0) break;
        // Advance: theta_{k+1,j} = theta_{k,j} + eta_W((C A~^k B~_w)' a_j).
        const Matrix M = P * Bw_tilde;
        for (std::size_t j = 0; j < q; ++j)
            theta[j] += W.support(M.transpose() * Y.H().row(j));
        P = P * A_tilde;
    }
    if (k > k_cap)
        throw KCap("compute_mas_lambda: not finitely determined within k_cap = " +
                   std::to_string(k_cap));

    mas.k_star = k;
    mas.rows_raw = acc.num_rows();
    mas.polytope = remove_redundant_rows(acc, cfg);
    return mas;
}

bool mas_brute_force_check(const ClosedLoop& cl, const HPolytope& Y,
                           const std::vector<Vector>& W_vertices, double lambda,
                           const Vector& v, const Vector& e, int horizon) {
    const std::size_t q = Y.num_rows();
    const Matrix A_tilde = cl.A_K * (1.0 / lambda);
    const Matrix Bw_tilde = cl.plant.B_w * (1.0 / lambda);
    const Matrix G = cl.C * cl.S_K + cl.plant.D;
    const Matrix Dwt = cl.plant.D_w.transpose();

    Vector fixed(q);  // a_j' G v + worst-case direct feedthrough
    for (std::size_t j = 0; j < q; ++j) {
        const Vector a = Y.H().row(j);
        double dwmax = -std::numeric_limits<double>::infinity();
        const Vector da = Dwt * a;
        for (const auto& w : W_vertices) dwmax = std::max(dwmax, dot(da, w));
        fixed[j] = dot(G.transpose() * a, v) + (W_vertices.empty() ? 0.0 : dwmax);
    }

    Vector acc(q, 0.0);  // accumulated worst-case propagated disturbance
    Matrix P = cl.C;     // C A~^k
    for (int k = 0; k <= horizon; ++k) {
        for (std::size_t j = 0; j < q; ++j) {
            const Vector a = Y.H().row(j);
            const double val = dot(P.transpose() * a, e) + fixed[j] + acc[j];
            if (val > Y.h()[j] + 1e-9) return false;
        }
        const Matrix M = P * Bw_tilde;
        for (std::size_t j = 0; j < q; ++j) {
            const Vector ma = M.transpose() * Y.H().row(j);
            double worst = -std::numeric_limits<double>::infinity();
            for (const auto& w : W_vertices) worst = std::max(worst, dot(ma, w));
            if (!W_vertices.empty()) acc[j] += worst;
        }
        P = P * A_tilde;
    }
    return true;
}

}  // namespace ocorg
