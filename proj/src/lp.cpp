#include "ocorg/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ocorg/errors.hpp"

namespace ocorg {
namespace {

enum class StdStatus { Optimal, Infeasible, Unbounded };

// Two-phase tableau simplex with Bland's rule for
//   min f'y  s.t.  E y = g,  y >= 0.
// E is d x q with d small. The tableau stores B^{-1}[E | I | g]; reduced costs
// are recomputed per iteration from the cost vector of the current phase.
struct StandardSimplex {
    std::size_t d, q;
    std::vector<std::vector<double>> tab;  // d rows, q + d + 1 cols (artificials, rhs)
    std::vector<std::size_t> basis;        // column index of basic variable per row
    long pivots = 0;
    long pivot_cap;
    double tol;

    StdStatus status = StdStatus::Optimal;
    std::vector<double> y;  // length q when Optimal
    double value = 0.0;

    StandardSimplex(const Matrix& E, const Vector& g, const Vector& f, long cap, double eps)
        : d(E.rows()), q(E.cols()), pivot_cap(cap), tol(eps) {
        tab.assign(d, std::vector<double>(q + d + 1, 0.0));
        basis.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            const double sgn = g[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < q; ++j) tab[i][j] = sgn * E(i, j);
            tab[i][q + i] = 1.0;
            tab[i][q + d] = sgn * g[i];
            basis[i] = q + i;
        }

        std::vector<double> phase1(q + d, 0.0);
        for (std::size_t j = q; j < q + d; ++j) phase1[j] = 1.0;
        if (!run(phase1, /*allow_artificial=*/true)) return;  // IterationCap thrown inside
        if (objective(phase1) > 1e-7) {
            status = StdStatus::Infeasible;
            return;
        }
        std::vector<double> phase2(q + d, 0.0);
        for (std::size_t j = 0; j < q; ++j) phase2[j] = f[j];
        if (!run(phase2, /*allow_artificial=*/false)) {
            status = StdStatus::Unbounded;
            return;
        }
        y.assign(q, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            if (basis[i] < q) y[basis[i]] = tab[i][q + d];
        value = 0.0;
        for (std::size_t j = 0; j < q; ++j) value += f[j] * y[j];
    }

    double objective(const std::vector<double>& cost) const {
        double v = 0.0;
        for (std::size_t i = 0; i < d; ++i) v += cost[basis[i]] * tab[i][q + d];
        return v;
    }

    // Returns false when the phase detects unboundedness.
    bool run(const std::vector<double>& cost, bool allow_artificial) {
        const std::size_t ncols = allow_artificial ? q + d : q;
        while (true) {
            // Bland: entering = smallest index with negative reduced cost.
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j) {
                bool is_basic = false;
                for (std::size_t i = 0; i < d; ++i)
                    if (basis[i] == j) { is_basic = true; break; }
                if (is_basic) continue;
                double rc = cost[j];
                for (std::size_t i = 0; i < d; ++i) rc -= cost[basis[i]] * tab[i][j];
                if (rc < -tol) { enter = j; break; }
            }
            if (enter == ncols) return true;  // optimal for this phase

            // Ratio test; ties leave the smallest basic index (Bland).
            std::size_t leave = d;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < d; ++i) {
                if (tab[i][enter] > tol) {
                    const double ratio = tab[i][q + d] / tab[i][enter];
                    if (ratio < best - 1e-12 ||
                        (ratio < best + 1e-12 && (leave == d || basis[i] < basis[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == d) return false;  // unbounded direction

            pivot(leave, enter);
            if (++pivots > pivot_cap)
                throw IterationCap("lp_solve: simplex pivot cap " + std::to_string(pivot_cap) +
                                   " exceeded");
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = tab[row][col];
        for (auto& v : tab[row]) v /= p;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == row) continue;
            const double f = tab[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= q + d; ++j) tab[i][j] -= f * tab[row][j];
        }
        basis[row] = col;
    }
};

// Euclidean projection of `start` onto the intersection of halfspaces
// {a_k' x <= b_k} by Dykstra's alternating projections. Rows are given as
// (row pointer into H, offset); an optional extra halfspace pins the optimal
// value. Used only to recover a primal optimizer on a degenerate face.
Vector dykstra_face(const Matrix& H, const Vector& h, const Vector& c, double value,
                    Vector x, const NumericSettings& cfg) {
    const std::size_t q = H.rows();
    const std::size_t d = H.cols();
    std::vector<Vector> corr(q + 1, Vector(d, 0.0));
    const double cn2 = dot(c, c);
    for (int cycle = 0; cycle < cfg.dykstra_cap; ++cycle) {
        double moved = 0.0;
        for (std::size_t k = 0; k <= q; ++k) {
            Vector z = x + corr[k];
            Vector a;
            double b;
            double an2;
            if (k < q) {
                a = H.row(k);
                b = h[k];
                an2 = dot(a, a);
            } else {
                if (cn2 == 0.0) continue;
                a = -1.0 * c;  // c'x >= value  <=>  -c'x <= -value
                b = -value;
                an2 = cn2;
            }
            const double viol = dot(a, z) - b;
            Vector xn = viol > 0.0 ? z - (viol / an2) * a : z;
            corr[k] = z - xn;
            moved += norm2(xn - x);
            x = xn;
        }
        if (moved < cfg.dykstra_tol) break;
    }
    return x;
}

}  // namespace

LPResult lp_solve(const Vector& c, const Matrix& H, const Vector& h, bool want_optimizer,
                  const NumericSettings& cfg) {
    const std::size_t q = H.rows();
    const std::size_t d = H.cols();
    if (c.size() != d || h.size() != q) throw DimensionMismatch("lp_solve: shape mismatch");
    if (q == 0 || d == 0) throw DimensionMismatch("lp_solve: empty problem");
    const long cap = 10L * static_cast<long>(q + d) * static_cast<long>(q + d);

    const Matrix Ht = H.transpose();
    StandardSimplex dual(Ht, c, h, cap, cfg.lp_tol);

    LPResult res;
    if (dual.status == StdStatus::Unbounded) {
        // Dual objective unbounded below => primal infeasible.
        res.status = LPStatus::Infeasible;
        return res;
    }
    if (dual.status == StdStatus::Infeasible) {
        // No y >= 0 with H'y = c: primal is unbounded or infeasible. A Farkas
        // LP (c = 0) distinguishes: it is unbounded below iff the primal is empty.
        StandardSimplex farkas(Ht, Vector(d, 0.0), h, cap, cfg.lp_tol);
        res.status = farkas.status == StdStatus::Unbounded ? LPStatus::Infeasible
                                                           : LPStatus::Unbounded;
        return res;
    }

    res.status = LPStatus::Optimal;
    res.value = dual.value;
    if (!want_optimizer) return res;

    // Complementary slackness: rows with positive multiplier are active.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < q; ++i)
        if (dual.y[i] > cfg.lp_tol) active.push_back(i);

    Vector x(d, 0.0);
    bool ok = false;
    if (!active.empty()) {
        // Min-norm solution of the active equalities via normal equations.
        const std::size_t k = active.size();
        Matrix G(k, k);
        Vector rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            const Vector ai = H.row(active[i]);
            rhs[i] = h[active[i]];
            for (std::size_t j = 0; j < k; ++j) G(i, j) = dot(ai, H.row(active[j]));
        }
        try {
            const Vector z = solve_linear(G, rhs, cfg);
            Vector cand(d, 0.0);
            for (std::size_t i = 0; i < k; ++i) {
                const Vector ai = H.row(active[i]);
                for (std::size_t j = 0; j < d; ++j) cand[j] += z[i] * ai[j];
            }
            double worst = 0.0;
            for (std::size_t i = 0; i < q; ++i)
                worst = std::max(worst, dot(H.row(i), cand) - h[i]);
            if (worst <= cfg.lp_tol &&
                std::fabs(dot(c, cand) - res.value) <= 1e-7 * (1.0 + std::fabs(res.value))) {
                x = cand;
                ok = true;
            }
        } catch (const SingularMatrix&) {
            // degenerate active set, fall through to the projection fallback
        }
    }
    if (!ok) x = dykstra_face(H, h, c, res.value, x, cfg);
    res.optimizer = x;
    return res;
}

}  // namespace ocorg
