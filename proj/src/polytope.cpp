#include "ocorg/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ocorg/errors.hpp"

namespace ocorg {

HPolytope::HPolytope(Matrix H, Vector h) : H_(std::move(H)), h_(std::move(h)) {
    if (H_.rows() != h_.size()) throw DimensionMismatch("HPolytope: H/h row mismatch");
    for (std::size_t i = 0; i < H_.rows(); ++i) {
        if (norm2(H_.row(i)) == 0.0) throw DimensionMismatch("HPolytope: zero normal row");
    }
}

HPolytope HPolytope::box(const Vector& lo, const Vector& hi) {
    const std::size_t d = lo.size();
    Matrix H(2 * d, d);
    Vector h(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        H(2 * i, i) = 1.0;
        h[2 * i] = hi[i];
        H(2 * i + 1, i) = -1.0;
        h[2 * i + 1] = -lo[i];
    }
    return HPolytope(std::move(H), std::move(h));
}

HPolytope HPolytope::box(double lo, double hi, std::size_t dim) {
    return box(Vector(dim, lo), Vector(dim, hi));
}

void HPolytope::add_row(const Vector& a, double b) {
    if (H_.rows() == 0) {
        H_ = Matrix(1, a.size());
        for (std::size_t j = 0; j < a.size(); ++j) H_(0, j) = a[j];
        h_ = {b};
        return;
    }
    if (a.size() != dim()) throw DimensionMismatch("add_row: dimension mismatch");
    Matrix H2(H_.rows() + 1, dim());
    for (std::size_t i = 0; i < H_.rows(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) H2(i, j) = H_(i, j);
    for (std::size_t j = 0; j < dim(); ++j) H2(H_.rows(), j) = a[j];
    H_ = std::move(H2);
    h_.push_back(b);
}

double SupportSet::support(const Vector& c) const {
    double s = 0.0;
    for (const auto& t : terms) {
        // h_box(M' c) for box [lo, hi]
        const Vector d = t.map.transpose() * c;
        for (std::size_t j = 0; j < d.size(); ++j)
            s += std::max(t.lo[j] * d[j], t.hi[j] * d[j]);
    }
    return multiplier * s;
}

SupportSet SupportSet::zero(std::size_t dim) {
    SupportSet s;
    s.terms.push_back({Matrix::zeros(dim, 1), {0.0}, {0.0}});
    return s;
}

SupportSet SupportSet::mapped_box(const Matrix& map, const Vector& lo, const Vector& hi) {
    SupportSet s;
    s.terms.push_back({map, lo, hi});
    return s;
}

SupportSet SupportSet::scaled(double factor) const {
    SupportSet s = *this;
    s.multiplier *= factor;
    return s;
}

std::vector<Vector> SupportSet::face_directions() const {
    std::vector<Vector> dirs;
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) {
        Vector e(d, 0.0);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }
    for (const auto& t : terms) {
        if (t.map.rows() != t.map.cols()) continue;
        Matrix inv;
        try {
            inv = solve_linear(t.map, Matrix::identity(t.map.rows()));
        } catch (const SingularMatrix&) {
            continue;
        }
        for (std::size_t i = 0; i < inv.rows(); ++i) {
            Vector r = inv.row(i);
            const double n = norm2(r);
            if (n == 0.0) continue;
            for (auto& v : r) v /= n;
            dirs.push_back(r);
            dirs.push_back(-1.0 * r);
        }
    }
    return dirs;
}

std::vector<Vector> SupportSet::vertices() const {
    std::vector<Vector> pts{Vector(dim(), 0.0)};
    for (const auto& t : terms) {
        const std::size_t bd = t.lo.size();
        std::vector<Vector> next;
        for (std::size_t mask = 0; mask < (std::size_t{1} << bd); ++mask) {
            Vector corner(bd);
            for (std::size_t j = 0; j < bd; ++j)
                corner[j] = (mask >> j) & 1 ? t.hi[j] : t.lo[j];
            const Vector offset = t.map * corner;
            for (const auto& p : pts) next.push_back(p + offset);
        }
        pts = std::move(next);
    }
    for (auto& p : pts)
        for (auto& v : p) v *= multiplier;
    return pts;
}

double support(const HPolytope& poly, const Vector& c, const NumericSettings& cfg) {
    const LPResult res = lp_solve(c, poly, /*want_optimizer=*/false, cfg);
    if (res.status == LPStatus::Unbounded) throw Unbounded("support: set unbounded along c");
    if (res.status == LPStatus::Infeasible) throw Infeasible("support: empty set");
    return res.value;
}

double support(const SupportSet& set, const Vector& c) { return set.support(c); }

LPResult lp_solve(const Vector& c, const HPolytope& poly, bool want_optimizer,
                  const NumericSettings& cfg) {
    return lp_solve(c, poly.H(), poly.h(), want_optimizer, cfg);
}

namespace {

HPolytope tighten(const HPolytope& poly, const std::function<double(const Vector&)>& eta,
                  const NumericSettings& cfg) {
    Vector h = poly.h();
    for (std::size_t i = 0; i < poly.num_rows(); ++i) h[i] -= eta(poly.H().row(i));
    HPolytope out(poly.H(), std::move(h));
    const LPResult feas = lp_solve(Vector(poly.dim(), 0.0), out, false, cfg);
    if (feas.status == LPStatus::Infeasible)
        throw EmptyResult("pontryagin_diff: tightened set is empty");
    return out;
}

}  // namespace

HPolytope pontryagin_diff(const HPolytope& poly, const SupportSet& sub,
                          const NumericSettings& cfg) {
    return tighten(poly, [&](const Vector& a) { return sub.support(a); }, cfg);
}

HPolytope pontryagin_diff(const HPolytope& poly, const HPolytope& sub,
                          const NumericSettings& cfg) {
    return tighten(poly, [&](const Vector& a) { return support(sub, a, cfg); }, cfg);
}

bool contains(const HPolytope& poly, const Vector& x, double tol) {
    if (x.size() != poly.dim()) throw DimensionMismatch("contains: dimension mismatch");
    for (std::size_t i = 0; i < poly.num_rows(); ++i) {
        if (dot(poly.H().row(i), x) > poly.h()[i] + tol) return false;
    }
    return true;
}

bool is_redundant(const HPolytope& poly, const Vector& a, double b,
                  const NumericSettings& cfg) {
    const LPResult res = lp_solve(a, poly, /*want_optimizer=*/false, cfg);
    if (res.status == LPStatus::Unbounded) throw Unbounded("is_redundant: set unbounded");
    if (res.status == LPStatus::Infeasible) return true;  // empty set, vacuous
    return res.value <= b + 1e-9;
}

HPolytope remove_redundant_rows(const HPolytope& poly, const NumericSettings& cfg) {
    std::vector<bool> keep(poly.num_rows(), true);
    for (std::size_t i = 0; i < poly.num_rows(); ++i) {
        // Test row i against the remaining kept rows.
        Matrix H(0, 0);
        Vector h;
        std::size_t rows = 0;
        for (std::size_t j = 0; j < poly.num_rows(); ++j)
            if (keep[j] && j != i) ++rows;
        if (rows == 0) continue;
        H = Matrix(rows, poly.dim());
        h.resize(rows);
        std::size_t r = 0;
        for (std::size_t j = 0; j < poly.num_rows(); ++j) {
            if (!keep[j] || j == i) continue;
            for (std::size_t cidx = 0; cidx < poly.dim(); ++cidx) H(r, cidx) = poly.H()(j, cidx);
            h[r] = poly.h()[j];
            ++r;
        }
        LPResult res = lp_solve(poly.H().row(i), H, h, false, cfg);
        if (res.status == LPStatus::Optimal && res.value <= poly.h()[i] + 1e-9)
            keep[i] = false;
    }
    Matrix H(0, 0);
    Vector h;
    std::size_t rows = 0;
    for (bool k : keep)
        if (k) ++rows;
    H = Matrix(rows, poly.dim());
    h.resize(rows);
    std::size_t r = 0;
    for (std::size_t j = 0; j < poly.num_rows(); ++j) {
        if (!keep[j]) continue;
        for (std::size_t cidx = 0; cidx < poly.dim(); ++cidx) H(r, cidx) = poly.H()(j, cidx);
        h[r] = poly.h()[j];
        ++r;
    }
    return HPolytope(std::move(H), std::move(h));
}

Vector project(const HPolytope& poly, const Vector& x, const NumericSettings& cfg) {
    const std::size_t q = poly.num_rows();
    const std::size_t d = poly.dim();
    if (x.size() != d) throw DimensionMismatch("project: dimension mismatch");
    if (contains(poly, x, 0.0)) return x;  // interior fixed point

    std::vector<double> an2(q);
    for (std::size_t i = 0; i < q; ++i) an2[i] = dot(poly.H().row(i), poly.H().row(i));

    Vector p = x;
    std::vector<Vector> corr(q, Vector(d, 0.0));
    for (int cycle = 0; cycle < cfg.dykstra_cap; ++cycle) {
        double moved = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            const Vector z = p + corr[i];
            const Vector a = poly.H().row(i);
            const double viol = dot(a, z) - poly.h()[i];
            const Vector pn = viol > 0.0 ? z - (viol / an2[i]) * a : z;
            corr[i] = z - pn;
            moved += norm2(pn - p);
            p = pn;
        }
        if (moved < cfg.dykstra_tol) break;
    }
    if (!contains(poly, p, 1e-6))
        throw Infeasible("project: no feasible point found (empty polytope?)");
    return p;
}

HPolytope scale(const HPolytope& poly, double lambda) {
    if (lambda <= 0.0) throw DimensionMismatch("scale: lambda must be positive");
    Vector h = poly.h();
    for (auto& v : h) v *= lambda;
    return HPolytope(poly.H(), std::move(h));
}

std::vector<std::array<double, 2>> support_polygon(
    const std::function<double(const std::array<double, 2>&)>& support2d, int directions) {
    // Halfplanes c_l . z <= s_l from evenly spaced directions; the polygon is
    // their intersection. With directions sorted by angle, every vertex is the
    // intersection of two halfplane boundaries that satisfies all others.
    std::vector<std::array<double, 2>> normals(directions);
    std::vector<double> offsets(directions);
    for (int l = 0; l < directions; ++l) {
        const double ang = 2.0 * std::numbers::pi * l / directions;
        normals[l] = {std::cos(ang), std::sin(ang)};
        offsets[l] = support2d(normals[l]);
    }
    std::vector<std::array<double, 2>> verts;
    for (int a = 0; a < directions; ++a) {
        for (int b = a + 1; b < directions; ++b) {
            const double det =
                normals[a][0] * normals[b][1] - normals[a][1] * normals[b][0];
            if (std::fabs(det) < 1e-12) continue;
            const double x =
                (offsets[a] * normals[b][1] - offsets[b] * normals[a][1]) / det;
            const double y =
                (normals[a][0] * offsets[b] - normals[b][0] * offsets[a]) / det;
            bool ok = true;
            for (int l = 0; l < directions && ok; ++l)
                ok = normals[l][0] * x + normals[l][1] * y <= offsets[l] + 1e-7;
            if (ok) verts.push_back({x, y});
        }
    }
    if (verts.empty()) return verts;
    double cx = 0.0, cy = 0.0;
    for (const auto& v : verts) {
        cx += v[0];
        cy += v[1];
    }
    cx /= verts.size();
    cy /= verts.size();
    std::sort(verts.begin(), verts.end(), [&](const auto& p, const auto& q2) {
        return std::atan2(p[1] - cy, p[0] - cx) < std::atan2(q2[1] - cy, q2[0] - cx);
    });
    // Deduplicate nearly identical vertices.
    std::vector<std::array<double, 2>> out;
    for (const auto& v : verts) {
        if (!out.empty() && std::fabs(v[0] - out.back()[0]) < 1e-9 &&
            std::fabs(v[1] - out.back()[1]) < 1e-9)
            continue;
        out.push_back(v);
    }
    if (out.size() > 1 && std::fabs(out.front()[0] - out.back()[0]) < 1e-9 &&
        std::fabs(out.front()[1] - out.back()[1]) < 1e-9)
        out.pop_back();
    return out;
}

std::vector<std::array<double, 2>> project_2d(const HPolytope& poly, std::size_t i,
                                              std::size_t j, int directions,
                                              const NumericSettings& cfg) {
    return support_polygon(
        [&](const std::array<double, 2>& c) {
            Vector full(poly.dim(), 0.0);
            full[i] = c[0];
            full[j] = c[1];
            return support(poly, full, cfg);
        },
        directions);
}

std::vector<std::array<double, 2>> project_image_2d(const HPolytope& poly, const Matrix& map,
                                                    std::size_t i, std::size_t j,
                                                    int directions,
                                                    const NumericSettings& cfg) {
    return support_polygon(
        [&](const std::array<double, 2>& c) {
            Vector img(map.rows(), 0.0);
            img[i] = c[0];
            img[j] = c[1];
            return support(poly, map.transpose() * img, cfg);
        },
        directions);
}

}  // namespace ocorg
