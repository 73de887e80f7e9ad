#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ocorg/lp.hpp"
#include "ocorg/matrix.hpp"

namespace ocorg {

/// Halfspace-represented convex set {x : Hx <= h}. Rows with zero normal are
/// rejected at construction.
class HPolytope {
  public:
    HPolytope() = default;
    HPolytope(Matrix H, Vector h);

    /// Axis-aligned box [lo, hi]^d.
    static HPolytope box(const Vector& lo, const Vector& hi);
    static HPolytope box(double lo, double hi, std::size_t dim);

    std::size_t dim() const { return H_.cols(); }
    std::size_t num_rows() const { return H_.rows(); }
    const Matrix& H() const { return H_; }
    const Vector& h() const { return h_; }

    void add_row(const Vector& a, double b);

  private:
    Matrix H_;
    Vector h_;
};

/// Set represented only through its support function: the Minkowski sum of
/// linearly mapped boxes, optionally scaled,
///   multiplier * (M_1 box_1  (+)  ...  (+)  M_k box_k).
struct SupportSet {
    struct Term {
        Matrix map;  // dim x box-dim
        Vector lo;
        Vector hi;
    };
    std::vector<Term> terms;
    double multiplier = 1.0;

    std::size_t dim() const { return terms.empty() ? 0 : terms.front().map.rows(); }

    /// max over the set of c'x, computed analytically term by term.
    double support(const Vector& c) const;

    /// Point set {0}.
    static SupportSet zero(std::size_t dim);
    /// Single mapped box.
    static SupportSet mapped_box(const Matrix& map, const Vector& lo, const Vector& hi);

    SupportSet scaled(double factor) const;

    /// Outward normals of each mapped-box face (rows of map^{-1}, both signs)
    /// plus the coordinate axes; used as certification directions.
    std::vector<Vector> face_directions() const;

    /// All vertices sum_i M_i corner_i (2^(sum of box dims) points; callers
    /// keep box dimensions small). Includes the multiplier.
    std::vector<Vector> vertices() const;
};

double support(const HPolytope& poly, const Vector& c,
               const NumericSettings& cfg = default_settings());
double support(const SupportSet& set, const Vector& c);

LPResult lp_solve(const Vector& c, const HPolytope& poly, bool want_optimizer = true,
                  const NumericSettings& cfg = default_settings());

/// poly (-) sub = {x : x + s in poly for all s in sub}, exact in H-rep:
/// offsets tightened by the support of sub along each row normal.
/// Throws EmptyResult when the tightened set is empty.
HPolytope pontryagin_diff(const HPolytope& poly, const SupportSet& sub,
                          const NumericSettings& cfg = default_settings());
HPolytope pontryagin_diff(const HPolytope& poly, const HPolytope& sub,
                          const NumericSettings& cfg = default_settings());

bool contains(const HPolytope& poly, const Vector& x, double tol);

/// True iff the halfspace a'x <= b cuts nothing from poly.
bool is_redundant(const HPolytope& poly, const Vector& a, double b,
                  const NumericSettings& cfg = default_settings());

/// Removes rows that are redundant with respect to the remaining ones.
HPolytope remove_redundant_rows(const HPolytope& poly,
                                const NumericSettings& cfg = default_settings());

/// Euclidean projection onto poly by Dykstra's alternating projections.
/// Throws Infeasible when poly is empty.
Vector project(const HPolytope& poly, const Vector& x,
               const NumericSettings& cfg = default_settings());

/// {x : Hx <= lambda h}; scaling about the origin, so poly must contain 0.
HPolytope scale(const HPolytope& poly, double lambda);

/// Planar outer-approximation polygon of a set given by a 2-D support oracle,
/// from `directions` evenly spaced directions. Vertices counter-clockwise.
std::vector<std::array<double, 2>> support_polygon(
    const std::function<double(const std::array<double, 2>&)>& support2d, int directions);

/// Projection of poly onto coordinates (i, j).
std::vector<std::array<double, 2>> project_2d(const HPolytope& poly, std::size_t i,
                                              std::size_t j, int directions,
                                              const NumericSettings& cfg = default_settings());

/// Projection of the linear image map*poly onto coordinates (i, j) of the image.
std::vector<std::array<double, 2>> project_image_2d(
    const HPolytope& poly, const Matrix& map, std::size_t i, std::size_t j, int directions,
    const NumericSettings& cfg = default_settings());

}  // namespace ocorg
