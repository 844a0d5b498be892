#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polymono {

// A point in R^d, 2 <= d <= 4. Coordinates are plain doubles; sampled
// coordinates are additionally snapped to the 2^-53 grid (see snap_to_grid)
// so that orientation signs are decided exactly.
class Point {
 public:
  Point() : dim_(0) {}
  Point(double x, double y) : dim_(2) { c_[0] = x; c_[1] = y; }
  Point(double x, double y, double z) : dim_(3) { c_[0] = x; c_[1] = y; c_[2] = z; }
  Point(double x, double y, double z, double w) : dim_(4) {
    c_[0] = x; c_[1] = y; c_[2] = z; c_[3] = w;
  }
  explicit Point(std::span<const double> coords) : dim_(static_cast<int>(coords.size())) {
    if (dim_ < 2 || dim_ > 4) throw std::invalid_argument("Point: dimension must be 2..4");
    for (int i = 0; i < dim_; ++i) c_[i] = coords[i];
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  double x() const { return c_[0]; }
  double y() const { return c_[1]; }
  double z() const { return c_[2]; }

  bool operator==(const Point& o) const {
    if (dim_ != o.dim_) return false;
    for (int i = 0; i < dim_; ++i)
      if (c_[i] != o.c_[i]) return false;
    return true;
  }

 private:
  std::array<double, 4> c_{};
  int dim_;
};

// Thrown when a tie (orientation zero) or other measure-zero configuration is
// met under the strict policy, or on degenerate user input. Callers running
// on sampled data catch this and resample the replicate.
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// How to treat orientation ties met during hull / k-set computation.
// kWeak: tolerate them definitionally (points on a candidate hyperplane count
//        as "weakly on the side"); used for explicit user-supplied sets.
// kStrict: throw DegeneracyError; used on sampled data, where the caller
//        resamples the replicate.
enum class DegeneracyPolicy { kWeak, kStrict };

// Snaps x to the nearest double that is an integer multiple of 2^-53.
// Identity for values that are already on the grid (all dyadic rationals of
// magnitude < 1 representable in 53 bits, hull corners like 0, 1, 0.5, ...).
double snap_to_grid(double x);

// Exact integer grid coordinate k with x == k * 2^-53, if x lies on the grid
// and |x| < 512. Empty otherwise.
std::optional<std::int64_t> grid_units(double x);

// Sign of the orientation determinant det[p1-p0, ..., pd-p0], exactly.
// +1 for the counterclockwise / positively oriented simplex, 0 iff the d+1
// points are affinely dependent. A floating-point filter decides the vast
// majority of calls; near-zero determinants fall back to exact rational
// arithmetic, so the sign is never a rounding artifact.
int orient2d(double ax, double ay, double bx, double by, double cx, double cy);
int orient3d(double ax, double ay, double az, double bx, double by, double bz,
             double cx, double cy, double cz, double dx, double dy, double dz);
int orient(std::span<const Point> simplex);

// Convex hull of a finite point set, facets as d-element index sets.
struct Hull {
  int dim = 0;
  // d=2: boundary order (counterclockwise); d>=3: ascending.
  std::vector<int> vertex_indices;
  // Each facet uses the first `dim` slots; lexicographically sorted for d>=3,
  // consecutive boundary pairs for d=2.
  std::vector<std::array<int, 4>> facets;
};

// d=2 by ordered boundary walk, d>=3 by the exhaustive facet filter: a
// d-subset is a facet iff every other point lies (weakly) on one side of its
// hyperplane. Points strictly inside the hull of a directional-extreme subset
// are discarded up front for large inputs; the discard is conservative and
// does not change the result.
//
// Throws DegeneracyError on ties per the policy, or if the points do not
// span d dimensions (or fewer than d+1 points are given).
Hull convex_hull(std::span<const Point> points,
                 DegeneracyPolicy policy = DegeneracyPolicy::kWeak);

// Face counts (f_0, ..., f_{d-1}). Faces are recovered as vertex subsets of
// facets, which counts each face once for simplicial hulls (the generic
// case) and for every d=2 hull.
std::vector<long long> f_vector(const Hull& hull);

// True iff every facet has exactly `dim` distinct vertices and every ridge
// lies in exactly two facets.
bool is_simplicial(const Hull& hull);

// d-volume by fan decomposition from the first hull vertex. When all
// coordinates lie on the 2^-53 grid the simplex determinants are summed in
// exact integer arithmetic and rounded once at the end.
double hull_volume(const Hull& hull, std::span<const Point> points);

// Pathwise volume comparison: +1 / 0 / -1 as vol(hull_a) >, =, < vol(hull_b),
// decided exactly when both point sets are on the grid.
int compare_hull_volumes(const Hull& a, std::span<const Point> pts_a,
                         const Hull& b, std::span<const Point> pts_b);

}  // namespace polymono
