#include "polymono/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace polymono {

namespace mp = boost::multiprecision;

double snap_to_grid(double x) {
  if (!std::isfinite(x) || std::fabs(x) >= 512.0) return x;
  return std::ldexp(std::nearbyint(std::ldexp(x, 53)), -53);
}

std::optional<std::int64_t> grid_units(double x) {
  if (!std::isfinite(x) || std::fabs(x) >= 512.0) return std::nullopt;
  const double scaled = std::ldexp(x, 53);  // exact: power-of-two scaling
  if (scaled != std::nearbyint(scaled)) return std::nullopt;
  return static_cast<std::int64_t>(scaled);
}

namespace {

constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEps) * kEps;
constexpr double kO3dErrBoundA = (7.0 + 56.0 * kEps) * kEps;
constexpr double kO4dErrBound = 128.0 * kEps;  // conservative for the 4x4 expansion

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Exact sign of det[rows], rows are coordinate differences given as doubles.
// cpp_rational represents every finite double exactly, so this is the
// ground-truth path; it only runs when the floating-point filter is
// inconclusive.
template <int D>
int exact_det_sign(const std::array<std::array<double, D>, D>& m) {
  using R = mp::cpp_rational;
  if constexpr (D == 2) {
    R det = R(m[0][0]) * R(m[1][1]) - R(m[0][1]) * R(m[1][0]);
    return det.sign();
  } else if constexpr (D == 3) {
    R det = R(m[0][0]) * (R(m[1][1]) * R(m[2][2]) - R(m[1][2]) * R(m[2][1])) -
            R(m[0][1]) * (R(m[1][0]) * R(m[2][2]) - R(m[1][2]) * R(m[2][0])) +
            R(m[0][2]) * (R(m[1][0]) * R(m[2][1]) - R(m[1][1]) * R(m[2][0]));
    return det.sign();
  } else {
    static_assert(D == 4);
    R det = 0;
    std::array<int, 3> cols{};
    for (int skip = 0; skip < 4; ++skip) {
      int w = 0;
      for (int c = 0; c < 4; ++c)
        if (c != skip) cols[w++] = c;
      R minor =
          R(m[1][cols[0]]) * (R(m[2][cols[1]]) * R(m[3][cols[2]]) -
                              R(m[2][cols[2]]) * R(m[3][cols[1]])) -
          R(m[1][cols[1]]) * (R(m[2][cols[0]]) * R(m[3][cols[2]]) -
                              R(m[2][cols[2]]) * R(m[3][cols[0]])) +
          R(m[1][cols[2]]) * (R(m[2][cols[0]]) * R(m[3][cols[1]]) -
                              R(m[2][cols[1]]) * R(m[3][cols[0]]));
      R term = R(m[0][skip]) * minor;
      det += (skip % 2 == 0) ? term : -term;
    }
    return det.sign();
  }
}

}  // namespace

int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  const double detleft = (ax - cx) * (by - cy);
  const double detright = (ay - cy) * (bx - cx);
  const double det = detleft - detright;
  const double detsum = std::fabs(detleft) + std::fabs(detright);
  if (std::fabs(det) >= kCcwErrBoundA * detsum) return sign_of(det);
  if (detsum == 0.0) return 0;
  return exact_det_sign<2>({{{bx - ax, by - ay}, {cx - ax, cy - ay}}});
}

int orient3d(double ax, double ay, double az, double bx, double by, double bz,
             double cx, double cy, double cz, double dx, double dy, double dz) {
  const double adx = ax - dx, ady = ay - dy, adz = az - dz;
  const double bdx = bx - dx, bdy = by - dy, bdz = bz - dz;
  const double cdx = cx - dx, cdy = cy - dy, cdz = cz - dz;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;

  const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) +
                     cdz * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * std::fabs(adz) +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * std::fabs(bdz) +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * std::fabs(cdz);
  if (std::fabs(det) >= kO3dErrBoundA * permanent) return sign_of(det);
  if (permanent == 0.0 && det == 0.0) return 0;
  // The sign convention here (a,b,c counterclockwise seen from d => -1) is
  // the raw determinant of rows (a-d, b-d, c-d); callers only rely on
  // consistency, so keep the row convention det[b-a, c-a, d-a] instead.
  return -exact_det_sign<3>(
      {{{adx, ady, adz}, {bdx, bdy, bdz}, {cdx, cdy, cdz}}}) == 0
             ? 0
             : -exact_det_sign<3>(
                   {{{adx, ady, adz}, {bdx, bdy, bdz}, {cdx, cdy, cdz}}});
}

int orient(std::span<const Point> simplex) {
  if (simplex.empty()) throw std::invalid_argument("orient: empty simplex");
  const int d = simplex[0].dim();
  if (static_cast<int>(simplex.size()) != d + 1)
    throw std::invalid_argument("orient: need exactly d+1 points");
  for (const auto& p : simplex)
    if (p.dim() != d) throw std::invalid_argument("orient: dimension mismatch");

  if (d == 2) {
    return orient2d(simplex[0].x(), simplex[0].y(), simplex[1].x(), simplex[1].y(),
                    simplex[2].x(), simplex[2].y());
  }
  if (d == 3) {
    // Row convention: det[p1-p0, p2-p0, p3-p0].
    const Point &a = simplex[0], &b = simplex[1], &c = simplex[2], &e = simplex[3];
    const double m[3][3] = {{b.x() - a.x(), b.y() - a.y(), b.z() - a.z()},
                            {c.x() - a.x(), c.y() - a.y(), c.z() - a.z()},
                            {e.x() - a.x(), e.y() - a.y(), e.z() - a.z()}};
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    double perm = std::fabs(m[0][0]) * (std::fabs(m[1][1] * m[2][2]) + std::fabs(m[1][2] * m[2][1])) +
                  std::fabs(m[0][1]) * (std::fabs(m[1][0] * m[2][2]) + std::fabs(m[1][2] * m[2][0])) +
                  std::fabs(m[0][2]) * (std::fabs(m[1][0] * m[2][1]) + std::fabs(m[1][1] * m[2][0]));
    if (std::fabs(det) >= kO3dErrBoundA * perm) return sign_of(det);
    if (perm == 0.0) return 0;
    return exact_det_sign<3>({{{m[0][0], m[0][1], m[0][2]},
                               {m[1][0], m[1][1], m[1][2]},
                               {m[2][0], m[2][1], m[2][2]}}});
  }
  // d == 4
  std::array<std::array<double, 4>, 4> m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = simplex[r + 1][c] - simplex[0][c];
  double det = 0.0, absdet = 0.0;
  std::array<int, 3> cols{};
  for (int skip = 0; skip < 4; ++skip) {
    int w = 0;
    for (int c = 0; c < 4; ++c)
      if (c != skip) cols[w++] = c;
    const double minor =
        m[1][cols[0]] * (m[2][cols[1]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[1]]) -
        m[1][cols[1]] * (m[2][cols[0]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[0]]) +
        m[1][cols[2]] * (m[2][cols[0]] * m[3][cols[1]] - m[2][cols[1]] * m[3][cols[0]]);
    const double absminor =
        std::fabs(m[1][cols[0]]) * (std::fabs(m[2][cols[1]] * m[3][cols[2]]) +
                                    std::fabs(m[2][cols[2]] * m[3][cols[1]])) +
        std::fabs(m[1][cols[1]]) * (std::fabs(m[2][cols[0]] * m[3][cols[2]]) +
                                    std::fabs(m[2][cols[2]] * m[3][cols[0]])) +
        std::fabs(m[1][cols[2]]) * (std::fabs(m[2][cols[0]] * m[3][cols[1]]) +
                                    std::fabs(m[2][cols[1]] * m[3][cols[0]]));
    det += (skip % 2 == 0 ? 1.0 : -1.0) * m[0][skip] * minor;
    absdet += std::fabs(m[0][skip]) * absminor;
  }
  if (std::fabs(det) >= kO4dErrBound * absdet) return sign_of(det);
  if (absdet == 0.0) return 0;
  return exact_det_sign<4>(m);
}

namespace {

// ----- d = 2: ordered boundary walk (monotone chain) -----

Hull hull_2d(std::span<const Point> pts, DegeneracyPolicy policy) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].x() != pts[b].x()) return pts[a].x() < pts[b].x();
    return pts[a].y() < pts[b].y();
  });
  for (int i = 0; i + 1 < n; ++i)
    if (pts[idx[i]] == pts[idx[i + 1]])
      throw DegeneracyError("convex_hull: duplicate points");

  auto turn = [&](int a, int b, int c) {
    int s = orient2d(pts[a].x(), pts[a].y(), pts[b].x(), pts[b].y(), pts[c].x(),
                     pts[c].y());
    if (s == 0 && policy == DegeneracyPolicy::kStrict)
      throw DegeneracyError("convex_hull: collinear tie");
    return s;
  };

  std::vector<int> chain(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower
    while (k >= 2 && turn(chain[k - 2], chain[k - 1], idx[i]) <= 0) --k;
    chain[k++] = idx[i];
  }
  for (int i = n - 2, lo = k + 1; i >= 0; --i) {  // upper
    while (k >= lo && turn(chain[k - 2], chain[k - 1], idx[i]) <= 0) --k;
    chain[k++] = idx[i];
  }
  chain.resize(k - 1);  // last point == first point
  if (static_cast<int>(chain.size()) < 3)
    throw DegeneracyError("convex_hull: points are affinely dependent");

  Hull h;
  h.dim = 2;
  h.vertex_indices = chain;
  const int m = static_cast<int>(chain.size());
  h.facets.reserve(m);
  for (int i = 0; i < m; ++i) {
    std::array<int, 4> f{chain[i], chain[(i + 1) % m], -1, -1};
    h.facets.push_back(f);
  }
  return h;
}

// Certified "strictly left of directed edge a->b" test; errs on the side of
// "not sure" so it can be used as a conservative interior filter.
bool certified_left(const Point& a, const Point& b, const Point& x) {
  const double detleft = (a.x() - x.x()) * (b.y() - x.y());
  const double detright = (a.y() - x.y()) * (b.x() - x.x());
  const double det = detleft - detright;
  const double bound = 16.0 * kEps * (std::fabs(detleft) + std::fabs(detright));
  return det > bound;
}

// Keep only points that might lie on the hull: compute the hull of extreme
// points along a fixed fan of directions and drop everything certified to be
// strictly inside it. Purely an accelerator; uncertain points are kept.
std::vector<int> hull_candidates_2d(std::span<const Point> pts) {
  static const double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                    {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  std::vector<int> extreme;
  for (auto& d : dirs) {
    int best = 0;
    double bestdot = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      const double v = d[0] * pts[i].x() + d[1] * pts[i].y();
      if (v > bestdot) {
        bestdot = v;
        best = i;
      }
    }
    extreme.push_back(best);
  }
  std::sort(extreme.begin(), extreme.end());
  extreme.erase(std::unique(extreme.begin(), extreme.end()), extreme.end());
  if (extreme.size() < 3) {
    std::vector<int> all(pts.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<Point> epts;
  for (int i : extreme) epts.push_back(pts[i]);
  Hull ph;
  try {
    ph = hull_2d(epts, DegeneracyPolicy::kWeak);
  } catch (const DegeneracyError&) {
    std::vector<int> all(pts.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> keep;
  keep.reserve(pts.size() / 4);
  const auto& ring = ph.vertex_indices;
  const int m = static_cast<int>(ring.size());
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    bool inside = true;
    for (int e = 0; e < m && inside; ++e) {
      const Point& a = epts[ring[e]];
      const Point& b = epts[ring[(e + 1) % m]];
      inside = certified_left(a, b, pts[i]);
    }
    if (!inside) keep.push_back(i);
  }
  return keep;
}

// ----- d >= 3: exhaustive facet filter -----

int orient_rows(std::span<const Point> pts, const int* base, int d, int test) {
  if (d == 3) {
    const Point &a = pts[base[0]], &b = pts[base[1]], &c = pts[base[2]],
                &x = pts[test];
    const double m00 = b.x() - a.x(), m01 = b.y() - a.y(), m02 = b.z() - a.z();
    const double m10 = c.x() - a.x(), m11 = c.y() - a.y(), m12 = c.z() - a.z();
    const double m20 = x.x() - a.x(), m21 = x.y() - a.y(), m22 = x.z() - a.z();
    const double t0 = m11 * m22 - m12 * m21;
    const double t1 = m10 * m22 - m12 * m20;
    const double t2 = m10 * m21 - m11 * m20;
    const double det = m00 * t0 - m01 * t1 + m02 * t2;
    const double perm = std::fabs(m00) * (std::fabs(m11 * m22) + std::fabs(m12 * m21)) +
                        std::fabs(m01) * (std::fabs(m10 * m22) + std::fabs(m12 * m20)) +
                        std::fabs(m02) * (std::fabs(m10 * m21) + std::fabs(m11 * m20));
    if (std::fabs(det) >= kO3dErrBoundA * perm) return sign_of(det);
    if (perm == 0.0) return 0;
    return exact_det_sign<3>(
        {{{m00, m01, m02}, {m10, m11, m12}, {m20, m21, m22}}});
  }
  std::array<Point, 5> simplex;
  for (int i = 0; i < d; ++i) simplex[i] = pts[base[i]];
  simplex[d] = pts[test];
  return orient(std::span<const Point>(simplex.data(), d + 1));
}

// Fibonacci-lattice directions on the sphere, used only to pick extreme
// points for the interior filter.
std::vector<std::array<double, 3>> sphere_dirs(int count) {
  std::vector<std::array<double, 3>> dirs;
  dirs.reserve(count);
  const double ga = 2.39996322972865332;  // golden angle
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    dirs.push_back({r * std::cos(ga * i), r * std::sin(ga * i), z});
  }
  return dirs;
}

Hull facet_filter_hull(std::span<const Point> pts, const std::vector<int>& cand,
                       int d, DegeneracyPolicy policy) {
  const int m = static_cast<int>(cand.size());
  Hull h;
  h.dim = d;
  std::vector<int> comb(d);
  for (int i = 0; i < d; ++i) comb[i] = i;
  std::array<int, 4> base{};
  while (true) {
    for (int i = 0; i < d; ++i) base[i] = cand[comb[i]];
    bool pos = false, neg = false, allzero = true;
    for (int t = 0; t < m; ++t) {
      bool in_subset = false;
      for (int i = 0; i < d; ++i)
        if (comb[i] == t) in_subset = true;
      if (in_subset) continue;
      const int s = orient_rows(pts, base.data(), d, cand[t]);
      if (s == 0) {
        if (policy == DegeneracyPolicy::kStrict)
          throw DegeneracyError("convex_hull: orientation tie");
        continue;  // weakly on the hyperplane
      }
      allzero = false;
      if (s > 0) pos = true;
      else neg = true;
      if (pos && neg) break;
    }
    if (!(pos && neg) && !allzero) {
      std::array<int, 4> f{-1, -1, -1, -1};
      for (int i = 0; i < d; ++i) f[i] = base[i];
      std::sort(f.begin(), f.begin() + d);
      h.facets.push_back(f);
    }
    // next combination
    int i = d - 1;
    while (i >= 0 && comb[i] == m - d + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
  }
  std::sort(h.facets.begin(), h.facets.end());
  std::vector<int> verts;
  for (const auto& f : h.facets)
    for (int i = 0; i < d; ++i) verts.push_back(f[i]);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  h.vertex_indices = std::move(verts);
  return h;
}

std::vector<int> hull_candidates_3d(std::span<const Point> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);

  const auto dirs = sphere_dirs(96);
  std::vector<int> extreme;
  for (const auto& d : dirs) {
    int best = 0;
    double bestdot = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double v = d[0] * pts[i].x() + d[1] * pts[i].y() + d[2] * pts[i].z();
      if (v > bestdot) {
        bestdot = v;
        best = i;
      }
    }
    extreme.push_back(best);
  }
  std::sort(extreme.begin(), extreme.end());
  extreme.erase(std::unique(extreme.begin(), extreme.end()), extreme.end());
  if (static_cast<int>(extreme.size()) < 4) return all;

  Hull ph;
  try {
    ph = facet_filter_hull(pts, extreme, 3, DegeneracyPolicy::kWeak);
  } catch (const DegeneracyError&) {
    return all;
  }
  if (ph.facets.empty()) return all;

  // Inward orientation reference per facet plane, then a conservative
  // strictly-inside test in doubles. Uncertain points are kept.
  struct Plane {
    double nx, ny, nz, off, scale;
  };
  std::vector<Plane> planes;
  planes.reserve(ph.facets.size());
  for (const auto& f : ph.facets) {
    const Point &a = pts[f[0]], &b = pts[f[1]], &c = pts[f[2]];
    double nx = (b.y() - a.y()) * (c.z() - a.z()) - (b.z() - a.z()) * (c.y() - a.y());
    double ny = (b.z() - a.z()) * (c.x() - a.x()) - (b.x() - a.x()) * (c.z() - a.z());
    double nz = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    // orient inward: all other extreme points must satisfy n.(x-a) >= 0
    double probe = 0.0;
    for (int e : extreme) {
      probe = nx * (pts[e].x() - a.x()) + ny * (pts[e].y() - a.y()) +
              nz * (pts[e].z() - a.z());
      if (std::fabs(probe) > 1e-12) break;
    }
    if (probe < 0.0) {
      nx = -nx;
      ny = -ny;
      nz = -nz;
    }
    const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (!(nn > 0.0)) return all;
    planes.push_back({nx / nn, ny / nn, nz / nn,
                      (nx * a.x() + ny * a.y() + nz * a.z()) / nn, 0.0});
  }
  std::vector<int> keep;
  keep.reserve(n / 2);
  for (int i = 0; i < n; ++i) {
    const Point& p = pts[i];
    const double margin =
        1e-9 * (1.0 + std::fabs(p.x()) + std::fabs(p.y()) + std::fabs(p.z()));
    bool inside = true;
    for (const auto& pl : planes) {
      const double s = pl.nx * p.x() + pl.ny * p.y() + pl.nz * p.z() - pl.off;
      if (s < margin) {  // not certifiably interior to this halfspace
        inside = false;
        break;
      }
    }
    if (!inside) keep.push_back(i);
  }
  return keep;
}

}  // namespace

Hull convex_hull(std::span<const Point> points, DegeneracyPolicy policy) {
  if (points.empty()) throw std::invalid_argument("convex_hull: no points");
  const int d = points[0].dim();
  for (const auto& p : points)
    if (p.dim() != d) throw std::invalid_argument("convex_hull: dimension mismatch");
  const int n = static_cast<int>(points.size());
  if (n < d + 1) throw std::invalid_argument("convex_hull: need at least d+1 points");

  if (d == 2) {
    if (n > 96) {
      const std::vector<int> cand = hull_candidates_2d(points);
      std::vector<Point> sub;
      sub.reserve(cand.size());
      for (int i : cand) sub.push_back(points[i]);
      Hull h = hull_2d(sub, policy);
      for (auto& v : h.vertex_indices) v = cand[v];
      for (auto& f : h.facets) {
        f[0] = cand[f[0]];
        f[1] = cand[f[1]];
      }
      return h;
    }
    return hull_2d(points, policy);
  }

  std::vector<int> cand;
  if (d == 3 && n > 96) {
    cand = hull_candidates_3d(points);
  } else {
    cand.resize(n);
    std::iota(cand.begin(), cand.end(), 0);
  }
  Hull h = facet_filter_hull(points, cand, d, policy);
  if (h.facets.empty() || static_cast<int>(h.vertex_indices.size()) < d + 1)
    throw DegeneracyError("convex_hull: points are affinely dependent");
  return h;
}

std::vector<long long> f_vector(const Hull& hull) {
  const int d = hull.dim;
  std::vector<long long> f(d, 0);
  f[0] = static_cast<long long>(hull.vertex_indices.size());
  f[d - 1] = static_cast<long long>(hull.facets.size());
  if (d == 2) return f;

  // Faces of dimension k (1 <= k <= d-2) are the (k+1)-subsets of facets,
  // deduplicated; exact for simplicial hulls.
  for (int k = 1; k <= d - 2; ++k) {
    std::vector<std::array<int, 3>> subs;
    subs.reserve(hull.facets.size() * 4);
    std::vector<int> pick(k + 1);
    for (const auto& fac : hull.facets) {
      for (int i = 0; i <= k; ++i) pick[i] = i;
      while (true) {
        std::array<int, 3> s{-1, -1, -1};
        for (int i = 0; i <= k; ++i) s[i] = fac[pick[i]];
        subs.push_back(s);
        int i = k;
        while (i >= 0 && pick[i] == d - 1 - (k - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j <= k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    std::sort(subs.begin(), subs.end());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    f[k] = static_cast<long long>(subs.size());
  }
  return f;
}

bool is_simplicial(const Hull& hull) {
  const int d = hull.dim;
  for (const auto& f : hull.facets) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (f[i] == f[j]) return false;
  }
  // every ridge ((d-1)-subset of a facet) must lie in exactly two facets
  std::vector<std::array<int, 3>> ridges;
  ridges.reserve(hull.facets.size() * d);
  for (const auto& f : hull.facets) {
    for (int skip = 0; skip < d; ++skip) {
      std::array<int, 3> r{-1, -1, -1};
      int w = 0;
      for (int i = 0; i < d; ++i)
        if (i != skip) r[w++] = f[i];
      std::sort(r.begin(), r.begin() + (d - 1));
      ridges.push_back(r);
    }
  }
  std::sort(ridges.begin(), ridges.end());
  for (std::size_t i = 0; i < ridges.size();) {
    std::size_t j = i;
    while (j < ridges.size() && ridges[j] == ridges[i]) ++j;
    if (j - i != 2) return false;
    i = j;
  }
  return true;
}

namespace {

// Sum of |det| over the fan simplices from the first hull vertex, as an
// exact integer in grid units, if every coordinate is on the grid.
std::optional<mp::cpp_int> exact_fan_sum(const Hull& hull,
                                         std::span<const Point> pts) {
  const int d = hull.dim;
  const int ref = hull.vertex_indices[0];
  std::array<std::array<mp::cpp_int, 4>, 4> m;
  std::array<std::int64_t, 4> refu{};
  for (int c = 0; c < d; ++c) {
    auto u = grid_units(pts[ref][c]);
    if (!u) return std::nullopt;
    refu[c] = *u;
  }
  mp::cpp_int total = 0;
  for (const auto& f : hull.facets) {
    bool has_ref = false;
    for (int i = 0; i < d; ++i)
      if (f[i] == ref) has_ref = true;
    if (has_ref) continue;
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        auto u = grid_units(pts[f[r]][c]);
        if (!u) return std::nullopt;
        m[r][c] = mp::cpp_int(*u) - refu[c];
      }
    }
    mp::cpp_int det;
    if (d == 2) {
      det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    } else if (d == 3) {
      det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    } else {
      det = 0;
      std::array<int, 3> cols{};
      for (int skip = 0; skip < 4; ++skip) {
        int w = 0;
        for (int c = 0; c < 4; ++c)
          if (c != skip) cols[w++] = c;
        mp::cpp_int minor =
            m[1][cols[0]] * (m[2][cols[1]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[1]]) -
            m[1][cols[1]] * (m[2][cols[0]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[0]]) +
            m[1][cols[2]] * (m[2][cols[0]] * m[3][cols[1]] - m[2][cols[1]] * m[3][cols[0]]);
        mp::cpp_int term = m[0][skip] * minor;
        det += (skip % 2 == 0) ? term : -term;
      }
    }
    if (det < 0) det = -det;
    total += det;
  }
  return total;
}

double fan_sum_double(const Hull& hull, std::span<const Point> pts) {
  const int d = hull.dim;
  const int ref = hull.vertex_indices[0];
  double total = 0.0;
  std::array<std::array<double, 4>, 4> m;
  for (const auto& f : hull.facets) {
    bool has_ref = false;
    for (int i = 0; i < d; ++i)
      if (f[i] == ref) has_ref = true;
    if (has_ref) continue;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m[r][c] = pts[f[r]][c] - pts[ref][c];
    double det;
    if (d == 2) {
      det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    } else if (d == 3) {
      det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    } else {
      det = 0.0;
      std::array<int, 3> cols{};
      for (int skip = 0; skip < 4; ++skip) {
        int w = 0;
        for (int c = 0; c < 4; ++c)
          if (c != skip) cols[w++] = c;
        const double minor =
            m[1][cols[0]] * (m[2][cols[1]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[1]]) -
            m[1][cols[1]] * (m[2][cols[0]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[0]]) +
            m[1][cols[2]] * (m[2][cols[0]] * m[3][cols[1]] - m[2][cols[1]] * m[3][cols[0]]);
        det += (skip % 2 == 0 ? 1.0 : -1.0) * m[0][skip] * minor;
      }
    }
    total += std::fabs(det);
  }
  return total;
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

double hull_volume(const Hull& hull, std::span<const Point> points) {
  const int d = hull.dim;
  if (auto exact = exact_fan_sum(hull, points)) {
    const double raw = exact->convert_to<double>();
    return std::ldexp(raw, -53 * d) / factorial(d);
  }
  return fan_sum_double(hull, points) / factorial(d);
}

int compare_hull_volumes(const Hull& a, std::span<const Point> pts_a,
                         const Hull& b, std::span<const Point> pts_b) {
  if (a.dim != b.dim) throw std::invalid_argument("compare_hull_volumes: dim mismatch");
  const auto ea = exact_fan_sum(a, pts_a);
  const auto eb = exact_fan_sum(b, pts_b);
  if (ea && eb) {
    if (*ea > *eb) return 1;
    if (*ea < *eb) return -1;
    return 0;
  }
  const double va = hull_volume(a, pts_a), vb = hull_volume(b, pts_b);
  return va > vb ? 1 : (va < vb ? -1 : 0);
}

}  // namespace polymono
