#pragma once

// Crisp convex bodies in dimension 1 and 2: intervals and convex polygons,
// together with the exact (grid-free) operations the fuzzy layer is built on:
// support evaluation, Steiner points, Minkowski sums, Hausdorff distances and
// Hukuhara differences. Degenerate polygons (single point, segment) are
// first-class citizens throughout.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "frv/errors.hpp"

namespace frv {

inline constexpr double kTol1d = 1e-9; // exact-arithmetic paths (dimension 1)
inline constexpr double kTol2d = 1e-6; // geometric paths (dimension 2)

inline double default_tol(int dim) { return dim == 1 ? kTol1d : kTol2d; }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x, double y) : x(x), y(y) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// A point of the base space, dimension 1 or 2.
class Point {
public:
    explicit Point(double x) : dim_(1), c_{x, 0.0} { check_finite(); }
    Point(double x, double y) : dim_(2), c_{x, y} { check_finite(); }
    explicit Point(const Vec2& v) : Point(v.x, v.y) {}

    static Point zero(int dim) { return dim == 1 ? Point(0.0) : Point(0.0, 0.0); }

    int dim() const { return dim_; }
    double operator[](std::size_t i) const { return c_[i]; }

    double scalar() const { return c_[0]; } // dimension-1 view
    Vec2 vec2() const { return {c_[0], c_[1]}; }

    Point operator+(const Point& o) const {
        require_same_dim(o);
        return make(dim_, c_[0] + o.c_[0], c_[1] + o.c_[1]);
    }
    Point operator-(const Point& o) const {
        require_same_dim(o);
        return make(dim_, c_[0] - o.c_[0], c_[1] - o.c_[1]);
    }
    Point operator*(double s) const { return make(dim_, c_[0] * s, c_[1] * s); }
    Point operator-() const { return make(dim_, -c_[0], -c_[1]); }

    double dot(const Point& o) const {
        require_same_dim(o);
        return c_[0] * o.c_[0] + c_[1] * o.c_[1];
    }
    double norm() const { return std::hypot(c_[0], c_[1]); }

    bool operator==(const Point& o) const {
        return dim_ == o.dim_ && c_[0] == o.c_[0] && c_[1] == o.c_[1];
    }

private:
    static Point make(int dim, double x, double y) {
        return dim == 1 ? Point(x) : Point(x, y);
    }
    void check_finite() const {
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(c_[i]))
                throw InvariantViolation("point has non-finite coordinate");
    }
    void require_same_dim(const Point& o) const {
        if (dim_ != o.dim_)
            throw DimensionMismatch("points of dimension " + std::to_string(dim_) +
                                    " and " + std::to_string(o.dim_));
    }

    int dim_;
    std::array<double, 2> c_;
};

namespace detail {

// Monotone-chain convex hull. Returns CCW vertices with collinear interior
// points removed; handles 0/1/2-point degenerate inputs.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    double scale = 0.0;
    for (const Vec2& p : pts) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
    const double eps = 1e-12 * std::max(1.0, scale) * std::max(1.0, scale);

    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= eps) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) { // upper
        while (k >= t && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= eps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.empty()) hull.push_back(pts.front()); // all points coincide within eps
    if (hull.size() == 2 && hull[0].x == hull[1].x && hull[0].y == hull[1].y) hull.pop_back();
    return hull;
}

// Rotate a CCW vertex ring so it starts at the lowest (then leftmost) vertex.
inline void canonical_rotation(std::vector<Vec2>& v) {
    if (v.size() < 2) return;
    auto it = std::min_element(v.begin(), v.end(), [](const Vec2& a, const Vec2& b) {
        return a.y < b.y || (a.y == b.y && a.x < b.x);
    });
    std::rotate(v.begin(), it, v.end());
}

inline double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 e = b - a;
    const double len2 = e.dot(e);
    double t = len2 > 0.0 ? (p - a).dot(e) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * e)).norm();
}

} // namespace detail

// A non-empty compact convex subset of R^d: an interval when d=1, a convex
// polygon (CCW vertex ring, possibly a point or a segment) when d=2.
class CrispConvexSet {
public:
    static CrispConvexSet interval(double lo, double hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw InvariantViolation("interval endpoint not finite");
        if (lo > hi)
            throw InvariantViolation("interval with lo > hi");
        CrispConvexSet k;
        k.dim_ = 1;
        k.lo_ = lo;
        k.hi_ = hi;
        return k;
    }

    // Takes any point cloud; keeps its convex hull with CCW orientation and
    // collinear interior vertices removed.
    static CrispConvexSet polygon(std::vector<Vec2> pts) {
        if (pts.empty()) throw InvariantViolation("polygon needs at least one vertex");
        for (const Vec2& p : pts)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw InvariantViolation("polygon vertex not finite");
        CrispConvexSet k;
        k.dim_ = 2;
        k.verts_ = detail::convex_hull(std::move(pts));
        detail::canonical_rotation(k.verts_);
        return k;
    }

    static CrispConvexSet singleton(const Point& p) {
        return p.dim() == 1 ? interval(p.scalar(), p.scalar())
                            : polygon({p.vec2()});
    }

    int dim() const { return dim_; }

    double lo() const { require_dim(1); return lo_; }
    double hi() const { require_dim(1); return hi_; }

    const std::vector<Vec2>& vertices() const { require_dim(2); return verts_; }
    std::size_t vertex_count() const { return dim_ == 1 ? 0 : verts_.size(); }

    // h_K(u) = sup over K of <u, .>; u need not be normalized.
    double support(const Point& u) const {
        if (u.dim() != dim_) throw DimensionMismatch("support direction dimension");
        if (dim_ == 1) return u.scalar() >= 0.0 ? u.scalar() * hi_ : u.scalar() * lo_;
        double best = -std::numeric_limits<double>::infinity();
        const Vec2 d = u.vec2();
        for (const Vec2& v : verts_) best = std::max(best, d.dot(v));
        return best;
    }

    // Curvature centroid: midpoint for intervals, exterior-angle-weighted
    // vertex average for polygons (equals the defining sphere integral).
    Point steiner() const {
        if (dim_ == 1) return Point(0.5 * (lo_ + hi_));
        const std::size_t n = verts_.size();
        if (n == 1) return Point(verts_[0]);
        Vec2 acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& prev = verts_[(i + n - 1) % n];
            const Vec2& cur = verts_[i];
            const Vec2& next = verts_[(i + 1) % n];
            const Vec2 e1 = cur - prev;
            const Vec2 e2 = next - cur;
            const double ext = std::atan2(e1.cross(e2), e1.dot(e2));
            acc = acc + (n == 2 ? M_PI : ext) * cur; // 2-gon turns by pi at each end
        }
        constexpr double two_pi = 2.0 * M_PI;
        return Point(acc.x / two_pi, acc.y / two_pi);
    }

    // Diameter of the body; 0 for singletons.
    double width() const {
        if (dim_ == 1) return hi_ - lo_;
        double best = 0.0;
        for (std::size_t i = 0; i < verts_.size(); ++i)
            for (std::size_t j = i + 1; j < verts_.size(); ++j)
                best = std::max(best, (verts_[i] - verts_[j]).norm());
        return best;
    }

    bool is_singleton(double tol) const { return width() <= tol; }

    // Distance from a point to this body (0 inside).
    double distance(const Point& p) const {
        if (p.dim() != dim_) throw DimensionMismatch("distance point dimension");
        if (dim_ == 1) {
            const double x = p.scalar();
            if (x < lo_) return lo_ - x;
            if (x > hi_) return x - hi_;
            return 0.0;
        }
        const Vec2 q = p.vec2();
        const std::size_t n = verts_.size();
        if (n == 1) return (q - verts_[0]).norm();
        if (n == 2) return detail::point_segment_dist(q, verts_[0], verts_[1]);
        bool inside = true;
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = verts_[i];
            const Vec2& b = verts_[(i + 1) % n];
            if ((b - a).cross(q - a) < 0.0) inside = false;
            dmin = std::min(dmin, detail::point_segment_dist(q, a, b));
        }
        return inside ? 0.0 : dmin;
    }

    bool operator==(const CrispConvexSet& o) const {
        if (dim_ != o.dim_) return false;
        if (dim_ == 1) return lo_ == o.lo_ && hi_ == o.hi_;
        if (verts_.size() != o.verts_.size()) return false;
        for (std::size_t i = 0; i < verts_.size(); ++i)
            if (verts_[i].x != o.verts_[i].x || verts_[i].y != o.verts_[i].y) return false;
        return true;
    }

private:
    CrispConvexSet() = default;
    void require_dim(int d) const {
        if (dim_ != d) throw DimensionMismatch("operation requires dimension " + std::to_string(d));
    }

    int dim_ = 1;
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<Vec2> verts_;
};

// sup over a of dist(a, b); attained at a vertex since dist(., b) is convex.
inline double excess(const CrispConvexSet& a, const CrispConvexSet& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("excess of mixed dimensions");
    if (a.dim() == 1)
        return std::max(std::max(b.lo() - a.lo(), 0.0), std::max(a.hi() - b.hi(), 0.0));
    double best = 0.0;
    for (const Vec2& v : a.vertices()) best = std::max(best, b.distance(Point(v)));
    return best;
}

inline double hausdorff(const CrispConvexSet& a, const CrispConvexSet& b) {
    return std::max(excess(a, b), excess(b, a));
}

// a subseteq b up to tol.
inline bool contained_within(const CrispConvexSet& a, const CrispConvexSet& b, double tol) {
    return excess(a, b) <= tol;
}

inline CrispConvexSet translate(const CrispConvexSet& k, const Point& v) {
    if (k.dim() != v.dim()) throw DimensionMismatch("translate vector dimension");
    if (k.dim() == 1) return CrispConvexSet::interval(k.lo() + v.scalar(), k.hi() + v.scalar());
    std::vector<Vec2> vs = k.vertices();
    for (Vec2& p : vs) p = p + v.vec2();
    return CrispConvexSet::polygon(std::move(vs));
}

inline CrispConvexSet scale(double lambda, const CrispConvexSet& k) {
    if (lambda < 0.0) throw InvariantViolation("negative scaling of a convex body");
    if (k.dim() == 1) return CrispConvexSet::interval(lambda * k.lo(), lambda * k.hi());
    if (lambda == 0.0) return CrispConvexSet::polygon({Vec2{0.0, 0.0}});
    std::vector<Vec2> vs = k.vertices();
    for (Vec2& p : vs) p = p * lambda;
    return CrispConvexSet::polygon(std::move(vs));
}

namespace detail {

// Minkowski sum of two full-dimensional CCW polygons by merging edges in
// angular order. Both rings must start at their lowest-then-leftmost vertex
// (the canonical rotation).
inline std::vector<Vec2> edge_merge_sum(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
    const std::size_t n = p.size(), m = q.size();
    std::vector<Vec2> out;
    out.reserve(n + m);
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        out.push_back(p[i % n] + q[j % m]);
        if (i >= n) { ++j; continue; }
        if (j >= m) { ++i; continue; }
        const Vec2 ep = p[(i + 1) % n] - p[i % n];
        const Vec2 eq = q[(j + 1) % m] - q[j % m];
        const double c = ep.cross(eq);
        if (c > 0.0) ++i;
        else if (c < 0.0) ++j;
        else { ++i; ++j; } // parallel edges combine
    }
    return out;
}

} // namespace detail

inline CrispConvexSet minkowski_sum(const CrispConvexSet& a, const CrispConvexSet& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("minkowski sum of mixed dimensions");
    if (a.dim() == 1) return CrispConvexSet::interval(a.lo() + b.lo(), a.hi() + b.hi());
    const std::size_t na = a.vertex_count(), nb = b.vertex_count();
    if (na == 1) return translate(b, Point(a.vertices()[0]));
    if (nb == 1) return translate(a, Point(b.vertices()[0]));
    if (na == 2 || nb == 2) {
        // segment (+) polygon: hull of the polygon translated to both endpoints
        const CrispConvexSet& seg = na == 2 ? a : b;
        const CrispConvexSet& other = na == 2 ? b : a;
        std::vector<Vec2> pts;
        pts.reserve(2 * other.vertex_count());
        for (const Vec2& e : seg.vertices())
            for (const Vec2& v : other.vertices()) pts.push_back(v + e);
        return CrispConvexSet::polygon(std::move(pts));
    }
    return CrispConvexSet::polygon(detail::edge_merge_sum(a.vertices(), b.vertices()));
}

namespace detail {

// Clip a convex polygon against the halfplane {x : <x,u> <= c}. Empty result
// means the intersection vanished.
inline std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& u, double c,
                                        double eps) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    out.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        const double da = u.dot(a) - c;
        const double db = u.dot(b) - c;
        if (da <= eps) out.push_back(a);
        if ((da < -eps && db > eps) || (da > eps && db < -eps)) {
            const double t = da / (da - db);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

// Intersection of halfplanes {x : <x, dirs[i]> <= offsets[i]}, clipped from a
// bounding box of half-width `radius`. Returns nullopt when empty.
inline std::optional<CrispConvexSet> halfplane_intersection(const std::vector<Vec2>& dirs,
                                                            const std::vector<double>& offsets,
                                                            double radius) {
    const double r = std::max(radius, 1.0) * 4.0;
    std::vector<Vec2> poly{{-r, -r}, {r, -r}, {r, r}, {-r, r}};
    const double eps = 1e-14 * r;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        poly = clip_halfplane(poly, dirs[i], offsets[i], eps);
        if (poly.empty()) return std::nullopt;
    }
    return CrispConvexSet::polygon(std::move(poly));
}

// Outward edge normals of a polygon ring (unit length); a segment yields its
// two side normals, a point yields none.
inline std::vector<Vec2> edge_normals(const CrispConvexSet& k) {
    std::vector<Vec2> out;
    const auto& v = k.vertices();
    const std::size_t n = v.size();
    if (n < 2) return out;
    const std::size_t edges = n == 2 ? 2 : n;
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec2 e = v[(i + 1) % n] - v[i % n];
        const double len = e.norm();
        if (len <= 0.0) continue;
        out.push_back({e.y / len, -e.x / len});
    }
    return out;
}

} // namespace detail

// Hukuhara difference a (-) b: the unique c with b (+) c = a, when it exists.
// Existence is certified, not assumed: the candidate is the erosion of a by b
// (exact for polygons) and is accepted only if it reproduces a.
inline std::optional<CrispConvexSet> hukuhara_diff(const CrispConvexSet& a,
                                                   const CrispConvexSet& b,
                                                   double tol = -1.0) {
    if (a.dim() != b.dim()) throw DimensionMismatch("hukuhara difference of mixed dimensions");
    if (tol < 0.0) tol = default_tol(a.dim());
    if (a.dim() == 1) {
        if ((a.hi() - a.lo()) - (b.hi() - b.lo()) < -tol) return std::nullopt;
        double lo = a.lo() - b.lo();
        double hi = a.hi() - b.hi();
        if (lo > hi) lo = hi = 0.5 * (lo + hi); // width deficit within tol collapses
        return CrispConvexSet::interval(lo, hi);
    }

    // Erosion: the constraint <x,u> <= h_a(u) - h_b(u) holds for every u; the
    // edge normals of a (plus axis directions to bound degenerate cases) are
    // sufficient to carve it exactly.
    std::vector<Vec2> dirs = detail::edge_normals(a);
    for (const Vec2& u : detail::edge_normals(b)) dirs.push_back(u);
    dirs.push_back({1.0, 0.0});
    dirs.push_back({-1.0, 0.0});
    dirs.push_back({0.0, 1.0});
    dirs.push_back({0.0, -1.0});

    double radius = 1.0;
    std::vector<double> offsets;
    offsets.reserve(dirs.size());
    for (const Vec2& u : dirs) {
        const Point pu(u);
        const double off = a.support(pu) - b.support(pu);
        offsets.push_back(off);
        radius = std::max(radius, std::fabs(off));
    }
    auto cand = detail::halfplane_intersection(dirs, offsets, radius);
    if (!cand) return std::nullopt;
    if (excess(a, minkowski_sum(b, *cand)) > tol) return std::nullopt;
    return cand;
}

} // namespace frv
