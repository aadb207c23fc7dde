#include "eulerfill/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace eulerfill {

Orientation Polygon::orientation() const {
    return ring_signed_area(ring) < 0 ? Orientation::CW : Orientation::CCW;
}

Polygon Polygon::reversed() const {
    Polygon p{ring};
    std::reverse(p.ring.begin(), p.ring.end());
    return p;
}

Region Region::normalized() const {
    Region r;
    if (outer.ring.empty()) return r;
    r.outer = outer.orientation() == Orientation::CW ? outer : outer.reversed();
    for (const auto& h : holes) r.holes.push_back(h.orientation() == Orientation::CCW ? h : h.reversed());
    return r;
}

BoundingBox bounding_box(std::span<const Point2> points) {
    BoundingBox b;
    for (auto p : points) b.extend(p);
    return b;
}

double ring_signed_area(std::span<const Point2> ring) {
    const std::size_t n = ring.size();
    if (n < 3) return 0.0;
    // Shift to the first vertex to limit cancellation for rings far from the origin.
    const Point2 o = ring[0];
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) s += cross(ring[i] - o, ring[i + 1] - o);
    return 0.5 * s;
}

double ring_perimeter(std::span<const Point2> ring) {
    double s = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) s += distance(ring[i], ring[(i + 1) % ring.size()]);
    return s;
}

double signed_area(const Polygon& polygon) {
    std::vector<Point2> distinct;
    for (auto p : polygon.ring)
        if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
    if (distinct.size() < 3) throw DegenerateGeometry("ring has fewer than 3 distinct vertices");
    return ring_signed_area(polygon.ring);
}

std::optional<std::pair<double, double>> segment_intersection_params(const Segment& s, const Segment& t) {
    const Point2 r = s.b - s.a;
    const Point2 q = t.b - t.a;
    const double den = cross(r, q);
    const double scale = norm(r) * norm(q);
    if (scale == 0.0 || std::abs(den) <= 1e-14 * scale) return std::nullopt;
    const Point2 w = t.a - s.a;
    const double u = cross(w, q) / den;
    const double v = cross(w, r) / den;
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return std::nullopt;
    return std::make_pair(u, v);
}

bool segments_properly_cross(const Segment& s, const Segment& t, double eps, Point2* where) {
    const double o1 = orient2d(s.a, s.b, t.a);
    const double o2 = orient2d(s.a, s.b, t.b);
    const double o3 = orient2d(t.a, t.b, s.a);
    const double o4 = orient2d(t.a, t.b, s.b);
    const double ls = distance(s.a, s.b);
    const double lt = distance(t.a, t.b);
    // orient2d is a length times a distance; compare distances against eps.
    auto side = [eps](double o, double len) { return len == 0.0 ? 0 : (o / len > eps ? 1 : (o / len < -eps ? -1 : 0)); };
    const int s1 = side(o1, ls), s2 = side(o2, ls), s3 = side(o3, lt), s4 = side(o4, lt);
    if (s1 * s2 >= 0 || s3 * s4 >= 0) return false;
    if (where) {
        const double u = o3 / (o3 - o4);
        *where = s.a + (s.b - s.a) * u;
    }
    return true;
}

double point_segment_distance(Point2 p, const Segment& s) {
    const Point2 d = s.b - s.a;
    const double l2 = dot(d, d);
    if (l2 == 0.0) return distance(p, s.a);
    const double u = std::clamp(dot(p - s.a, d) / l2, 0.0, 1.0);
    return distance(p, s.a + d * u);
}

double segment_segment_distance(const Segment& s, const Segment& t) {
    if (segments_properly_cross(s, t, 0.0)) return 0.0;
    return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t), point_segment_distance(t.a, s),
                     point_segment_distance(t.b, s)});
}

std::vector<Point2> proper_crossings(std::span<const Segment> segments, double eps) {
    if (eps < 0) {
        BoundingBox b;
        for (const auto& s : segments) {
            b.extend(s.a);
            b.extend(s.b);
        }
        eps = Tolerance::for_extent(b.diagonal()).eps;
    }
    // Sweep over x-extents; adequate for the edge counts produced by layer planning.
    std::vector<std::size_t> order(segments.size());
    std::iota(order.begin(), order.end(), 0);
    auto lo = [&](std::size_t i) { return std::min(segments[i].a.x, segments[i].b.x); };
    auto hi = [&](std::size_t i) { return std::max(segments[i].a.x, segments[i].b.x); };
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lo(a) < lo(b); });
    std::vector<Point2> out;
    for (std::size_t a = 0; a < order.size(); ++a) {
        const auto& s = segments[order[a]];
        const double smax = hi(order[a]);
        const double sylo = std::min(s.a.y, s.b.y), syhi = std::max(s.a.y, s.b.y);
        for (std::size_t b = a + 1; b < order.size() && lo(order[b]) <= smax + eps; ++b) {
            const auto& t = segments[order[b]];
            if (std::max(t.a.y, t.b.y) < sylo - eps || std::min(t.a.y, t.b.y) > syhi + eps) continue;
            Point2 w;
            if (segments_properly_cross(s, t, eps, &w)) out.push_back(w);
        }
    }
    return out;
}

Polygon convex_hull(std::span<const Point2> points) {
    std::vector<Point2> p(points.begin(), points.end());
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) throw DegenerateGeometry("convex hull needs at least 3 distinct points");
    std::vector<Point2> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && orient2d(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient2d(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    if (h.size() < 3) throw DegenerateGeometry("all points are collinear");
    return Polygon{h};
}

Containment locate_in_ring(Point2 p, std::span<const Point2> ring, double eps) {
    const std::size_t n = ring.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = ring[j], b = ring[i];
        if (point_segment_distance(p, {a, b}) <= eps) return Containment::Boundary;
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x > p.x) inside = !inside;
        }
    }
    return inside ? Containment::Inside : Containment::Outside;
}

Containment locate_in_region(Point2 p, const Region& region, double eps) {
    if (region.empty()) return Containment::Outside;
    const auto c = locate_in_ring(p, region.outer.ring, eps);
    if (c != Containment::Inside) return c;
    for (const auto& h : region.holes) {
        const auto ch = locate_in_ring(p, h.ring, eps);
        if (ch == Containment::Boundary) return Containment::Boundary;
        if (ch == Containment::Inside) return Containment::Outside;
    }
    return Containment::Inside;
}

}  // namespace eulerfill
