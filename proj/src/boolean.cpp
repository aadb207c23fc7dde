// Region booleans backed by Boost.Geometry. Kept in one translation unit because
// the Boost headers are expensive to compile.

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <numbers>

#include "eulerfill/geometry.hpp"

namespace bg = boost::geometry;

namespace eulerfill {
namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, true, false>;  // clockwise outer, open rings
using BMulti = bg::model::multi_polygon<BPolygon>;

BPolygon to_boost(const Region& region) {
    const Region r = region.normalized();
    BPolygon p;
    for (auto q : r.outer.ring) p.outer().push_back({q.x, q.y});
    for (const auto& h : r.holes) {
        p.inners().emplace_back();
        for (auto q : h.ring) p.inners().back().push_back({q.x, q.y});
    }
    bg::correct(p);
    return p;
}

BPolygon ring_to_boost(std::span<const Point2> ring) {
    BPolygon p;
    for (auto q : ring) p.outer().push_back({q.x, q.y});
    bg::correct(p);
    return p;
}

std::vector<Point2> from_ring(const auto& ring) {
    std::vector<Point2> out;
    for (const auto& q : ring) out.push_back({q.x(), q.y()});
    // Boost may hand back closed rings even for open polygon types after set operations.
    if (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

std::vector<Region> from_boost(const BMulti& m, double min_area) {
    std::vector<Region> out;
    for (const auto& p : m) {
        if (std::abs(bg::area(p)) <= min_area) continue;
        Region r;
        r.outer.ring = from_ring(p.outer());
        for (const auto& h : p.inners()) {
            auto ring = from_ring(h);
            if (std::abs(ring_signed_area(ring)) > min_area) r.holes.push_back({ring});
        }
        out.push_back(r.normalized());
    }
    return out;
}

BMulti cascaded_union(std::vector<BMulti> parts) {
    if (parts.empty()) return {};
    while (parts.size() > 1) {
        std::vector<BMulti> next;
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
            BMulti u;
            bg::union_(parts[i], parts[i + 1], u);
            next.push_back(std::move(u));
        }
        if (parts.size() % 2) next.push_back(std::move(parts.back()));
        parts = std::move(next);
    }
    return parts.front();
}

std::vector<Point2> disk_polygon(double radius, int k) {
    std::vector<Point2> pts;
    for (int i = 0; i < k; ++i) {
        const double a = 2.0 * std::numbers::pi * i / k;
        pts.push_back({radius * std::cos(a), radius * std::sin(a)});
    }
    return pts;
}

// Union of (edge + disk) over every boundary edge of every region.
std::vector<BMulti> edge_sweeps(std::span<const Region> regions, double radius, int k) {
    const auto disk = disk_polygon(radius, k);
    std::vector<BMulti> parts;
    auto sweep_ring = [&](const std::vector<Point2>& ring) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Point2 a = ring[i], b = ring[(i + 1) % ring.size()];
            std::vector<Point2> pts;
            for (auto q : disk) {
                pts.push_back(a + q);
                pts.push_back(b + q);
            }
            const Polygon hull = convex_hull(pts);
            BMulti m;
            m.push_back(ring_to_boost(hull.ring));
            parts.push_back(std::move(m));
        }
    };
    for (const auto& r : regions) {
        sweep_ring(r.outer.ring);
        for (const auto& h : r.holes) sweep_ring(h.ring);
    }
    return parts;
}

double area_floor(const Region& r) {
    const double diag = bounding_box(r.outer.ring).diagonal();
    return 1e-12 * diag * diag;
}

}  // namespace

double region_area(const Region& region) {
    if (region.empty()) return 0.0;
    return std::abs(bg::area(to_boost(region)));
}

std::vector<Region> minkowski_inset_components(const Region& region, double r, int disk_segments) {
    if (region.empty()) return {};
    if (disk_segments < 3) throw DegenerateGeometry("disk approximation needs at least 3 segments");
    if (r <= 0) return {region.normalized()};
    const double circumscribed = r / std::cos(std::numbers::pi / disk_segments);
    const Region one[] = {region};
    BMulti band = cascaded_union(edge_sweeps(one, circumscribed, disk_segments));
    BMulti base;
    base.push_back(to_boost(region));
    BMulti out;
    bg::difference(base, band, out);
    return from_boost(out, area_floor(region));
}

Region minkowski_inset(const Region& region, double r, int disk_segments) {
    auto parts = minkowski_inset_components(region, r, disk_segments);
    if (parts.empty()) return {};
    return *std::max_element(parts.begin(), parts.end(),
                             [](const Region& a, const Region& b) { return region_area(a) < region_area(b); });
}

std::vector<Region> minkowski_outset(std::span<const Region> regions, double r, int disk_segments) {
    if (regions.empty()) return {};
    std::vector<BMulti> parts = r > 0 ? edge_sweeps(regions, r, disk_segments) : std::vector<BMulti>{};
    for (const auto& g : regions) {
        if (g.empty()) continue;
        BMulti m;
        m.push_back(to_boost(g));
        parts.push_back(std::move(m));
    }
    return from_boost(cascaded_union(std::move(parts)), 0.0);
}

std::vector<Region> region_union(std::span<const Region> regions) { return minkowski_outset(regions, 0.0); }

bool region_covered_by(const Region& inner, std::span<const Region> outer) {
    if (inner.empty()) return true;
    std::vector<BMulti> parts;
    for (const auto& g : outer) {
        if (g.empty()) continue;
        BMulti m;
        m.push_back(to_boost(g));
        parts.push_back(std::move(m));
    }
    BMulti cover = cascaded_union(std::move(parts));
    BMulti in;
    in.push_back(to_boost(inner));
    BMulti rest;
    bg::difference(in, cover, rest);
    const double total = std::abs(bg::area(in));
    return std::abs(bg::area(rest)) <= 1e-9 * std::max(total, 1.0);
}

double intersection_area(std::span<const Point2> ring, const Region& region) {
    if (region.empty() || ring.size() < 3) return 0.0;
    BMulti a, b, out;
    a.push_back(ring_to_boost(ring));
    b.push_back(to_boost(region));
    bg::intersection(a, b, out);
    return std::abs(bg::area(out));
}

}  // namespace eulerfill
