#pragma once

// Planar primitives. Convention throughout the library: +x right, +y up,
// counter-clockwise rings have positive signed area.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "eulerfill/errors.hpp"

namespace eulerfill {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
    friend Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }
    friend Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
    friend bool operator==(Point2 a, Point2 b) = default;
    friend auto operator<=>(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 perp_left(Point2 a) { return {-a.y, a.x}; }

/// Twice the signed area of triangle abc; positive when abc turns left.
inline double orient2d(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

enum class Orientation { CW, CCW };

struct Segment {
    Point2 a;
    Point2 b;
};

/// A simple closed ring. The closing edge back to the first vertex is implicit.
struct Polygon {
    std::vector<Point2> ring;

    std::size_t size() const { return ring.size(); }
    Orientation orientation() const;
    Polygon reversed() const;
};

/// A polygon with holes. The outer ring is clockwise and holes are counter-clockwise.
/// An empty outer ring marks the empty region.
struct Region {
    Polygon outer;
    std::vector<Polygon> holes;

    bool empty() const { return outer.ring.empty(); }
    /// Re-orients rings to the outer-CW / holes-CCW convention.
    Region normalized() const;
};

struct CollapsedRun {
    std::vector<std::size_t> source_edges;  ///< consecutive input edge indices (edge i runs from vertex i to i+1)
    Point2 vertex;
};

struct SplitRecord {
    std::size_t source_vertex;
    std::vector<Point2> vertices;
};

struct OffsetResult {
    std::vector<Polygon> pieces;
    bool combinatorial_changed = false;
    bool topological_changed = false;
    std::vector<CollapsedRun> collapsed_edge_runs;
    std::vector<SplitRecord> split_vertices;
};

/// Absolute tolerance used for snapping and predicate decisions, derived from a length scale.
struct Tolerance {
    double eps = 1e-9;

    static Tolerance for_extent(double bbox_diagonal) {
        return Tolerance{bbox_diagonal > 0 ? 1e-9 * bbox_diagonal : 1e-12};
    }
    Point2 snap(Point2 p) const { return {std::round(p.x / eps) * eps, std::round(p.y / eps) * eps}; }
};

struct BoundingBox {
    Point2 min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point2 max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void extend(Point2 p) {
        min.x = std::min(min.x, p.x);
        min.y = std::min(min.y, p.y);
        max.x = std::max(max.x, p.x);
        max.y = std::max(max.y, p.y);
    }
    bool valid() const { return min.x <= max.x; }
    double diagonal() const { return valid() ? distance(min, max) : 0.0; }
};

BoundingBox bounding_box(std::span<const Point2> points);

/// Signed area in mm^2; throws DegenerateGeometry for rings with fewer than 3 distinct vertices.
double signed_area(const Polygon& polygon);
/// Shoelace sum without validation; usable on degenerate or self-touching rings.
double ring_signed_area(std::span<const Point2> ring);
double ring_perimeter(std::span<const Point2> ring);

bool segments_properly_cross(const Segment& s, const Segment& t, double eps, Point2* where = nullptr);
/// Parameters along s and t where they meet, or nothing when parallel or disjoint.
std::optional<std::pair<double, double>> segment_intersection_params(const Segment& s, const Segment& t);
double point_segment_distance(Point2 p, const Segment& s);
double segment_segment_distance(const Segment& s, const Segment& t);

/// Every interior intersection between two segments that do not share an endpoint.
std::vector<Point2> proper_crossings(std::span<const Segment> segments, double eps = -1.0);

/// Counter-clockwise hull; throws DegenerateGeometry when every point is collinear.
Polygon convex_hull(std::span<const Point2> points);

enum class Containment { Outside, Boundary, Inside };
Containment locate_in_ring(Point2 p, std::span<const Point2> ring, double eps);
Containment locate_in_region(Point2 p, const Region& region, double eps);

/// Time of the first straight-skeleton event of a simple polygon (either orientation).
double first_event_time(const Polygon& polygon);

/// Inward mitered offset by distance d, simulated as a straight-skeleton wavefront.
OffsetResult mitered_offset(const Polygon& polygon, double d);

/// Regions whose points stay at distance >= r from the boundary of `region`.
/// The disk is replaced by a circumscribed regular k-gon, so the result is contained in the exact inset.
std::vector<Region> minkowski_inset_components(const Region& region, double r, int disk_segments = 32);
/// Largest inset component by area, or an empty Region when the inset vanishes.
Region minkowski_inset(const Region& region, double r, int disk_segments = 32);

/// Union of regions grown by an inscribed regular k-gon of radius r.
std::vector<Region> minkowski_outset(std::span<const Region> regions, double r, int disk_segments = 32);
/// True when `inner` lies inside the union of `outer` (boundary contact allowed).
bool region_covered_by(const Region& inner, std::span<const Region> outer);
double region_area(const Region& region);
/// Area of the intersection of a simple ring with a region.
double intersection_area(std::span<const Point2> ring, const Region& region);
/// Polygon union of all regions.
std::vector<Region> region_union(std::span<const Region> regions);

}  // namespace eulerfill
