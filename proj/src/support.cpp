#include <cmath>
#include <sstream>

#include "eulerfill/slicing.hpp"

namespace eulerfill {
namespace {

struct Station {
    Point2 p;
    Point2 tangent;
};

Station at_arclength(const std::vector<Point2>& path, double s) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double len = distance(path[i], path[i + 1]);
        if (len <= 0) continue;
        if (s <= len || i + 2 == path.size()) {
            const Point2 t = (path[i + 1] - path[i]) * (1.0 / len);
            return {path[i] + t * std::min(s, len), t};
        }
        s -= len;
    }
    return {path.front(), {1, 0}};
}

// Intersections of the circle (c, rad) with every boundary segment of the region.
std::vector<Point2> circle_hits(const Region& r, Point2 c, double rad) {
    std::vector<Point2> out;
    auto ring_hits = [&](const std::vector<Point2>& ring) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Point2 a = ring[i], d = ring[(i + 1) % ring.size()] - a;
            const Point2 f = a - c;
            const double A = dot(d, d), B = 2 * dot(f, d), C = dot(f, f) - rad * rad;
            const double disc = B * B - 4 * A * C;
            if (A <= 0 || disc < 0) continue;
            const double sq = std::sqrt(disc);
            for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
                if (t >= 0 && t <= 1) out.push_back(a + d * t);
        }
    };
    ring_hits(r.outer.ring);
    for (const auto& h : r.holes) ring_hits(h.ring);
    return out;
}

std::optional<Point2> cross_point(Point2 a, Point2 b, Point2 c, Point2 d) {
    auto ip = segment_intersection_params({a, b}, {c, d});
    if (!ip || ip->first <= 0 || ip->first >= 1) return std::nullopt;
    return a + (b - a) * ip->first;
}

}  // namespace

std::size_t SupportPlan::loop_count() const {
    std::size_t n = 0;
    for (const auto& p : paths) n += p.supported ? 1 : 0;
    return n;
}

SupportPlan support_perimeter(const Region& r, const Region& rtilde, const std::vector<BoundaryPath>& unprinted, const PrintConfig& cfg) {
    (void)rtilde;
    SupportPlan plan;
    const double rad = cfg.extruder_radius;
    const double two_r = 2 * rad;
    int too_short = 0;
    for (const auto& path : unprinted) {
        SupportPath sp;
        sp.path = path;
        const double L = path.length();
        sp.eta = std::max(0, static_cast<int>(std::ceil(L / two_r - 1e-12)) - 2);
        sp.delta = two_r * (sp.eta + 2) - L;
        sp.gap = (two_r - sp.delta) / (sp.eta + 1);
        if (sp.eta == 0 || path.points.size() < 2) {
            ++too_short;
            plan.paths.push_back(std::move(sp));
            continue;
        }
        const double spacing = L / (sp.eta + 1);
        for (int j = 1; j <= sp.eta; ++j) {
            const auto [c, t] = at_arclength(path.points, j * spacing);
            const Point2 n = perp_left(t);  // the region lies to the right of the path
            SupportCircle sc{c, c + n * two_r, {}, {}};
            // Fallback for a straight boundary a distance r beyond the path.
            sc.corner_in = sc.apex - t * (std::sqrt(3.0) * rad) - n * rad;
            sc.corner_out = sc.apex + t * (std::sqrt(3.0) * rad) - n * rad;
            double best_in = INFINITY, best_out = INFINITY;
            for (Point2 h : circle_hits(r, sc.apex, two_r)) {
                const double along = dot(h - c, t);
                const double dist = distance(h, c);
                if (along < 0 && dist < best_in) best_in = dist, sc.corner_in = h;
                if (along >= 0 && dist < best_out) best_out = dist, sc.corner_out = h;
            }
            sp.circles.push_back(sc);
        }

        std::vector<Point2> chain{path.points.front()};
        for (std::size_t j = 0; j < sp.circles.size(); ++j) {
            const auto& sc = sp.circles[j];
            if (j > 0) {
                // Trim overlapping corners of neighbouring circles at their crossing.
                const Point2 prev_apex = sp.circles[j - 1].apex;
                if (auto x = cross_point(prev_apex, chain.back(), sc.corner_in, sc.apex)) {
                    chain.back() = *x;
                    chain.push_back(sc.apex);
                    chain.push_back(sc.corner_out);
                    continue;
                }
            }
            chain.push_back(sc.corner_in);
            chain.push_back(sc.apex);
            chain.push_back(sc.corner_out);
        }
        chain.push_back(path.points.back());
        for (auto it = path.points.rbegin() + 1; it + 1 != path.points.rend(); ++it) chain.push_back(*it);
        sp.loop = std::move(chain);

        std::vector<Segment> segs;
        for (std::size_t i = 0; i < sp.loop.size(); ++i) segs.push_back({sp.loop[i], sp.loop[(i + 1) % sp.loop.size()]});
        sp.simple = proper_crossings(segs).empty();
        sp.supported = true;
        if (!sp.simple) plan.warnings.push_back("support loop on loop " + std::to_string(path.loop) + " self-intersects");
        plan.paths.push_back(std::move(sp));
    }
    if (too_short > 0) {
        std::ostringstream msg;
        msg << too_short << " unprinted boundary path(s) shorter than " << 2 * two_r << " mm left without support";
        plan.warnings.push_back(msg.str());
    }
    return plan;
}

}  // namespace eulerfill
