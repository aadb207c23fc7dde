#include <algorithm>
#include <set>

#include "eulerfill/toolpath.hpp"
#include "spatial.hpp"

namespace eulerfill {

const char* to_string(Shrinkability s) {
    switch (s) {
        case Shrinkability::Shrinkable: return "shrinkable";
        case Shrinkability::ShrinkableTopological: return "shrinkable-topological";
        case Shrinkability::Unshrinkable: return "unshrinkable";
    }
    return "?";
}

std::size_t FeasibilityReport::forced_travel_count() const {
    std::set<int> arcs;
    for (const auto& f : forced_travel) arcs.insert(f.arc);
    return arcs.size();
}

namespace {

bool is_boundary_edge(const CellComplex& k, int e) {
    return !k.is_interior(k.edges[e].faces[0]) || !k.is_interior(k.edges[e].faces[1]);
}

// Parameter range of edge e lying closer than `reach` to some face edge that does not touch it.
std::optional<std::pair<double, double>> narrow_range(const CellComplex& k, int e, const std::vector<int>& face_edges, double reach) {
    const auto& ed = k.edges[e];
    const Point2 a = k.vertices[ed.u], b = k.vertices[ed.v];
    constexpr int kSamples = 64;
    double lo = 2, hi = -1;
    for (int i = 0; i <= kSamples; ++i) {
        const double t = static_cast<double>(i) / kSamples;
        const Point2 p = a + (b - a) * t;
        for (int f : face_edges) {
            const auto& g = k.edges[f];
            if (f == e || g.u == ed.u || g.u == ed.v || g.v == ed.u || g.v == ed.v) continue;
            if (point_segment_distance(p, {k.vertices[g.u], k.vertices[g.v]}) < reach) {
                lo = std::min(lo, t);
                hi = std::max(hi, t);
                break;
            }
        }
    }
    if (hi < lo) return std::nullopt;
    return std::make_pair(lo, hi);
}

}  // namespace

FeasibilityReport check_extruder_feasibility(const CellComplex& k, const PrintConfig& cfg) {
    FeasibilityReport rep;
    const double r = cfg.extruder_radius;
    const auto segs = k.segments();
    for (int e = 0; e < static_cast<int>(segs.size()); ++e)
        if (distance(segs[e].a, segs[e].b) <= 2 * r + cfg.cover_slack()) rep.covered_edges.push_back(e);

    detail::SegmentGrid grid(segs, 2 * r);
    for (int e = 0; e < static_cast<int>(segs.size()); ++e) {
        const auto& a = k.edges[e];
        for (int f : grid.query(segs[e], 2 * r)) {
            if (f <= e) continue;
            const auto& b = k.edges[f];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
            if (segment_segment_distance(segs[e], segs[f]) < 2 * r) rep.collision_pairs.push_back({e, f});
        }
    }

    for (int f = 0; f < static_cast<int>(k.num_faces()); ++f) {
        if (!k.is_interior(f)) continue;
        const auto fe = k.face_edges(f);
        if (std::none_of(fe.begin(), fe.end(), [&](int e) { return is_boundary_edge(k, e); })) continue;
        Shrinkability s = Shrinkability::Shrinkable;
        try {
            const auto off = mitered_offset(Polygon{k.face_ring(f)}, r);
            if (off.pieces.empty()) {
                s = Shrinkability::Unshrinkable;
            } else if (off.pieces.size() > 1) {
                s = Shrinkability::ShrinkableTopological;
            }
        } catch (const std::exception&) {
            s = Shrinkability::Unshrinkable;
        }
        rep.boundary_faces.push_back({f, s});
    }
    return rep;
}

FeasibilityReport check_extruder_feasibility(const PatchedComplex& p, const PrintConfig& cfg) {
    const CellComplex& k = p.complex;
    FeasibilityReport rep = check_extruder_feasibility(k, cfg);
    const double reach = 2 * cfg.extruder_radius;
    std::set<int> forced_arcs;
    for (const auto& [f, s] : rep.boundary_faces) {
        if (s == Shrinkability::Shrinkable) continue;
        const auto fe = k.face_edges(f);
        // The patch arc with the most length on this face is the one left unprinted.
        std::map<int, double> arc_len;
        for (int e : fe)
            if (p.arc_of_edge[e] >= 0) arc_len[p.arc_of_edge[e]] += distance(k.vertices[k.edges[e].u], k.vertices[k.edges[e].v]);
        if (arc_len.empty()) continue;
        const int arc = std::max_element(arc_len.begin(), arc_len.end(), [](auto& a, auto& b) { return a.second < b.second; })->first;
        if (!forced_arcs.insert(arc).second) continue;
        for (int e : fe) {
            if (p.arc_of_edge[e] != arc) continue;
            if (s == Shrinkability::Unshrinkable) {
                rep.forced_travel.push_back({e, 0.0, 1.0, arc});
            } else if (auto range = narrow_range(k, e, fe, reach)) {
                rep.forced_travel.push_back({e, range->first, range->second, arc});
            }
        }
    }
    return rep;
}

}  // namespace eulerfill
