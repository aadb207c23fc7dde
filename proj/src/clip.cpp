#include <algorithm>
#include <numeric>
#include <set>

#include "eulerfill/slicing.hpp"
#include "euler_internal.hpp"
#include "spatial.hpp"

namespace eulerfill {
namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<Point2>> region_loops(const Region& r) {
    std::vector<std::vector<Point2>> loops{r.outer.ring};
    for (const auto& h : r.holes) loops.push_back(h.ring);
    return loops;
}

struct LoopSegments {
    std::vector<Segment> segs;
    std::vector<std::pair<int, int>> owner;  // (loop, index)
    std::vector<std::vector<double>> cum;    // cumulative arclength per loop vertex
    std::vector<double> length;
};

LoopSegments loop_segments(const std::vector<std::vector<Point2>>& loops) {
    LoopSegments ls;
    for (int l = 0; l < static_cast<int>(loops.size()); ++l) {
        const auto& ring = loops[l];
        std::vector<double> cum{0.0};
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Point2 a = ring[i], b = ring[(i + 1) % ring.size()];
            ls.segs.push_back({a, b});
            ls.owner.push_back({l, static_cast<int>(i)});
            cum.push_back(cum.back() + distance(a, b));
        }
        ls.length.push_back(cum.back());
        ls.cum.push_back(std::move(cum));
    }
    return ls;
}

bool degenerate(const CellComplex& k, const LoopSegments& ls, double tol) {
    detail::SegmentGrid rgrid(ls.segs);
    for (const auto& p : k.vertices) {
        BoundingBox b;
        b.extend(p);
        for (int s : rgrid.query(b, tol))
            if (point_segment_distance(p, ls.segs[s]) <= tol) return true;
    }
    const auto ksegs = k.segments();
    detail::SegmentGrid kgrid(ksegs);
    for (const auto& s : ls.segs) {
        BoundingBox b;
        b.extend(s.a);
        for (int e : kgrid.query(b, tol))
            if (point_segment_distance(s.a, ksegs[e]) <= tol) return true;
    }
    return false;
}

}  // namespace

double BoundaryPath::length() const {
    double s = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) s += distance(points[i], points[i + 1]);
    return s;
}

ClippedComplex clip(const CellComplex& k, const Region& region_in) {
    ClippedComplex out;
    Region region = region_in.normalized();
    if (region.empty()) {
        out.complex = complex_from_graph({}, {});
        return out;
    }
    BoundingBox box = k.bbox();
    for (auto p : region.outer.ring) box.extend(p);
    const double eps = Tolerance::for_extent(box.diagonal()).eps;
    const double tol = 10 * eps;

    auto loops = region_loops(region);
    auto ls = loop_segments(loops);
    for (int attempt = 0; attempt < 8 && degenerate(k, ls, tol); ++attempt) {
        Region shrunk = minkowski_inset(region, 2 * eps * (1 << attempt) * 10, 8);
        if (shrunk.empty()) break;
        region = shrunk;
        loops = region_loops(region);
        ls = loop_segments(loops);
        ++out.perturbations;
    }
    out.region = region;
    out.loops = loops;

    std::vector<Point2> pts = k.vertices;
    struct Hit {
        int loop;
        double s;
    };
    std::map<int, Hit> hit_of;
    std::vector<std::pair<int, int>> kept;
    detail::SegmentGrid rgrid(ls.segs);
    for (const auto& ed : k.edges) {
        const Segment seg{k.vertices[ed.u], k.vertices[ed.v]};
        struct Cut {
            double t;
            Point2 p;
            int loop;
            double s;
        };
        std::vector<Cut> cuts;
        for (int r : rgrid.query(seg, tol)) {
            auto ip = segment_intersection_params(seg, ls.segs[r]);
            if (!ip) continue;
            const auto [l, i] = ls.owner[r];
            const Point2 p = seg.a + (seg.b - seg.a) * ip->first;
            cuts.push_back({ip->first, p, l, ls.cum[l][i] + ip->second * distance(ls.segs[r].a, ls.segs[r].b)});
        }
        std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.t < b.t; });
        std::vector<int> ids{ed.u};
        std::vector<double> ts{0.0};
        for (const auto& c : cuts) {
            if (c.t - ts.back() <= 1e-12) continue;  // the same crossing found on two adjacent loop segments
            const int id = static_cast<int>(pts.size());
            pts.push_back(c.p);
            hit_of[id] = {c.loop, c.s};
            ids.push_back(id);
            ts.push_back(c.t);
        }
        ids.push_back(ed.v);
        ts.push_back(1.0);
        for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
            const Point2 mid = seg.a + (seg.b - seg.a) * (0.5 * (ts[i] + ts[i + 1]));
            if (locate_in_region(mid, region, eps) == Containment::Inside) kept.push_back({ids[i], ids[i + 1]});
        }
    }

    // Compact to used vertices.
    std::vector<int> deg(pts.size(), 0);
    for (auto [a, b] : kept) ++deg[a], ++deg[b];
    std::vector<int> remap(pts.size(), -1);
    std::vector<Point2> used;
    for (std::size_t v = 0; v < pts.size(); ++v)
        if (deg[v] > 0) {
            remap[v] = static_cast<int>(used.size());
            used.push_back(pts[v]);
        }
    for (auto& [a, b] : kept) a = remap[a], b = remap[b];
    out.complex = complex_from_graph(used, kept);
    auto& c = out.complex;

    std::map<std::vector<int>, int> old_faces;
    for (int f = 0; f < static_cast<int>(k.num_faces()); ++f) {
        if (!k.is_interior(f)) continue;
        std::vector<int> cyc;
        bool ok = true;
        for (int v : k.faces[f].cycles.front()) {
            if (remap[v] < 0) ok = false;
            cyc.push_back(remap[v]);
        }
        if (ok) old_faces[detail::canonical_cycle(cyc)] = f;
    }
    c.provenance.assign(c.num_faces(), {});
    for (int f = 0; f < static_cast<int>(c.num_faces()); ++f) {
        auto& face = c.faces[f];
        if (face.role == FaceRole::Outside) continue;
        auto it = old_faces.find(detail::canonical_cycle(face.cycles.front()));
        if (it == old_faces.end() || face.cycles.size() != 1) {
            face.role = FaceRole::Hole;
            continue;
        }
        face.role = FaceRole::Interior;
        face.cls = k.faces[it->second].cls;
        if (!k.provenance.empty()) c.provenance[f] = k.provenance[it->second];
    }

    for (const auto& [v, h] : hit_of)
        if (remap[v] >= 0) out.hits.push_back({remap[v], h.loop, h.s});
    std::sort(out.hits.begin(), out.hits.end(), [](const BoundaryHit& a, const BoundaryHit& b) {
        return a.loop != b.loop ? a.loop < b.loop : a.s < b.s;
    });
    for (const auto& h : out.hits)
        if (c.degree(h.vertex) % 2) out.S.push_back(h.vertex);

    out.component_map.assign(c.num_vertices(), -1);
    const auto comps = c.components();
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
        std::size_t edges = 0;
        bool path_like = true;
        for (int v : comps[i]) {
            out.component_map[v] = i;
            edges += c.vertex_edges(v).size();
            if (c.degree(v) > 2) path_like = false;
        }
        edges /= 2;
        if (path_like && edges + 1 == comps[i].size()) out.simple_path_components.push_back(i);
    }
    return out;
}

PatchedComplex patch(const ClippedComplex& clipped) {
    PatchedComplex out;
    const CellComplex& k = clipped.complex;
    out.s_count = clipped.S.size();
    const auto ls = loop_segments(clipped.loops);
    std::set<int> odd(clipped.S.begin(), clipped.S.end());
    std::map<int, BoundaryHit> hit_of;
    for (const auto& h : clipped.hits) hit_of[h.vertex] = h;

    const int ncomp = static_cast<int>(k.components().size());
    UnionFind uf(std::max(ncomp, 1));
    auto comp = [&](int v) { return clipped.component_map[v]; };
    auto count_roots = [&](UnionFind& u) {
        std::set<int> roots;
        for (int i = 0; i < ncomp; ++i) roots.insert(u.find(i));
        return roots.size();
    };
    auto arc_length = [&](const BoundaryHit& a, const BoundaryHit& b) {
        const double L = ls.length[a.loop];
        double d = b.s - a.s;
        if (d < 0) d += L;
        return d;
    };

    struct ArcPlan {
        int from, to;
    };
    std::vector<ArcPlan> chosen;
    std::vector<ArcPlan> leftover;
    for (int l = 0; l < static_cast<int>(clipped.loops.size()); ++l) {
        std::vector<int> s_l;
        for (const auto& h : clipped.hits)
            if (h.loop == l && odd.count(h.vertex)) s_l.push_back(h.vertex);
        const std::size_t n = s_l.size();
        if (n < 2) {
            out.plan.choice.push_back('A');
            continue;
        }
        auto pairs_for = [&](char opt) {
            std::vector<ArcPlan> ps;
            const std::size_t start = opt == 'A' ? 0 : 1;
            for (std::size_t i = start; i + 1 < n + start && ps.size() < n / 2; i += 2) ps.push_back({s_l[i % n], s_l[(i + 1) % n]});
            return ps;
        };
        auto evaluate = [&](const std::vector<ArcPlan>& ps) {
            UnionFind trial = uf;
            double len = 0;
            for (const auto& p : ps) {
                trial.unite(comp(p.from), comp(p.to));
                len += arc_length(hit_of[p.from], hit_of[p.to]);
            }
            return std::make_pair(count_roots(trial), len);
        };
        const auto a = pairs_for('A'), b = pairs_for('B');
        const auto ea = evaluate(a), eb = evaluate(b);
        const bool pick_b = eb.first < ea.first || (eb.first == ea.first && eb.second < ea.second - 1e-12);
        const auto& ps = pick_b ? b : a;
        out.plan.choice.push_back(pick_b ? 'B' : 'A');
        for (const auto& p : ps) {
            uf.unite(comp(p.from), comp(p.to));
            chosen.push_back(p);
            out.plan.pairing.push_back({p.from, p.to});
        }
        for (const auto& p : pairs_for(pick_b ? 'A' : 'B')) leftover.push_back(p);
        if (n % 2) leftover.push_back({s_l.back(), s_l.front()});
    }

    // Boundary polylines between two hits, walking forward along the loop.
    auto polyline = [&](int from, int to) {
        const auto& a = hit_of[from];
        const auto& b = hit_of[to];
        const auto& ring = clipped.loops[a.loop];
        const auto& cum = ls.cum[a.loop];
        const double L = ls.length[a.loop];
        const double span = arc_length(a, b);
        std::vector<std::pair<Point2, int>> pts{{k.vertices[from], from}};
        struct Stop {
            double off;
            Point2 p;
            int id;
        };
        std::vector<Stop> stops;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            double off = cum[i] - a.s;
            if (off < 0) off += L;
            if (off > 1e-12 && off < span - 1e-12) stops.push_back({off, ring[i], -1});
        }
        for (const auto& h : clipped.hits) {
            if (h.loop != a.loop || h.vertex == from || h.vertex == to) continue;
            double off = h.s - a.s;
            if (off < 0) off += L;
            if (off > 0 && off < span) stops.push_back({off, k.vertices[h.vertex], h.vertex});
        }
        std::sort(stops.begin(), stops.end(), [](const Stop& x, const Stop& y) { return x.off < y.off; });
        for (const auto& s : stops) pts.push_back({s.p, s.id});
        pts.push_back({k.vertices[to], to});
        return pts;
    };

    std::vector<Point2> verts = k.vertices;
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : k.edges) edges.push_back({e.u, e.v});
    std::map<std::pair<int, int>, int> arc_edges;
    for (const auto& p : chosen) {
        const auto poly = polyline(p.from, p.to);
        BoundaryPath bp{hit_of[p.from].loop, p.from, p.to, {}};
        std::vector<int> ids;
        for (const auto& [pt, id] : poly) {
            bp.points.push_back(pt);
            if (id >= 0) {
                ids.push_back(id);
            } else {
                ids.push_back(static_cast<int>(verts.size()));
                verts.push_back(pt);
            }
        }
        const int arc = static_cast<int>(out.plan.arcs.size());
        for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
            if (ids[i] == ids[i + 1]) continue;
            edges.push_back({ids[i], ids[i + 1]});
            arc_edges[std::minmax(ids[i], ids[i + 1])] = arc;
        }
        out.plan.arcs.push_back(std::move(bp));
    }
    for (const auto& p : leftover) {
        BoundaryPath bp{hit_of[p.from].loop, p.from, p.to, {}};
        for (const auto& [pt, id] : polyline(p.from, p.to)) bp.points.push_back(pt);
        out.plan.unpatched.push_back(std::move(bp));
    }

    out.complex = complex_from_graph(verts, edges);
    auto& c = out.complex;
    std::map<std::vector<int>, int> old_faces;
    for (int f = 0; f < static_cast<int>(k.num_faces()); ++f)
        if (k.faces[f].role != FaceRole::Outside) old_faces[detail::canonical_cycle(k.faces[f].cycles.front())] = f;
    c.provenance.assign(c.num_faces(), {});
    for (int f = 0; f < static_cast<int>(c.num_faces()); ++f) {
        auto& face = c.faces[f];
        if (face.role == FaceRole::Outside) continue;
        auto it = old_faces.find(detail::canonical_cycle(face.cycles.front()));
        if (it != old_faces.end() && face.cycles.size() == k.faces[it->second].cycles.size()) {
            face.role = k.faces[it->second].role;
            face.cls = k.faces[it->second].cls;
            if (!k.provenance.empty()) c.provenance[f] = k.provenance[it->second];
            continue;
        }
        bool touches_arc = false;
        for (int e : c.face_edges(f))
            if (arc_edges.count(std::minmax(c.edges[e].u, c.edges[e].v))) touches_arc = true;
        // A face closed by arcs lies inside the region unless it wraps around one of its holes.
        const auto ring = c.face_ring(f);
        const double eps = c.tolerance();
        bool wraps_hole = false;
        for (const auto& h : clipped.region.holes)
            if (locate_in_ring(h.ring.front(), ring, eps) == Containment::Inside) wraps_hole = true;
        face.role = touches_arc && !wraps_hole ? FaceRole::Interior : FaceRole::Hole;
        if (face.role == FaceRole::Interior) out.plan.added_faces.push_back(f);
    }
    out.arc_of_edge.assign(c.num_edges(), -1);
    for (int e = 0; e < static_cast<int>(c.num_edges()); ++e) {
        auto it = arc_edges.find(std::minmax(c.edges[e].u, c.edges[e].v));
        if (it != arc_edges.end()) out.arc_of_edge[e] = it->second;
    }
    out.components = static_cast<int>(c.components().size());
    return out;
}

}  // namespace eulerfill
