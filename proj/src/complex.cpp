#include "eulerfill/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "spatial.hpp"

namespace eulerfill {

const char* to_string(FaceRole role) {
    switch (role) {
        case FaceRole::Interior: return "interior";
        case FaceRole::Hole: return "hole";
        case FaceRole::Outside: return "outside";
    }
    return "?";
}

const char* to_string(FaceClass cls) {
    switch (cls) {
        case FaceClass::None: return "none";
        case FaceClass::Class1: return "class1";
        case FaceClass::Class2: return "class2";
        case FaceClass::Class3: return "class3";
    }
    return "?";
}

std::size_t CellComplex::count_faces(FaceRole role) const {
    return static_cast<std::size_t>(std::count_if(faces.begin(), faces.end(), [&](const Face& f) { return f.role == role; }));
}

void CellComplex::index() {
    vertex_edges_.assign(vertices.size(), {});
    edge_lookup_.clear();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& ed = edges[e];
        vertex_edges_[ed.u].push_back(e);
        vertex_edges_[ed.v].push_back(e);
        edge_lookup_[std::minmax(ed.u, ed.v)] = e;
    }
}

int CellComplex::find_edge(int a, int b) const {
    auto it = edge_lookup_.find(std::minmax(a, b));
    return it == edge_lookup_.end() ? -1 : it->second;
}

std::vector<int> CellComplex::cycle_edges(const std::vector<int>& cycle) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cycle.size(); ++i) out.push_back(find_edge(cycle[i], cycle[(i + 1) % cycle.size()]));
    return out;
}

std::vector<int> CellComplex::face_edges(int f) const {
    std::vector<int> out;
    for (const auto& c : faces[f].cycles) {
        auto e = cycle_edges(c);
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

std::vector<Point2> CellComplex::ring(const std::vector<int>& cycle) const {
    std::vector<Point2> out;
    for (int v : cycle) out.push_back(vertices[v]);
    return out;
}

std::vector<Segment> CellComplex::segments() const {
    std::vector<Segment> out;
    for (const auto& e : edges) out.push_back({vertices[e.u], vertices[e.v]});
    return out;
}

double CellComplex::total_edge_length() const {
    double s = 0;
    for (const auto& e : edges) s += distance(vertices[e.u], vertices[e.v]);
    return s;
}

std::vector<std::vector<int>> CellComplex::components() const {
    std::vector<int> comp(vertices.size(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < static_cast<int>(vertices.size()); ++s) {
        if (comp[s] >= 0 || vertex_edges_[s].empty()) continue;
        std::vector<int> stack{s}, members;
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int e : vertex_edges_[v]) {
                const int w = other_end(e, v);
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    stack.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

int CellComplex::outside_face() const {
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        if (faces[f].role == FaceRole::Outside) return f;
    return kNoFace;
}

CellComplex complex_from_graph(std::vector<Point2> vertices, const std::vector<std::pair<int, int>>& edge_list) {
    CellComplex k;
    k.vertices = std::move(vertices);
    for (auto [u, v] : edge_list) {
        if (u == v) throw InvalidComplex("self-loop edge");
        k.edges.push_back({u, v, {kNoFace, kNoFace}});
    }
    k.index();
    const int nh = 2 * static_cast<int>(k.edges.size());
    auto origin = [&](int h) { return h % 2 == 0 ? k.edges[h / 2].u : k.edges[h / 2].v; };
    auto target = [&](int h) { return h % 2 == 0 ? k.edges[h / 2].v : k.edges[h / 2].u; };

    // Outgoing half-edges per vertex in counter-clockwise angular order.
    std::vector<std::vector<int>> out(k.vertices.size());
    for (int h = 0; h < nh; ++h) out[origin(h)].push_back(h);
    std::vector<int> pos(nh);
    for (auto& list : out) {
        std::sort(list.begin(), list.end(), [&](int a, int b) {
            const Point2 da = k.vertices[target(a)] - k.vertices[origin(a)];
            const Point2 db = k.vertices[target(b)] - k.vertices[origin(b)];
            return std::atan2(da.y, da.x) < std::atan2(db.y, db.x);
        });
        for (std::size_t i = 0; i < list.size(); ++i) pos[list[i]] = static_cast<int>(i);
    }
    auto next = [&](int h) {
        const int twin = h ^ 1;
        const auto& list = out[target(h)];
        return list[(pos[twin] + list.size() - 1) % list.size()];
    };

    const double eps = k.tolerance();
    std::vector<int> face_of(nh, -1);
    std::vector<std::vector<int>> cycles, cycle_halfedges;
    for (int h = 0; h < nh; ++h) {
        if (face_of[h] >= 0) continue;
        std::vector<int> cyc, hs;
        for (int g = h; face_of[g] < 0; g = next(g)) {
            face_of[g] = static_cast<int>(cycles.size());
            cyc.push_back(origin(g));
            hs.push_back(g);
        }
        cycles.push_back(std::move(cyc));
        cycle_halfedges.push_back(std::move(hs));
    }

    // Positive cycles bound faces. Negative cycles are outer boundaries of a component and
    // belong either to the smallest positive cycle (of another component) enclosing them, or to Outside.
    std::vector<double> area(cycles.size());
    for (std::size_t c = 0; c < cycles.size(); ++c) area[c] = ring_signed_area(k.ring(cycles[c]));
    std::vector<int> cycle_face(cycles.size(), -1);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (area[c] > eps * ring_perimeter(k.ring(cycles[c]))) {
            cycle_face[c] = static_cast<int>(k.faces.size());
            k.faces.push_back({{cycles[c]}, FaceRole::Hole, FaceClass::None});
        }
    }
    const auto comps = k.components();
    std::vector<int> comp_of(k.vertices.size(), -1);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
    int outside = -1;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (cycle_face[c] >= 0) continue;
        int host = -1;
        double host_area = std::numeric_limits<double>::infinity();
        const Point2 probe = k.vertices[cycles[c][0]];
        for (std::size_t d = 0; d < cycles.size(); ++d) {
            if (cycle_face[d] < 0 || comp_of[cycles[d][0]] == comp_of[cycles[c][0]] || area[d] >= host_area) continue;
            if (locate_in_ring(probe, k.ring(cycles[d]), eps) == Containment::Inside) {
                host = cycle_face[d];
                host_area = area[d];
            }
        }
        if (host < 0) {
            if (outside < 0) {
                outside = static_cast<int>(k.faces.size());
                k.faces.push_back({{}, FaceRole::Outside, FaceClass::None});
            }
            host = outside;
        }
        k.faces[host].cycles.push_back(cycles[c]);
        cycle_face[c] = host;
    }
    // Keep Outside last so face ids of bounded faces are stable under re-tracing.
    if (outside >= 0 && outside != static_cast<int>(k.faces.size()) - 1) {
        std::swap(k.faces[outside], k.faces.back());
        const int last = static_cast<int>(k.faces.size()) - 1;
        for (auto& f : cycle_face) f = f == outside ? last : (f == last ? outside : f);
    }
    for (int h = 0; h < nh; ++h) k.edges[h / 2].faces[h % 2] = cycle_face[face_of[h]];
    return k;
}

namespace {

std::vector<int> canonical(std::vector<int> cycle) {
    std::sort(cycle.begin(), cycle.end());
    return cycle;
}

}  // namespace

void reorder_faces(CellComplex& k, const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
    std::vector<Face> faces;
    std::vector<FaceProvenance> prov;
    for (int old : perm) {
        faces.push_back(k.faces[old]);
        if (!k.provenance.empty()) prov.push_back(k.provenance[old]);
    }
    k.faces = std::move(faces);
    k.provenance = std::move(prov);
    for (auto& e : k.edges)
        for (auto& f : e.faces)
            if (f >= 0) f = inv[f];
}

CellComplex build_complex(const std::vector<Polygon>& faces, const Region& domain) {
    BoundingBox box;
    for (const auto& f : faces)
        for (auto p : f.ring) box.extend(p);
    const double eps = Tolerance::for_extent(box.diagonal()).eps;
    std::vector<Point2> pts;
    detail::VertexPool pool(pts, eps);
    std::vector<std::vector<int>> rings;
    std::set<std::pair<int, int>> edge_set;
    std::vector<std::pair<int, int>> edge_list;
    for (const auto& f : faces) {
        signed_area(f);
        std::vector<int> ids;
        for (auto p : f.ring) {
            const int id = pool.insert(p);
            if (ids.empty() || ids.back() != id) ids.push_back(id);
        }
        while (ids.size() > 1 && ids.front() == ids.back()) ids.pop_back();
        if (ids.size() < 3) throw DegenerateGeometry("face collapses under tolerance snapping");
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const auto key = std::minmax(ids[i], ids[(i + 1) % ids.size()]);
            if (edge_set.insert(key).second) edge_list.push_back(key);
        }
        rings.push_back(std::move(ids));
    }
    if (!domain.empty())
        for (auto p : pts)
            if (locate_in_region(p, domain, 1e3 * eps) == Containment::Outside) throw InvalidComplex("face vertex outside the domain");

    std::vector<Segment> segs;
    for (auto [u, v] : edge_list) segs.push_back({pts[u], pts[v]});
    if (!proper_crossings(segs, eps).empty()) throw InvalidComplex("face edges cross");
    detail::SegmentGrid grid(segs);
    for (int v = 0; v < static_cast<int>(pts.size()); ++v) {
        BoundingBox b;
        b.extend(pts[v]);
        for (int e : grid.query(b, eps)) {
            const auto [a, c] = edge_list[e];
            if (a == v || c == v) continue;
            if (point_segment_distance(pts[v], segs[e]) <= eps) throw InvalidComplex("T-junction: vertex lies inside an edge");
        }
    }

    CellComplex k = complex_from_graph(std::move(pts), edge_list);
    std::map<std::vector<int>, int> traced;
    for (int f = 0; f < static_cast<int>(k.faces.size()); ++f)
        if (k.faces[f].role != FaceRole::Outside && k.faces[f].cycles.size() == 1) traced[canonical(k.faces[f].cycles[0])] = f;
    std::vector<int> perm;
    std::vector<bool> used(k.faces.size(), false);
    for (const auto& r : rings) {
        auto it = traced.find(canonical(r));
        if (it == traced.end() || used[it->second]) throw InvalidComplex("overlapping faces");
        used[it->second] = true;
        k.faces[it->second].role = FaceRole::Interior;
        perm.push_back(it->second);
    }
    for (int f = 0; f < static_cast<int>(k.faces.size()); ++f)
        if (!used[f]) perm.push_back(f);
    reorder_faces(k, perm);
    return k;
}

ValidationReport validate_input(const CellComplex& k) {
    ValidationReport r;
    auto face_left_of = [&](int e, int v) { return k.edges[e].u == v ? k.edges[e].faces[0] : k.edges[e].faces[1]; };
    for (int v = 0; v < static_cast<int>(k.vertices.size()); ++v) {
        std::set<int> complement;
        for (int e : k.vertex_edges(v))
            for (int f : k.edges[e].faces)
                if (f >= 0 && !k.is_interior(f)) complement.insert(f);
        if (complement.size() > 1) r.holes_disjoint = false;

        // Angular walk: count maximal runs of interior wedges around v.
        auto inc = k.vertex_edges(v);
        if (inc.size() < 2) continue;
        std::sort(inc.begin(), inc.end(), [&](int a, int b) {
            const Point2 da = k.vertices[k.other_end(a, v)] - k.vertices[v];
            const Point2 db = k.vertices[k.other_end(b, v)] - k.vertices[v];
            return std::atan2(da.y, da.x) < std::atan2(db.y, db.x);
        });
        int runs = 0;
        for (std::size_t i = 0; i < inc.size(); ++i) {
            const bool cur = k.is_interior(face_left_of(inc[i], v));
            const bool prev = k.is_interior(face_left_of(inc[(i + inc.size() - 1) % inc.size()], v));
            if (cur && !prev) ++runs;
        }
        if (runs > 1) r.articulation_vertices.push_back(v);
    }
    for (int f = 0; f < static_cast<int>(k.faces.size()); ++f) {
        if (!k.is_interior(f)) continue;
        const auto es = k.face_edges(f);
        std::map<int, int> shared_with_hole;
        std::vector<bool> on_outside(es.size());
        for (std::size_t i = 0; i < es.size(); ++i) {
            const auto& ed = k.edges[es[i]];
            const int other = ed.faces[0] == f ? ed.faces[1] : ed.faces[0];
            if (other >= 0 && k.faces[other].role == FaceRole::Hole) ++shared_with_hole[other];
            on_outside[i] = other >= 0 && k.faces[other].role == FaceRole::Outside;
        }
        for (auto [h, n] : shared_with_hole)
            if (n > 1) r.hole_single_facet_violations.push_back({f, h});
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::size_t j = (i + 1) % es.size();
            if (es.size() > 1 && on_outside[i] && on_outside[j]) r.adjacent_boundary_edge_violations.push_back({f, {es[i], es[j]}});
        }
    }
    return r;
}

}  // namespace eulerfill
