// Euler transformation of a polygonal complex.
//
// Every interior face is offset inward. Each corner w of a face f keeps a copy in
// the offset; hole and outside faces keep w itself. Connectors join the two copies
// of w on either side of every edge, and tracing the resulting plane graph yields
// the offset faces (Class 1), one quadrilateral per edge (Class 2) and one cell per
// vertex (Class 3).

#include "eulerfill/euler.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "eulerfill/wavefront.hpp"
#include "euler_internal.hpp"

namespace eulerfill {
namespace detail {

std::vector<int> canonical_cycle(std::vector<int> c) {
    std::sort(c.begin(), c.end());
    return c;
}

std::vector<double> face_first_events(const CellComplex& k) {
    std::vector<double> out(k.num_faces(), std::numeric_limits<double>::infinity());
    for (int f = 0; f < static_cast<int>(k.num_faces()); ++f)
        if (k.is_interior(f)) out[f] = wavefront::first_event(k.face_ring(f));
    return out;
}

PassOutput transform_pass(const CellComplex& k, const std::vector<double>& d) {
    const int nf = static_cast<int>(k.num_faces());
    std::vector<Point2> pts;
    std::vector<std::pair<int, int>> origin;
    std::vector<int> orig_id(k.num_vertices(), -1);
    auto original = [&](int w) {
        if (orig_id[w] < 0) {
            orig_id[w] = static_cast<int>(pts.size());
            pts.push_back(k.vertices[w]);
            origin.push_back({w, -1});
        }
        return orig_id[w];
    };
    std::map<std::tuple<int, int, int>, int> copy;  // (face, vertex, edge) -> output vertex
    std::map<std::pair<int, int>, int> edge_index;
    std::vector<std::pair<int, int>> out_edges;
    auto add_edge = [&](int a, int b) {
        if (a == b) return;
        if (edge_index.try_emplace(std::minmax(a, b), static_cast<int>(out_edges.size())).second) out_edges.push_back(std::minmax(a, b));
    };

    struct FaceResult {
        wavefront::Result res;
        std::vector<int> out_of;
    };
    std::vector<FaceResult> results(nf);
    std::vector<std::vector<int>> piece_cycles;
    std::vector<int> piece_face;
    std::vector<std::set<int>> collapsed(nf);  // global edges collapsed in each face's offset
    for (int f = 0; f < nf; ++f) {
        if (!k.is_interior(f)) continue;
        if (k.faces[f].cycles.size() != 1) throw InvalidComplex("interior face with an inner boundary");
        const auto& cyc = k.faces[f].cycles.front();
        const int n = static_cast<int>(cyc.size());
        auto& fr = results[f];
        fr.res = wavefront::simulate(k.ring(cyc), d[f]);
        auto global_edge = [&](int le) { return k.find_edge(cyc[le], cyc[(le + 1) % n]); };
        for (const auto& v : fr.res.vertices) {
            fr.out_of.push_back(static_cast<int>(pts.size()));
            pts.push_back(v.pos);
            origin.push_back({v.attachments.empty() ? -1 : cyc[v.attachments.front().corner], f});
            for (const auto& a : v.attachments) copy[{f, cyc[a.corner], global_edge(a.edge)}] = fr.out_of.back();
        }
        for (int le = 0; le < n; ++le)
            if (fr.res.edge_collapsed[le]) collapsed[f].insert(global_edge(le));
        for (const auto& p : fr.res.pieces) {
            std::vector<int> c;
            for (int v : p.vertices) c.push_back(fr.out_of[v]);
            for (std::size_t i = 0; i < c.size(); ++i) add_edge(c[i], c[(i + 1) % c.size()]);
            piece_cycles.push_back(std::move(c));
            piece_face.push_back(f);
        }
        for (auto [a, b] : fr.res.bridges) add_edge(fr.out_of[a], fr.out_of[b]);
    }

    auto lookup = [&](int g, int w, int e) {
        if (!k.is_interior(g)) return original(w);
        auto it = copy.find({g, w, e});
        if (it == copy.end()) throw InternalInvariantViolation("face corner without an offset copy");
        return it->second;
    };
    for (int e = 0; e < static_cast<int>(k.num_edges()); ++e) {
        const auto& ed = k.edges[e];
        if (!k.is_interior(ed.faces[0]) || !k.is_interior(ed.faces[1])) add_edge(original(ed.u), original(ed.v));
    }
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> connector_sources;
    for (int e = 0; e < static_cast<int>(k.num_edges()); ++e) {
        const auto& ed = k.edges[e];
        if (!k.is_interior(ed.faces[0]) && !k.is_interior(ed.faces[1])) continue;
        for (int w : {ed.u, ed.v}) {
            const int a = lookup(ed.faces[0], w, e), b = lookup(ed.faces[1], w, e);
            if (a == b) continue;
            add_edge(a, b);
            connector_sources[std::minmax(a, b)].push_back({e, w});
        }
    }

    PassOutput po;
    CellComplex out = complex_from_graph(pts, out_edges);
    std::map<std::vector<int>, std::pair<FaceClass, int>> known;
    for (std::size_t i = 0; i < piece_cycles.size(); ++i) known[canonical_cycle(piece_cycles[i])] = {FaceClass::Class1, piece_face[i]};
    std::map<std::vector<int>, int> holes;
    for (int g = 0; g < nf; ++g) {
        if (k.faces[g].role != FaceRole::Hole) continue;
        std::vector<int> c;
        for (int w : k.faces[g].cycles.front()) c.push_back(original(w));
        holes[canonical_cycle(c)] = g;
    }
    out.provenance.assign(out.num_faces(), {});
    for (int f = 0; f < static_cast<int>(out.num_faces()); ++f) {
        auto& face = out.faces[f];
        if (face.role == FaceRole::Outside) continue;
        const auto key = canonical_cycle(face.cycles.front());
        if (auto it = holes.find(key); it != holes.end()) {
            face.role = FaceRole::Hole;
            continue;
        }
        face.role = FaceRole::Interior;
        if (auto it = known.find(key); it != known.end()) {
            face.cls = FaceClass::Class1;
            out.provenance[f] = {FaceClass::Class1, it->second.second};
            continue;
        }
        bool all_connectors = true;
        int source_edge = -1;
        int source_vertex = -1;
        for (int e : out.face_edges(f)) {
            auto it = connector_sources.find(std::minmax(out.edges[e].u, out.edges[e].v));
            if (it == connector_sources.end()) {
                all_connectors = false;
            } else if (source_edge < 0) {
                source_edge = it->second.front().first;
                source_vertex = it->second.front().second;
            }
        }
        face.cls = all_connectors ? FaceClass::Class3 : FaceClass::Class2;
        out.provenance[f] = {face.cls, all_connectors ? source_vertex : source_edge};
    }

    // Collapse bookkeeping.
    auto& rep = po.report;
    for (int f = 0; f < nf; ++f) {
        if (!k.is_interior(f)) continue;
        const auto& fr = results[f];
        const auto& cyc = k.faces[f].cycles.front();
        const int n = static_cast<int>(cyc.size());
        for (const auto& p : fr.res.pieces) {
            const std::size_t m = p.edges.size();
            for (std::size_t j = 0; j < m; ++j) {
                const int from = p.edges[j], to = p.edges[(j + 1) % m];
                int pi = 0, m_local = 0;
                bool all = true;
                for (int le = (from + 1) % n; le != to; le = (le + 1) % n) {
                    ++pi;
                    if (!fr.res.edge_collapsed[le]) all = false;
                    const int e = k.find_edge(cyc[le], cyc[(le + 1) % n]);
                    const auto& ed = k.edges[e];
                    const int other = ed.faces[0] == f ? ed.faces[1] : ed.faces[0];
                    if (k.is_interior(other) && collapsed[other].count(e)) ++m_local;
                }
                if (pi == 0 || !all) continue;
                const int mv = fr.out_of[p.vertices[(j + 1) % m]];
                rep.collapsed_runs.push_back({f, pi, mv, m_local, 2 * pi + 4 - m_local, out.degree(mv)});
            }
        }
        if (!fr.res.vanish_points.empty()) rep.vanished_faces.push_back(f);
        for (const auto& [corner, ends] : fr.res.splits)
            rep.splits.push_back({f, corner >= 0 ? cyc[corner] : -1,
                                  {ends.first >= 0 ? fr.out_of[ends.first] : -1, ends.second >= 0 ? fr.out_of[ends.second] : -1}});
    }
    for (int e = 0; e < static_cast<int>(k.num_edges()); ++e) {
        const auto& ed = k.edges[e];
        if (!k.is_interior(ed.faces[0]) || !k.is_interior(ed.faces[1])) continue;
        if (!collapsed[ed.faces[0]].count(e) || !collapsed[ed.faces[1]].count(e)) continue;
        const int a = lookup(ed.faces[0], ed.u, e), b = lookup(ed.faces[1], ed.u, e);
        rep.collapsed_class2.push_back({e, out.find_edge(a, b)});
    }
    for (int v = 0; v < static_cast<int>(out.num_vertices()); ++v)
        if (out.degree(v) % 2) rep.affected_odd_vertices.push_back(v);

    po.ec.complex = std::move(out);
    po.ec.vertex_origin = std::move(origin);
    return po;
}

}  // namespace detail

double min_first_event(const CellComplex& k) {
    const auto fe = detail::face_first_events(k);
    return *std::min_element(fe.begin(), fe.end());
}

double default_offset(const CellComplex& k) { return 0.25 * min_first_event(k); }

namespace {

void check_offset(const CellComplex& k, double d) {
    if (!(d > 0)) throw OffsetChangesGeometry("offset must be positive");
    const auto fe = detail::face_first_events(k);
    for (int f = 0; f < static_cast<int>(fe.size()); ++f)
        if (k.is_interior(f) && d >= fe[f] * (1 - 1e-9))
            throw OffsetChangesGeometry("offset " + std::to_string(d) + " reaches a skeleton event of face " + std::to_string(f) +
                                        " at " + std::to_string(fe[f]) + "; use the relaxed transform");
}

}  // namespace

EulerComplex euler_transform(const CellComplex& k, double d) {
    if (!validate_input(k).et_ready()) throw NotEulerReady("complex violates the transformation preconditions");
    check_offset(k, d);
    auto po = detail::transform_pass(k, std::vector<double>(k.num_faces(), d));
    po.ec.offset_d = d;
    return std::move(po.ec);
}

EulerComplex generalized_euler_transform(const CellComplex& k, double d, int m) {
    if (m < 1) throw std::invalid_argument("iteration count must be at least 1");
    if (!validate_input(k).ready_except_adjacent_boundary()) throw NotEulerReady("complex violates the transformation preconditions");
    check_offset(k, d);
    EulerComplex cur = detail::transform_pass(k, std::vector<double>(k.num_faces(), d)).ec;
    for (int pass = 2; pass <= m; ++pass) {
        const auto fe = detail::face_first_events(cur.complex);
        std::vector<double> per(fe.size());
        for (std::size_t f = 0; f < fe.size(); ++f) per[f] = std::min(d, 0.25 * fe[f]);
        cur = detail::transform_pass(cur.complex, per).ec;
    }
    cur.offset_d = d;
    cur.iterations = m;
    return cur;
}

std::pair<EulerComplex, CollapseReport> euler_transform_relaxed(const CellComplex& k, const std::vector<double>& d) {
    if (!validate_input(k).et_ready()) throw NotEulerReady("complex violates the transformation preconditions");
    if (d.size() != k.num_faces()) throw std::invalid_argument("need one offset per face");
    auto po = detail::transform_pass(k, d);
    po.ec.offset_d = *std::max_element(d.begin(), d.end());
    return {std::move(po.ec), std::move(po.report)};
}

std::pair<EulerComplex, CollapseReport> euler_transform_relaxed(const CellComplex& k, double d) {
    auto r = euler_transform_relaxed(k, std::vector<double>(k.num_faces(), d));
    r.first.offset_d = d;
    return r;
}

DegreeReport verify_euler(const CellComplex& c) {
    DegreeReport r;
    for (int v = 0; v < static_cast<int>(c.num_vertices()); ++v) {
        const int deg = c.degree(v);
        ++r.histogram[deg];
        if (deg % 2) r.odd_vertices.push_back(v);
        if (deg == 0) r.pure = false;
    }
    r.crossings = proper_crossings(c.segments(), c.tolerance());
    r.components = static_cast<int>(c.components().size());
    r.connected = r.components <= 1;
    for (int e = 0; e < static_cast<int>(c.num_edges()); ++e) {
        const auto& ed = c.edges[e];
        if (ed.faces[0] == ed.faces[1] || (!c.is_interior(ed.faces[0]) && !c.is_interior(ed.faces[1]))) {
            r.pure = false;
            r.impure_edges.push_back(e);
        }
    }
    return r;
}

}  // namespace eulerfill
