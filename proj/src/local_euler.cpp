// Local repair after collapses: the Class-3 cells on both sides of every collapsed
// Class-2 cell form sub-complexes; each is transformed twice on its own and spliced back.

#include <algorithm>
#include <numeric>
#include <set>

#include "eulerfill/euler.hpp"
#include "euler_internal.hpp"

namespace eulerfill {
namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Sub-complex made of the given faces; local vertex i is global vertex `global[i]`.
CellComplex extract(const CellComplex& k, const std::vector<int>& faces, std::vector<int>& global) {
    std::map<int, int> local;
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> cycles;
    for (int f : faces) {
        std::vector<int> c;
        for (int v : k.faces[f].cycles.front()) {
            auto [it, fresh] = local.try_emplace(v, static_cast<int>(global.size()));
            if (fresh) global.push_back(v);
            c.push_back(it->second);
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            if (seen.insert(std::minmax(c[i], c[(i + 1) % c.size()])).second) edges.push_back(std::minmax(c[i], c[(i + 1) % c.size()]));
        cycles.push_back(std::move(c));
    }
    std::vector<Point2> pts;
    for (int g : global) pts.push_back(k.vertices[g]);
    CellComplex sub = complex_from_graph(pts, edges);
    std::set<std::vector<int>> mine;
    for (auto& c : cycles) mine.insert(detail::canonical_cycle(c));
    for (auto& face : sub.faces)
        if (face.role != FaceRole::Outside) face.role = mine.count(detail::canonical_cycle(face.cycles.front())) ? FaceRole::Interior : FaceRole::Hole;
    return sub;
}

}  // namespace

EulerComplex local_euler_transform(const EulerComplex& khat, const CollapseReport& report) {
    const CellComplex& k = khat.complex;
    if (verify_euler(k).odd_vertices.empty()) return khat;

    std::vector<int> collapsed;
    for (const auto& c : report.collapsed_class2)
        if (c.edge >= 0) collapsed.push_back(c.edge);
    std::sort(collapsed.begin(), collapsed.end());
    collapsed.erase(std::unique(collapsed.begin(), collapsed.end()), collapsed.end());

    // A Class-3 cell bordering several collapsed edges joins their groups, so every
    // collapsed edge ends up interior to exactly one sub-complex.
    UnionFind uf(k.num_faces());
    std::set<int> member;
    for (int e : collapsed) {
        const auto [f0, f1] = k.edges[e].faces;
        for (int f : {f0, f1})
            if (f >= 0 && k.faces[f].cls == FaceClass::Class3) member.insert(f);
        if (f0 >= 0 && f1 >= 0 && member.count(f0) && member.count(f1)) uf.unite(f0, f1);
    }
    std::map<int, std::vector<int>> groups;
    for (int f : member) groups[uf.find(f)].push_back(f);

    std::vector<Point2> pts = k.vertices;
    std::vector<int> face_group(k.num_faces(), -1);
    for (const auto& [root, fs] : groups)
        for (int f : fs) face_group[f] = root;
    std::set<std::pair<int, int>> edge_set;
    for (const auto& ed : k.edges) {
        const bool inner = ed.faces[0] >= 0 && ed.faces[0] == ed.faces[1] ? face_group[ed.faces[0]] >= 0
                           : ed.faces[0] >= 0 && ed.faces[1] >= 0 && face_group[ed.faces[0]] >= 0 &&
                                 face_group[ed.faces[0]] == face_group[ed.faces[1]];
        if (!inner) edge_set.insert(std::minmax(ed.u, ed.v));
    }

    std::map<std::vector<int>, std::pair<FaceClass, int>> new_faces;
    for (const auto& [root, fs] : groups) {
        std::vector<int> global;
        CellComplex sub = extract(k, fs, global);
        auto quarter_events = [](const CellComplex& c) {
            auto d = detail::face_first_events(c);
            for (auto& x : d) x *= 0.25;
            return d;
        };
        // Two passes, each face offset by a quarter of its own first event. Vertices kept
        // in place by a pass are the sub-complex boundary, which already exists globally.
        auto first = detail::transform_pass(sub, quarter_events(sub));
        std::vector<int> first_global(first.ec.complex.num_vertices(), -1);
        for (std::size_t v = 0; v < first_global.size(); ++v)
            if (first.ec.vertex_origin[v].second < 0) first_global[v] = global[first.ec.vertex_origin[v].first];
        auto second = detail::transform_pass(first.ec.complex, quarter_events(first.ec.complex));
        const auto& out = second.ec.complex;
        std::vector<int> next(out.num_vertices(), -1);
        for (std::size_t v = 0; v < next.size(); ++v) {
            const auto [src, face] = second.ec.vertex_origin[v];
            if (face < 0 && first_global[src] >= 0) {
                next[v] = first_global[src];
            } else {
                next[v] = static_cast<int>(pts.size());
                pts.push_back(out.vertices[v]);
            }
        }
        for (const auto& ed : out.edges) edge_set.insert(std::minmax(next[ed.u], next[ed.v]));
        for (int f = 0; f < static_cast<int>(out.num_faces()); ++f) {
            if (!out.is_interior(f)) continue;
            std::vector<int> c;
            for (int v : out.faces[f].cycles.front()) c.push_back(next[v]);
            new_faces[detail::canonical_cycle(c)] = {out.faces[f].cls, -1};
        }
    }

    std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
    EulerComplex result;
    result.complex = complex_from_graph(pts, edges);
    auto& out = result.complex;
    std::map<std::vector<int>, int> old_faces;
    for (int f = 0; f < static_cast<int>(k.num_faces()); ++f)
        if (k.faces[f].role != FaceRole::Outside) old_faces[detail::canonical_cycle(k.faces[f].cycles.front())] = f;
    out.provenance.assign(out.num_faces(), {});
    for (int f = 0; f < static_cast<int>(out.num_faces()); ++f) {
        auto& face = out.faces[f];
        if (face.role == FaceRole::Outside) continue;
        const auto key = detail::canonical_cycle(face.cycles.front());
        if (auto it = old_faces.find(key); it != old_faces.end()) {
            face.role = k.faces[it->second].role;
            face.cls = k.faces[it->second].cls;
            if (!k.provenance.empty()) out.provenance[f] = k.provenance[it->second];
        } else {
            face.role = FaceRole::Interior;
            if (auto jt = new_faces.find(key); jt != new_faces.end()) face.cls = jt->second.first;
            out.provenance[f] = {face.cls, -1};
        }
    }
    result.vertex_origin = khat.vertex_origin;
    result.vertex_origin.resize(out.num_vertices(), {-1, -1});
    result.offset_d = khat.offset_d;
    result.iterations = khat.iterations;
    return result;
}

}  // namespace eulerfill
