#include <algorithm>
#include <set>

#include "eulerfill/complex.hpp"
#include "spatial.hpp"

namespace eulerfill {
namespace {

// Sutherland-Hodgman against a convex counter-clockwise clip ring.
std::vector<Point2> clip_convex(std::vector<Point2> poly, const std::vector<Point2>& clip, double eps) {
    for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
        const Point2 a = clip[i], b = clip[(i + 1) % clip.size()];
        const double len = distance(a, b);
        auto side = [&](Point2 p) { return orient2d(a, b, p) / len; };
        std::vector<Point2> out;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const Point2 p = poly[j], q = poly[(j + 1) % poly.size()];
            const double sp = side(p), sq = side(q);
            if (sp >= -eps) out.push_back(p);
            if ((sp > eps && sq < -eps) || (sp < -eps && sq > eps)) out.push_back(p + (q - p) * (sp / (sp - sq)));
        }
        poly = std::move(out);
    }
    return poly;
}

// Ear clipping of a counter-clockwise ring of vertex ids.
std::vector<std::array<int, 3>> ear_clip(std::vector<int> ids, const std::vector<Point2>& pts, double eps) {
    std::vector<std::array<int, 3>> tris;
    std::size_t guard = 0;
    while (ids.size() > 3 && guard++ < 10 * ids.size() * ids.size()) {
        bool clipped = false;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const int a = ids[(i + ids.size() - 1) % ids.size()], b = ids[i], c = ids[(i + 1) % ids.size()];
            const double area2 = orient2d(pts[a], pts[b], pts[c]);
            if (area2 <= eps * (distance(pts[a], pts[b]) + distance(pts[b], pts[c]))) continue;
            bool empty = true;
            for (int o : ids) {
                if (o == a || o == b || o == c) continue;
                if (orient2d(pts[a], pts[b], pts[o]) >= 0 && orient2d(pts[b], pts[c], pts[o]) >= 0 &&
                    orient2d(pts[c], pts[a], pts[o]) >= 0) {
                    empty = false;
                    break;
                }
            }
            if (!empty) continue;
            tris.push_back({a, b, c});
            ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
            break;
        }
        if (!clipped) throw InternalInvariantViolation("ear clipping found no ear");
    }
    if (ids.size() == 3) tris.push_back({ids[0], ids[1], ids[2]});
    return tris;
}

void mark_interior(CellComplex& k) {
    for (auto& f : k.faces)
        if (f.role != FaceRole::Outside) f.role = FaceRole::Interior;
}

// Drops the given edges plus any edge left with the same face on both sides, then re-traces.
CellComplex rebuild_without(const CellComplex& k, std::set<int> removed) {
    std::vector<std::pair<int, int>> kept;
    for (int e = 0; e < static_cast<int>(k.edges.size()); ++e)
        if (!removed.count(e)) kept.push_back({k.edges[e].u, k.edges[e].v});
    CellComplex out = complex_from_graph(k.vertices, kept);
    for (;;) {
        std::vector<std::pair<int, int>> again;
        for (const auto& e : out.edges)
            if (e.faces[0] != e.faces[1]) again.push_back({e.u, e.v});
        if (again.size() == out.edges.size()) break;
        out = complex_from_graph(out.vertices, again);
    }
    // Compact away isolated vertices.
    std::vector<int> remap(out.vertices.size(), -1);
    std::vector<Point2> pts;
    for (int v = 0; v < static_cast<int>(out.vertices.size()); ++v)
        if (out.degree(v) > 0) {
            remap[v] = static_cast<int>(pts.size());
            pts.push_back(out.vertices[v]);
        }
    std::vector<std::pair<int, int>> es;
    for (const auto& e : out.edges) es.push_back({remap[e.u], remap[e.v]});
    return complex_from_graph(pts, es);
}

}  // namespace

CellComplex mesh_region(const Polygon& domain, double cell_size, MeshScheme scheme) {
    if (!(cell_size > 0)) throw DegenerateGeometry("cell size must be positive");
    std::vector<Point2> clip = domain.ring;
    if (ring_signed_area(clip) < 0) std::reverse(clip.begin(), clip.end());
    signed_area(Polygon{clip});
    const BoundingBox box = bounding_box(clip);
    const double w = box.max.x - box.min.x, h = box.max.y - box.min.y;
    if (cell_size > std::max(w, h)) throw DegenerateGeometry("cell size exceeds the domain extent");
    const double eps = Tolerance::for_extent(box.diagonal()).eps;
    const int nx = std::max(1, static_cast<int>(std::ceil(w / cell_size - 1e-9)));
    const int ny = std::max(1, static_cast<int>(std::ceil(h / cell_size - 1e-9)));

    std::vector<Point2> pts;
    detail::VertexPool pool(pts, 1e3 * eps);
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double x0 = box.min.x + i * cell_size, y0 = box.min.y + j * cell_size;
            std::vector<Point2> sq{{x0, y0}, {x0 + cell_size, y0}, {x0 + cell_size, y0 + cell_size}, {x0, y0 + cell_size}};
            auto piece = clip_convex(sq, clip, eps);
            if (piece.size() < 3 || ring_signed_area(piece) <= 1e-9 * cell_size * cell_size) continue;
            std::vector<int> ids;
            for (auto p : piece) {
                const int id = pool.insert(p);
                if (ids.empty() || ids.back() != id) ids.push_back(id);
            }
            while (ids.size() > 1 && ids.front() == ids.back()) ids.pop_back();
            if (ids.size() < 3) continue;
            for (std::size_t a = 0; a < ids.size(); ++a) {
                const auto key = std::minmax(ids[a], ids[(a + 1) % ids.size()]);
                if (seen.insert(key).second) edges.push_back(key);
            }
        }
    CellComplex k = complex_from_graph(pts, edges);
    mark_interior(k);

    // Merge slivers left by clipping into their neighbour across their longest shared edge.
    const double sliver = 0.05 * cell_size * cell_size;
    for (std::size_t round = 0; round < k.faces.size(); ++round) {
        int target = -1, edge = -1;
        double best = sliver;
        for (int f = 0; f < static_cast<int>(k.faces.size()); ++f) {
            if (!k.is_interior(f)) continue;
            const double a = ring_signed_area(k.face_ring(f));
            if (a >= best) continue;
            double longest = 0;
            int pick = -1;
            for (int e : k.face_edges(f)) {
                const auto& ed = k.edges[e];
                const int other = ed.faces[0] == f ? ed.faces[1] : ed.faces[0];
                const double len = distance(k.vertices[ed.u], k.vertices[ed.v]);
                if (k.is_interior(other) && other != f && len > longest) {
                    longest = len;
                    pick = e;
                }
            }
            if (pick >= 0) {
                best = a;
                target = f;
                edge = pick;
            }
        }
        if (target < 0) break;
        k = rebuild_without(k, {edge});
        mark_interior(k);
    }

    if (scheme == MeshScheme::Triangles) {
        std::vector<std::pair<int, int>> all;
        for (const auto& e : k.edges) all.push_back({e.u, e.v});
        for (int f = 0; f < static_cast<int>(k.faces.size()); ++f) {
            if (!k.is_interior(f)) continue;
            const auto& cyc = k.faces[f].cycles.front();
            const auto ring = k.face_ring(f);
            const bool full_square = cyc.size() == 4 && std::abs(ring_signed_area(ring) - cell_size * cell_size) <= 1e-9 * cell_size * cell_size;
            if (full_square) {
                // Diagonal from the lower-left to the upper-right corner.
                std::size_t ll = 0;
                for (std::size_t i = 1; i < 4; ++i)
                    if (ring[i].x + ring[i].y < ring[ll].x + ring[ll].y) ll = i;
                all.push_back({cyc[ll], cyc[(ll + 2) % 4]});
                continue;
            }
            for (const auto& t : ear_clip(cyc, k.vertices, eps))
                for (int s = 0; s < 3; ++s) {
                    const int a = t[s], b = t[(s + 1) % 3];
                    if (k.find_edge(a, b) < 0) all.push_back(std::minmax(a, b));
                }
        }
        std::sort(all.begin() + static_cast<std::ptrdiff_t>(k.edges.size()), all.end());
        all.erase(std::unique(all.begin() + static_cast<std::ptrdiff_t>(k.edges.size()), all.end()), all.end());
        k = complex_from_graph(k.vertices, all);
        mark_interior(k);
    }
    return k;
}

}  // namespace eulerfill
