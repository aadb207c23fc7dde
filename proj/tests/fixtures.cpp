#include "fixtures.hpp"

#include <cmath>
#include <map>
#include <random>

namespace fixtures {

Polygon square(Point2 c, double h) { return Polygon{{{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}}}; }

Region square_region(Point2 c, double h) { return Region{square(c, h), {}}; }

Polygon regular(Point2 c, double radius, int n, double phase) {
    Polygon p;
    for (int i = 0; i < n; ++i) {
        const double a = phase + 2 * M_PI * i / n;
        p.ring.push_back({c.x + radius * std::cos(a), c.y + radius * std::sin(a)});
    }
    return p;
}

Polygon star(Point2 c, double outer, double inner, int points) {
    Polygon p;
    for (int i = 0; i < 2 * points; ++i) {
        const double a = M_PI / 2 + M_PI * i / points;
        const double r = i % 2 ? inner : outer;
        p.ring.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
    }
    return p;
}

CellComplex ringed(const std::vector<Point2>& p, double scale) {
    std::vector<Polygon> faces{Polygon{p}};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 a = p[i], b = p[(i + 1) % p.size()];
        faces.push_back(Polygon{{a, a * scale, b * scale, b}});
    }
    return build_complex(faces);
}

CellComplex hexagon_fan(double radius) {
    const Polygon hex = regular({0, 0}, radius, 6);
    std::vector<Polygon> faces;
    for (int i = 0; i < 6; ++i) faces.push_back(Polygon{{{0, 0}, hex.ring[i], hex.ring[(i + 1) % 6]}});
    return build_complex(faces);
}

LayerStack pyramid() {
    LayerStack s;
    s.layer_height = 3.0;
    for (int i = 0; i < 20; ++i) s.layers.push_back({3.0 * (i + 1), {square_region({30, 30}, 30 - 1.5 * i)}});
    return s;
}

LayerStack star_stack() {
    LayerStack s;
    s.layer_height = 0.5;
    for (int i = 0; i < 10; ++i) s.layers.push_back({0.5 * (i + 1), {Region{star({30, 30}, 26 - 0.2 * i, 12 - 0.1 * i, 5), {}}}});
    return s;
}

RandomMesh random_mesh(std::uint32_t seed) {
    std::mt19937 rng(seed);
    const bool tri = seed % 2 == 1;
    const double cell = std::uniform_real_distribution<double>(1.0, 5.0)(rng);
    const int max_faces = tri ? 200 : 400;
    int nx, ny;
    do {
        nx = std::uniform_int_distribution<int>(2, 20)(rng);
        ny = std::uniform_int_distribution<int>(2, 20)(rng);
    } while (nx * ny > max_faces);
    // A partial last column or row sometimes, so the mesher has to clip.
    const double fx = std::uniform_int_distribution<int>(0, 1)(rng) ? 0.5 : 0.0;
    const double fy = std::uniform_int_distribution<int>(0, 1)(rng) ? 0.5 : 0.0;
    const double ox = std::uniform_real_distribution<double>(-50, 50)(rng);
    const double oy = std::uniform_real_distribution<double>(-50, 50)(rng);
    const double w = (nx - fx) * cell, h = (ny - fy) * cell;
    const Polygon domain{{{ox, oy}, {ox + w, oy}, {ox + w, oy + h}, {ox, oy + h}}};
    return {mesh_region(domain, cell, tri ? MeshScheme::Triangles : MeshScheme::Grid), tri, cell};
}

Region random_clip_region(std::uint32_t seed, double lo, double hi) {
    std::mt19937 rng(seed * 7919u + 17u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double span = hi - lo;
    const Point2 c{lo + span * (0.35 + 0.3 * u(rng)), lo + span * (0.35 + 0.3 * u(rng))};
    const double big = span * (0.2 + 0.25 * u(rng));
    const int n = std::uniform_int_distribution<int>(5, 12)(rng);
    Region r;
    double min_r = big;
    for (int i = 0; i < n; ++i) {
        const double a = 2 * M_PI * (i + 0.3 * u(rng)) / n;
        const double rad = big * (0.45 + 0.55 * u(rng));
        min_r = std::min(min_r, rad);
        r.outer.ring.push_back({c.x + rad * std::cos(a), c.y + rad * std::sin(a)});
    }
    if (u(rng) < 0.3) r.holes.push_back(regular(c, 0.3 * min_r, 6, u(rng)));
    return r.normalized();
}

namespace {

CellComplex all_interior(std::vector<Point2> pts, const std::vector<std::pair<int, int>>& edges) {
    CellComplex k = complex_from_graph(std::move(pts), edges);
    for (auto& f : k.faces)
        if (f.role != FaceRole::Outside) f.role = FaceRole::Interior;
    return k;
}

void loop_edges(std::vector<std::pair<int, int>>& edges, const std::vector<int>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) edges.push_back({ids[i], ids[(i + 1) % ids.size()]});
}

}  // namespace

CellComplex circuit_tree_fixture() {
    std::vector<Point2> pts{{0, 0}, {6, 0}, {12, 0}, {12, 6}, {12, 12}, {6, 12}, {0, 12}, {0, 6},  // square, midpoints odd
                            {3, 5}, {3, 7}, {9, 5}, {9, 7}};
    std::vector<std::pair<int, int>> edges;
    loop_edges(edges, {0, 1, 2, 3, 4, 5, 6, 7});
    loop_edges(edges, {1, 3, 5, 7});
    loop_edges(edges, {7, 8, 9});
    loop_edges(edges, {3, 11, 10});
    return all_interior(std::move(pts), edges);
}

CellComplex nested_loops_fixture(int loops) {
    std::vector<Point2> pts{{0, 0}};
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < loops; ++j) {
        const double w = 10 - 2 * j, h = 5 + j, top = 20 - 2 * j;
        const int base = static_cast<int>(pts.size());
        pts.insert(pts.end(), {{w, h}, {w, top}, {-w, top}, {-w, h}});
        loop_edges(edges, {0, base, base + 1, base + 2, base + 3});
    }
    return all_interior(std::move(pts), edges);
}

const EulerComplex& reference_khat() {
    static const EulerComplex khat = [] {
        const auto k = mesh_region(square({30, 30}, 30), 5.0, MeshScheme::Grid);
        return generalized_euler_transform(k, default_offset(k), 2);
    }();
    return khat;
}

Coverage edge_coverage(const ToolPath& path, const CellComplex& k) {
    std::map<Point2, int> vid;
    for (int v = 0; v < static_cast<int>(k.num_vertices()); ++v) vid[k.vertices[v]] = v;
    Coverage c{std::vector<int>(k.num_edges(), 0), std::vector<double>(k.num_edges(), 0.0)};
    int start = -1;
    double printed = 0;
    for (const auto& m : path.moves) {
        if (m.support) {
            start = -1;
            continue;
        }
        const auto a = vid.find(m.from), b = vid.find(m.to);
        if (start < 0) {
            if (a == vid.end()) continue;
            start = a->second;
            printed = 0;
        }
        if (m.kind == MoveKind::Print) printed += distance(m.from, m.to);
        if (b == vid.end()) continue;
        const int e = k.find_edge(start, b->second);
        if (e >= 0) {
            ++c.visits[e];
            c.printed[e] += printed;
        }
        start = b->second;
        printed = 0;
    }
    return c;
}

}  // namespace fixtures
