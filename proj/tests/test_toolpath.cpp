#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fixtures.hpp"

using namespace eulerfill;
using fixtures::square;

namespace {

std::vector<int> all_edges(const CellComplex& k) {
    std::vector<int> e(k.num_edges());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<int>(i);
    return e;
}

// Edges are shared by at most one circuit, and every edge is used.
void expect_partition(const CellComplex& k, const std::vector<Circuit>& circuits) {
    std::vector<int> used(k.num_edges(), 0);
    for (const auto& c : circuits)
        for (int e : c.edges) ++used[e];
    for (std::size_t e = 0; e < used.size(); ++e) EXPECT_EQ(used[e], 1) << "edge " << e;
}

void expect_closed_trail(const CellComplex& k, const Circuit& c) {
    ASSERT_EQ(c.edges.size(), c.vertices.size());
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const auto& e = k.edges[c.edges[i]];
        const int a = c.vertices[i], b = c.vertices[(i + 1) % c.vertices.size()];
        EXPECT_TRUE((e.u == a && e.v == b) || (e.u == b && e.v == a));
    }
}

CellComplex interior_graph(std::vector<Point2> pts, const std::vector<std::pair<int, int>>& edges) {
    auto k = complex_from_graph(std::move(pts), edges);
    for (auto& f : k.faces)
        if (f.role != FaceRole::Outside) f.role = FaceRole::Interior;
    return k;
}

// Two triangles touching at the origin.
CellComplex bowtie() {
    return interior_graph({{0, 0}, {-1, 1}, {-1, -1}, {1, -1}, {1, 1}}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
}

struct Planned {
    CircuitTree tree;
    std::vector<Restriction> restrictions;
    FeasibilityReport feas;
    ToolPath path;
};

Planned plan_all(const CellComplex& k, const PrintConfig& cfg = {}) {
    Planned p;
    p.tree = circuit_tree(k);
    p.restrictions = traversal_restrictions(p.tree, k);
    p.feas = check_extruder_feasibility(k, cfg);
    p.path = generate_toolpath(k, p.tree, p.restrictions, p.feas);
    return p;
}

}  // namespace

TEST(Hierholzer, TriangleIsOneClockwiseCircuit) {
    const auto k = build_complex({Polygon{{{0, 0}, {4, 0}, {0, 3}}}});
    const auto cs = modified_hierholzer(k, all_edges(k));
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].edges.size(), 3u);
    EXPECT_EQ(cs[0].orientation, Orientation::CW);
    EXPECT_NEAR(circuit_signed_area(k, cs[0]), -6.0, 1e-12);
    expect_closed_trail(k, cs[0]);
}

TEST(Hierholzer, BowtieIsOneNonCrossingCircuit) {
    const auto k = bowtie();
    const auto cs = modified_hierholzer(k, all_edges(k));
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].edges.size(), 6u);
    expect_closed_trail(k, cs[0]);
    EXPECT_TRUE(check_crossovers({cs[0].edges}, k).empty());
}

TEST(Hierholzer, OneCircuitPerComponent) {
    const auto k = build_complex({square({0, 0}, 1), square({5, 0}, 1)});
    const auto cs = modified_hierholzer(k, all_edges(k));
    ASSERT_EQ(cs.size(), 2u);
    expect_partition(k, cs);
}

TEST(Hierholzer, OddVertexThrows) {
    const auto k = build_complex({square({0, 0}, 1), square({2, 0}, 1)});
    EXPECT_THROW(modified_hierholzer(k, all_edges(k)), NotEulerian);
}

TEST(Hierholzer, NestedLoopsThroughOneVertex) {
    const auto k = fixtures::nested_loops_fixture(4);
    const auto cs = modified_hierholzer(k, all_edges(k));
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_TRUE(check_crossovers({cs[0].edges}, k).empty());
}

TEST(Crossovers, FigureEightPairings) {
    const auto k = bowtie();
    auto walk = [&](std::vector<int> vs) {
        std::vector<int> es;
        for (std::size_t i = 0; i < vs.size(); ++i) es.push_back(k.find_edge(vs[i], vs[(i + 1) % vs.size()]));
        return es;
    };
    // Left lobe then right lobe: the two visits to the origin are nested.
    EXPECT_TRUE(check_crossovers({walk({0, 1, 2, 0, 3, 4})}, k).empty());
    // Swapping the direction of the right lobe makes the visits interleave.
    EXPECT_EQ(check_crossovers({walk({0, 1, 2, 0, 4, 3})}, k), std::vector<int>{0});
}

TEST(Restrictions, FourCircuitChain) {
    const std::vector<Restriction> expected{{9, 1, 7}, {9, 8, 6}, {9, 5, 3}, {9, 4, 2}};
    EXPECT_EQ(restriction_chain(9, {1, 2, 3, 4, 5, 6, 7, 8}), expected);
}

TEST(Restrictions, ThreeCircuitChain) {
    const std::vector<Restriction> expected{{9, 1, 6}, {9, 5, 3}, {9, 4, 2}};
    EXPECT_EQ(restriction_chain(9, {1, 2, 3, 4, 5, 6}), expected);
}

TEST(CircuitTree, RootChildAndTwoGrandchildren) {
    const auto k = fixtures::circuit_tree_fixture();
    const auto tree = circuit_tree(k);
    ASSERT_EQ(tree.circuits.size(), 4u);
    ASSERT_EQ(tree.roots.size(), 1u);
    const int root = tree.roots[0];
    EXPECT_EQ(tree.circuits[root].edges.size(), 8u);
    ASSERT_EQ(tree.children[root].size(), 1u);
    const int child = tree.children[root][0];
    EXPECT_EQ(tree.circuits[child].edges.size(), 4u);
    ASSERT_EQ(tree.children[child].size(), 2u);
    std::set<int> seen;
    for (int g : tree.children[child]) {
        EXPECT_EQ(tree.circuits[g].edges.size(), 3u);
        EXPECT_EQ(tree.circuits[g].depth, 2);
        EXPECT_TRUE(tree.children[g].empty());
        for (int v : tree.circuits[g].vertices) EXPECT_TRUE(seen.insert(v).second) << "grandchildren share vertex " << v;
    }
    expect_partition(k, tree.circuits);
    for (const auto& c : tree.circuits) expect_closed_trail(k, c);
    EXPECT_EQ(tree.leftover_circuits, 0u);
}

TEST(CircuitTree, RestrictionsAtThreeWayVertices) {
    const auto k = fixtures::circuit_tree_fixture();
    auto tree = circuit_tree(k);
    const auto rs = traversal_restrictions(tree, k);
    std::map<int, int> per_vertex;
    for (const auto& r : rs) {
        ++per_vertex[r.vertex];
        EXPECT_TRUE(k.edges[r.from].u == r.vertex || k.edges[r.from].v == r.vertex);
        EXPECT_TRUE(k.edges[r.to].u == r.vertex || k.edges[r.to].v == r.vertex);
    }
    // Each restriction pair joins two more circuits, so a spanning set has 2 (n - 1) of them.
    EXPECT_EQ(rs.size(), 2 * (tree.circuits.size() - 1));
    // At the diamond's left and right corners the diamond is already joined to the square,
    // so only the diamond and the triangle hanging there are chained.
    EXPECT_EQ(per_vertex[7], 2);
    EXPECT_EQ(per_vertex[3], 2);
    for (const auto& s : tree.shared) {
        if (s.vertex != 7 && s.vertex != 3) continue;
        ASSERT_EQ(s.path.size(), 2u);
        EXPECT_EQ(tree.circuits[s.path[0]].depth, 1);
        EXPECT_EQ(tree.circuits[s.path[1]].depth, 2);
    }
}

TEST(ToolPath, FixturesPrintAsOneCrossoverFreeWalk) {
    for (const auto& k : {fixtures::circuit_tree_fixture(), fixtures::nested_loops_fixture(4), bowtie()}) {
        const auto p = plan_all(k);
        EXPECT_TRUE(check_crossovers(p.path, k).empty());
        EXPECT_EQ(p.path.print_walks, 1u);
        const auto cov = fixtures::edge_coverage(p.path, k);
        for (std::size_t e = 0; e < k.num_edges(); ++e) EXPECT_EQ(cov.visits[e], 1) << e;
        EXPECT_NEAR(p.path.print_length() + p.path.travel_length(), k.total_edge_length(), 1e-9);
    }
}

TEST(ToolPath, WalkHonoursRestrictions) {
    const auto k = fixtures::circuit_tree_fixture();
    const auto p = plan_all(k);
    EXPECT_EQ(p.path.restriction_fallbacks, 0u);
    EXPECT_EQ(p.path.restrictions.size(), p.restrictions.size());
}

TEST(ToolPath, ClippedLayerCoversEveryEdgeOnce) {
    PrintConfig cfg;
    const auto plans = plan_layer(fixtures::reference_khat().complex, {fixtures::random_clip_region(3, 0, 60)}, cfg);
    for (const auto& lp : plans) {
        const auto& k = lp.patched.complex;
        auto tree = circuit_tree(k);
        const auto rs = traversal_restrictions(tree, k);
        const auto feas = check_extruder_feasibility(lp.patched, cfg);
        const auto path = generate_toolpath(k, tree, rs, feas, &lp.support);
        EXPECT_TRUE(check_crossovers(path, k).empty());
        const auto cov = fixtures::edge_coverage(path, k);
        std::set<int> forced;
        for (const auto& f : feas.forced_travel) forced.insert(f.edge);
        for (int e = 0; e < static_cast<int>(k.num_edges()); ++e) {
            EXPECT_EQ(cov.visits[e], 1) << e;
            const Point2 a = k.vertices[k.edges[e].u], b = k.vertices[k.edges[e].v];
            if (!forced.count(e)) EXPECT_NEAR(cov.printed[e], distance(a, b), 1e-9) << e;
        }
        EXPECT_LE(feas.forced_travel_count(), lp.clipped.S.size() / 2);
    }
}

TEST(Feasibility, ShrinkabilityOfSingleFaces) {
    PrintConfig cfg;  // r = 0.5
    auto cls = [&](const Polygon& p) {
        const auto rep = check_extruder_feasibility(build_complex({p}), cfg);
        EXPECT_EQ(rep.boundary_faces.size(), 1u);
        return rep.boundary_faces.at(0).second;
    };
    EXPECT_EQ(cls(square({0, 0}, 5)), Shrinkability::Shrinkable);
    EXPECT_EQ(cls(Polygon{{{0, 0}, {10, 0}, {10, 0.8}, {0, 0.8}}}), Shrinkability::Unshrinkable);
    const Polygon dumbbell{{{0, 0}, {4, 0}, {4, 1.6}, {6, 1.6}, {6, 0}, {10, 0}, {10, 4}, {6, 4}, {6, 2.4}, {4, 2.4}, {4, 4}, {0, 4}}};
    EXPECT_EQ(cls(dumbbell), Shrinkability::ShrinkableTopological);
}

TEST(Feasibility, CloseParallelEdgesCollide) {
    PrintConfig cfg;
    const auto k = build_complex({Polygon{{{0, 0}, {10, 0}, {10, 0.8}, {0, 0.8}}}});
    const auto rep = check_extruder_feasibility(k, cfg);
    int bottom = -1, top = -1;
    for (int e = 0; e < static_cast<int>(k.num_edges()); ++e) {
        const Point2 a = k.vertices[k.edges[e].u], b = k.vertices[k.edges[e].v];
        if (distance(a, b) < 5) continue;
        (a.y == 0 ? bottom : top) = e;
    }
    ASSERT_GE(bottom, 0);
    ASSERT_GE(top, 0);
    const auto pair = std::minmax(bottom, top);
    EXPECT_NE(std::find(rep.collision_pairs.begin(), rep.collision_pairs.end(), std::pair<int, int>{pair.first, pair.second}), rep.collision_pairs.end());
    // Both short sides fit under the nozzle.
    EXPECT_EQ(rep.covered_edges.size(), 2u);
}
