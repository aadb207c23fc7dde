#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace eulerfill;
using fixtures::square_region;

namespace {

bool all_even(const CellComplex& k) {
    for (int v = 0; v < static_cast<int>(k.num_vertices()); ++v)
        if (k.degree(v) % 2) return false;
    return true;
}

BoundaryPath straight_path(double length) {
    BoundaryPath p;
    p.points = {{0, 0}, {length, 0}};
    return p;
}

// Region lying to the right of a path along +x, with its boundary r above the path.
Region band_above(double r) { return Region{Polygon{{{-10, -10}, {20, -10}, {20, r}, {-10, r}}}, {}}.normalized(); }

}  // namespace

TEST(Continuity, ShrinkingStacksAreContinuous) {
    PrintConfig cfg;
    for (const auto& stack : {fixtures::pyramid(), fixtures::star_stack()})
        for (const auto& c : check_epsilon_continuity(stack, cfg)) EXPECT_TRUE(c.continuous) << c.lower_layer;
}

TEST(Continuity, OverhangBeyondEpsilonIsFlagged) {
    PrintConfig cfg;  // epsilon = 0.25 mm; growing a square by g moves its corners g sqrt(2)
    LayerStack s;
    s.layer_height = 1;
    s.layers = {{1, {square_region({0, 0}, 10)}}, {2, {square_region({0, 0}, 10.15), square_region({40, 0}, 3)}}, {3, {square_region({0, 0}, 10.6)}}};
    const auto rep = check_epsilon_continuity(s, cfg);
    ASSERT_EQ(rep.size(), 2u);
    EXPECT_FALSE(rep[0].continuous);
    EXPECT_EQ(rep[0].violating_polygons, std::vector<std::size_t>{1});
    EXPECT_FALSE(rep[1].continuous);
    EXPECT_EQ(rep[1].violating_polygons, std::vector<std::size_t>{0});
}

TEST(LayersJson, RoundTripAndValidation) {
    const auto stack = fixtures::pyramid();
    const auto back = layers_from_json(layers_to_json(stack));
    ASSERT_EQ(back.layers.size(), stack.layers.size());
    EXPECT_DOUBLE_EQ(back.layer_height, stack.layer_height);
    EXPECT_EQ(back.layers[4].polygons[0].outer.ring, stack.layers[4].polygons[0].outer.ring);

    EXPECT_THROW(layers_from_json(R"({"units":"in","layers":[{"z":1,"polygons":[{"outer":[[0,0],[1,0],[1,1]]}]}]})"), std::invalid_argument);
    EXPECT_THROW(layers_from_json(R"({"layers":[{"z":2,"polygons":[]},{"z":1,"polygons":[]}]})"), std::invalid_argument);
    EXPECT_THROW(layers_from_json(R"({"layers":[{"z":1,"polygons":[{"outer":[[0,0],[1,0]]}]}]})"), std::invalid_argument);
}

TEST(Clip, RegionCoveringEverythingKeepsTheComplex) {
    const auto& khat = fixtures::reference_khat().complex;
    const auto c = clip(khat, square_region({30, 30}, 40).normalized());
    EXPECT_EQ(c.perturbations, 0);
    EXPECT_TRUE(c.S.empty());
    EXPECT_EQ(c.complex.num_vertices(), khat.num_vertices());
    EXPECT_EQ(c.complex.num_edges(), khat.num_edges());
    EXPECT_EQ(c.complex.count_faces(FaceRole::Interior), khat.count_faces(FaceRole::Interior));
}

TEST(Clip, HalfPlaneCut) {
    const auto& khat = fixtures::reference_khat().complex;
    const Region half = Region{Polygon{{{-10, -10}, {30.3, -10}, {30.3, 70}, {-10, 70}}}, {}}.normalized();
    const auto c = clip(khat, half);
    EXPECT_FALSE(c.S.empty());
    EXPECT_EQ(c.S.size() % 2, 0u);
    for (int v : c.S) {
        EXPECT_EQ(c.complex.degree(v) % 2, 1);
        EXPECT_LE(c.complex.vertices[v].x, 30.3 + 1e-9);
    }
    for (const auto& p : c.complex.vertices) EXPECT_LE(p.x, 30.3 + 1e-9);

    const auto p = patch(c);
    EXPECT_TRUE(all_even(p.complex));
    EXPECT_EQ(p.components, 1);
    EXPECT_EQ(p.s_count, c.S.size());
    EXPECT_EQ(p.plan.pairing.size(), c.S.size() / 2);
    EXPECT_EQ(p.plan.arcs.size(), p.plan.pairing.size());
    EXPECT_TRUE(verify_euler(p.complex).crossings.empty());
}

TEST(Clip, DegenerateCutIsNudgedInward) {
    // The clip boundary runs exactly along the outer boundary of the transformed complex.
    const auto& khat = fixtures::reference_khat().complex;
    const auto c = clip(khat, square_region({30, 30}, 30).normalized());
    EXPECT_GT(c.perturbations, 0);
    EXPECT_TRUE(all_even(patch(c).complex));
}

TEST(Patch, RandomRegionsBecomeEulerian) {
    const auto& khat = fixtures::reference_khat().complex;
    for (std::uint32_t seed = 0; seed < 8; ++seed) {
        const auto c = clip(khat, fixtures::random_clip_region(seed, 0, 60));
        EXPECT_EQ(c.S.size() % 2, 0u) << seed;
        const auto p = patch(c);
        EXPECT_TRUE(all_even(p.complex)) << seed;
        if (c.simple_path_components.empty()) EXPECT_EQ(p.components, 1) << seed;
    }
}

TEST(Patch, NarrowNeckLeavesSimplePathPieces) {
    // A neck thinner than a cell cuts transformed edges into pieces with both ends on the
    // boundary; patching keeps degrees even but cannot join them to the two lobes.
    const auto& khat = fixtures::reference_khat().complex;
    const Region db = Region{Polygon{{{5, 5}, {25, 5}, {25, 29.6}, {35, 29.6}, {35, 5}, {55, 5},
                                      {55, 55}, {35, 55}, {35, 30.4}, {25, 30.4}, {25, 55}, {5, 55}}},
                             {}}
                          .normalized();
    const auto c = clip(khat, db);
    const auto p = patch(c);
    EXPECT_TRUE(all_even(p.complex));
    EXPECT_FALSE(c.simple_path_components.empty());
    EXPECT_GE(p.components, 2);
}

TEST(Support, UniformCirclesOnStraightPath) {
    PrintConfig cfg;  // r = 0.5
    const double r = cfg.extruder_radius, two_r = 2 * r;
    const int eta = 3;
    const double length = two_r * (eta + 1) + two_r;
    const auto plan = support_perimeter(band_above(r), {}, {straight_path(length)}, cfg);
    ASSERT_EQ(plan.paths.size(), 1u);
    const auto& sp = plan.paths[0];
    EXPECT_EQ(sp.eta, eta);
    EXPECT_NEAR(sp.delta, 0.0, 1e-12);
    EXPECT_NEAR(sp.gap, two_r / (eta + 1), 1e-12);
    ASSERT_EQ(sp.circles.size(), static_cast<std::size_t>(eta));
    for (int j = 0; j < eta; ++j) {
        const auto& c = sp.circles[j];
        EXPECT_NEAR(c.center.x, length * (j + 1) / (eta + 1), 1e-12);
        EXPECT_NEAR(c.apex.y, two_r, 1e-12);
        // Corners sit where the radius-2r circle meets the boundary r above the path.
        EXPECT_NEAR(c.corner_in.y, r, 1e-9);
        EXPECT_NEAR(c.corner_out.y, r, 1e-9);
        EXPECT_NEAR(c.corner_out.x - c.apex.x, std::sqrt(3.0) * r, 1e-9);
        if (j > 0) EXPECT_NEAR(c.center.x - sp.circles[j - 1].center.x, two_r + sp.gap, 1e-12);
    }
    EXPECT_TRUE(sp.supported);
    EXPECT_TRUE(sp.simple);
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < sp.loop.size(); ++i) segs.push_back({sp.loop[i], sp.loop[(i + 1) % sp.loop.size()]});
    EXPECT_TRUE(proper_crossings(segs).empty());
    EXPECT_TRUE(plan.warnings.empty());
}

TEST(Support, ShortPathIsReported) {
    PrintConfig cfg;
    const auto plan = support_perimeter(band_above(0.5), {}, {straight_path(1.5), straight_path(0.2)}, cfg);
    EXPECT_EQ(plan.loop_count(), 0u);
    ASSERT_EQ(plan.warnings.size(), 1u);
    EXPECT_EQ(plan.warnings[0], "2 unprinted boundary path(s) shorter than 2 mm left without support");
}

TEST(PlanLayer, OneEntryPerPolygon) {
    const auto& khat = fixtures::reference_khat().complex;
    PrintConfig cfg;
    const auto plans = plan_layer(khat, {square_region({15, 15}, 8).normalized(), square_region({45, 45}, 8).normalized()}, cfg);
    ASSERT_EQ(plans.size(), 2u);
    EXPECT_EQ(plans[0].polygon, 0u);
    EXPECT_EQ(plans[1].polygon, 1u);
    for (const auto& lp : plans) {
        EXPECT_FALSE(lp.empty());
        // Straight sides recede by r / cos(pi / k) under the circumscribed disk polygon.
        const double side = 16.0 - 2 * cfg.extruder_radius / std::cos(M_PI / cfg.disk_segments);
        EXPECT_NEAR(region_area(lp.inset), side * side, 1e-3);
        EXPECT_TRUE(all_even(lp.patched.complex));
    }
}

TEST(PlanLayer, ThinPolygonHasNoInset) {
    const auto& khat = fixtures::reference_khat().complex;
    PrintConfig cfg;
    const auto plans = plan_layer(khat, {Region{Polygon{{{10, 10}, {40, 10}, {40, 10.6}, {10, 10.6}}}, {}}.normalized()}, cfg);
    ASSERT_EQ(plans.size(), 1u);
    EXPECT_TRUE(plans[0].empty());
    EXPECT_EQ(plans[0].patched.complex.num_edges(), 0u);
    EXPECT_FALSE(plans[0].warnings.empty());
}
