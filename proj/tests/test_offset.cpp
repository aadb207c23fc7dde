#include <gtest/gtest.h>

#include <cmath>

#include "eulerfill/wavefront.hpp"
#include "fixtures.hpp"

using namespace eulerfill;
using fixtures::regular;
using fixtures::square;

namespace {

double pieces_area(const OffsetResult& r) {
    double a = 0;
    for (const auto& p : r.pieces) a += std::abs(signed_area(p));
    return a;
}

// Two 4x4 squares joined by a 2x1 bar.
Polygon dumbbell() {
    return Polygon{{{0, 0}, {4, 0}, {4, 1.5}, {6, 1.5}, {6, 0}, {10, 0}, {10, 4}, {6, 4}, {6, 2.5}, {4, 2.5}, {4, 4}, {0, 4}}};
}

}  // namespace

TEST(MiteredOffset, SquareShrinksUniformly) {
    const Polygon sq{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}};
    EXPECT_NEAR(first_event_time(sq), 2.0, 1e-12);
    for (const Polygon& p : {sq, sq.reversed()}) {
        const auto r = mitered_offset(p, 1.0);
        ASSERT_EQ(r.pieces.size(), 1u);
        EXPECT_NEAR(pieces_area(r), 4.0, 1e-9);
        EXPECT_FALSE(r.combinatorial_changed);
        EXPECT_FALSE(r.topological_changed);
    }
}

TEST(MiteredOffset, RegularPolygonEventIsApothem) {
    for (int n : {3, 5, 6, 9}) {
        const double radius = 7.0;
        const Polygon p = regular({1, 2}, radius, n, 0.3);
        EXPECT_NEAR(first_event_time(p), radius * std::cos(M_PI / n), 1e-9) << n;
        // Below the event the offset is the similar polygon with apothem reduced by d.
        const double apothem = radius * std::cos(M_PI / n), d = 0.4 * apothem;
        const double scale = (apothem - d) / apothem;
        EXPECT_NEAR(pieces_area(mitered_offset(p, d)), std::abs(signed_area(p)) * scale * scale, 1e-9) << n;
    }
}

TEST(MiteredOffset, RectangleArea) {
    const Polygon rect{{{0, 0}, {10, 0}, {10, 4}, {0, 4}}};
    EXPECT_NEAR(first_event_time(rect), 2.0, 1e-12);
    EXPECT_NEAR(pieces_area(mitered_offset(rect, 1.5)), 7.0 * 1.0, 1e-9);
}

TEST(MiteredOffset, ShortEdgeCollapses) {
    // Isosceles trapezoid; the top edge of length 2 shrinks by 2 d tan(base_angle / 2).
    const Polygon trap{{{0, 0}, {10, 0}, {6, 6}, {4, 6}}};
    const double base_angle = std::atan2(6.0, 4.0);
    const double t_event = 1.0 / std::tan(base_angle / 2);
    EXPECT_NEAR(first_event_time(trap), t_event, 1e-9);

    const auto before = mitered_offset(trap, 0.9 * t_event);
    EXPECT_FALSE(before.combinatorial_changed);
    EXPECT_EQ(before.pieces.at(0).size(), 4u);

    const auto after = mitered_offset(trap, 1.1 * t_event);
    EXPECT_TRUE(after.combinatorial_changed);
    EXPECT_FALSE(after.topological_changed);
    ASSERT_EQ(after.pieces.size(), 1u);
    EXPECT_EQ(after.pieces[0].size(), 3u);
    ASSERT_EQ(after.collapsed_edge_runs.size(), 1u);
    EXPECT_EQ(after.collapsed_edge_runs[0].source_edges, std::vector<std::size_t>{2});
}

TEST(MiteredOffset, NarrowBarSplits) {
    const Polygon db = dumbbell();
    EXPECT_NEAR(first_event_time(db), 0.5, 1e-9);
    const auto r = mitered_offset(db, 0.7);
    EXPECT_TRUE(r.topological_changed);
    ASSERT_EQ(r.pieces.size(), 2u);
    EXPECT_NEAR(std::abs(signed_area(r.pieces[0])), std::abs(signed_area(r.pieces[1])), 1e-9);
}

TEST(MiteredOffset, WavefrontTracksCorners) {
    const auto res = wavefront::simulate({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, 1.0);
    ASSERT_EQ(res.pieces.size(), 1u);
    ASSERT_EQ(res.pieces[0].vertices.size(), 4u);
    for (int v : res.pieces[0].vertices) {
        const auto& wv = res.vertices[v];
        ASSERT_FALSE(wv.attachments.empty());
        const int corner = wv.attachments[0].corner;
        const Point2 c = Polygon{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}}.ring[corner];
        // Each corner moves diagonally inwards by sqrt(2) d.
        EXPECT_NEAR(distance(c, wv.pos), std::sqrt(2.0), 1e-9);
    }
}

// The disk is replaced by a k-gon circumscribing radius r, so every boundary recedes by at
// most rc = r / cos(pi / k) and the inset never exceeds the exact one.
TEST(Minkowski, InsetOfSquareBetweenBounds) {
    const Region r = fixtures::square_region({5, 5}, 5).normalized();
    const int k = 32;
    const double rc = 1.0 / std::cos(M_PI / k);
    const double area = region_area(minkowski_inset(r, 1.0, k));
    EXPECT_LE(area, 64.0 + 1e-9);
    EXPECT_GE(area, (10 - 2 * rc) * (10 - 2 * rc) - 1e-4) << area - (10 - 2 * rc) * (10 - 2 * rc);
    EXPECT_TRUE(minkowski_inset(fixtures::square_region({0, 0}, 0.5), 1.0).empty());
}

TEST(Minkowski, InsetAroundHoleBetweenBounds) {
    const Region r = Region{square({0, 0}, 5), {square({0, 0}, 1)}}.normalized();
    const int k = 32;
    const double rc = 1.0 / std::cos(M_PI / k);
    const double area = region_area(minkowski_inset(r, 1.0, k));
    // The hole grows by at most the Minkowski sum of its square with the k-gon.
    const double exact = 64.0 - (4.0 + 8.0 + M_PI);
    const double lower = (10 - 2 * rc) * (10 - 2 * rc) - (4.0 + 8.0 * rc + 0.5 * k * rc * rc * std::sin(2 * M_PI / k));
    EXPECT_LE(area, exact + 1e-9);
    EXPECT_GE(area, lower - 1e-4) << area - lower;
}

TEST(Minkowski, InsetComponents) {
    const Region r = Region{dumbbell(), {}}.normalized();
    EXPECT_EQ(minkowski_inset_components(r, 0.7).size(), 2u);
    EXPECT_EQ(minkowski_inset_components(r, 0.3).size(), 1u);
}

TEST(Minkowski, OutsetArea) {
    const Region r = fixtures::square_region({0, 0}, 5).normalized();
    const std::vector<Region> in{r};
    const auto out = minkowski_outset(in, 1.0, 32);
    ASSERT_EQ(out.size(), 1u);
    const double a = region_area(out[0]);
    EXPECT_LE(a, 140.0 + M_PI + 1e-9);
    EXPECT_GE(a, 100.0 + 40.0 * std::cos(M_PI / 32) + 16 * std::sin(2 * M_PI / 32) - 1e-9);
}

TEST(Minkowski, CoverageAndOverlap) {
    const std::vector<Region> big{fixtures::square_region({0, 0}, 5).normalized()};
    EXPECT_TRUE(region_covered_by(fixtures::square_region({0, 0}, 2).normalized(), big));
    EXPECT_TRUE(region_covered_by(big[0], big));
    EXPECT_FALSE(region_covered_by(fixtures::square_region({4, 0}, 2).normalized(), big));

    EXPECT_NEAR(intersection_area(square({0, 0}, 1).ring, fixtures::square_region({1, 1}, 1).normalized()), 1.0, 1e-9);

    const std::vector<Region> two{fixtures::square_region({0, 0}, 1).normalized(), fixtures::square_region({1, 0}, 1).normalized()};
    const auto u = region_union(two);
    ASSERT_EQ(u.size(), 1u);
    EXPECT_NEAR(region_area(u[0]), 6.0, 1e-9);
}
