#include <gtest/gtest.h>

#include <algorithm>

#include "eulerfill/wavefront.hpp"
#include "fixtures.hpp"

using namespace eulerfill;
using fixtures::square;

namespace {

struct Counts {
    std::size_t v, e, f;
};
Counts counts(const CellComplex& k) { return {k.num_vertices(), k.num_edges(), k.count_faces(FaceRole::Interior)}; }

// Transform `k` with one offset per face: `d_main` for face 0, `d_quads[q]` for the quad on edge q,
// a quarter of the first event elsewhere.
std::pair<EulerComplex, CollapseReport> relaxed(const CellComplex& k, double d_main, const std::vector<std::pair<int, double>>& d_quads) {
    std::vector<double> d(k.num_faces(), 0.0);
    for (int f = 0; f < static_cast<int>(k.num_faces()); ++f)
        if (k.is_interior(f)) d[f] = 0.25 * wavefront::first_event(k.face_ring(f));
    d[0] = d_main;
    for (auto [q, x] : d_quads) d[1 + q] = x;
    return euler_transform_relaxed(k, d);
}

const CollapseReport::Run& widest_run(const CollapseReport& rep) {
    return *std::max_element(rep.collapsed_runs.begin(), rep.collapsed_runs.end(),
                             [](const auto& a, const auto& b) { return a.pi < b.pi; });
}

const std::vector<Point2> kTwoShortEdges{{-4, -2}, {4, -2}, {4, 0}, {0.4, 4}, {0, 4.1}, {-0.4, 4}, {-4, 0}};
const std::vector<Point2> kThreeShortEdges{{-4, -2}, {4, -2}, {4, 0}, {0.6, 4}, {0.2, 4.1}, {-0.2, 4.1}, {-0.6, 4}, {-4, 0}};

}  // namespace

TEST(EulerTransform, HexagonFanDegreeAndCounts) {
    const auto k = fixtures::hexagon_fan();
    const auto out = euler_transform(k, default_offset(k));
    const auto v = verify_euler(out.complex);
    EXPECT_TRUE(v.all_degree(4));
    EXPECT_TRUE(v.crossings.empty());
    EXPECT_EQ(v.components, 1);
    EXPECT_TRUE(v.pure);

    const Counts in = counts(k), got = counts(out.complex);
    EXPECT_EQ(got.v, 2 * in.e);
    EXPECT_EQ(got.e, 4 * in.e);
    EXPECT_EQ(got.f, in.v + in.e + in.f);

    std::size_t class1 = 0;
    for (const auto& f : out.complex.faces) class1 += f.role == FaceRole::Interior && f.cls == FaceClass::Class1;
    EXPECT_EQ(class1, in.f);
}

TEST(EulerTransform, EdgeLengthDoublesForSmallOffset) {
    const auto k = fixtures::hexagon_fan(10.0);
    const auto out = euler_transform(k, 1e-3 * 10.0);
    const double ratio = out.complex.total_edge_length() / k.total_edge_length();
    EXPECT_GE(ratio, 1.98);
    EXPECT_LE(ratio, 2.02);
}

TEST(EulerTransform, Preconditions) {
    const auto grid = mesh_region(square({10, 10}, 10), 5, MeshScheme::Grid);
    EXPECT_THROW(euler_transform(grid, 0.5), NotEulerReady);
    const auto fan = fixtures::hexagon_fan();
    EXPECT_THROW(euler_transform(fan, 0.0), OffsetChangesGeometry);
    EXPECT_THROW(euler_transform(fan, 2 * min_first_event(fan)), OffsetChangesGeometry);
    EXPECT_THROW(generalized_euler_transform(fan, 0.1, 0), std::invalid_argument);
}

TEST(EulerTransform, DefaultOffsetIsQuarterOfFirstEvent) {
    const auto grid = mesh_region(square({10, 10}, 10), 5, MeshScheme::Grid);
    EXPECT_NEAR(min_first_event(grid), 2.5, 1e-12);
    EXPECT_NEAR(default_offset(grid), 0.625, 1e-12);
}

TEST(GeneralizedTransform, RandomMeshesReachDegreeFour) {
    for (std::uint32_t seed = 0; seed < 12; ++seed) {
        const auto m = fixtures::random_mesh(seed);
        const double d = default_offset(m.complex);
        const int passes = validate_input(m.complex).et_ready() ? 1 : 2;
        const auto out = generalized_euler_transform(m.complex, d, passes);
        const auto v = verify_euler(out.complex);
        EXPECT_TRUE(v.all_degree(4)) << seed;
        EXPECT_TRUE(v.crossings.empty()) << seed;
        EXPECT_EQ(v.components, 1) << seed;

        const Counts in = counts(passes == 1 ? m.complex : generalized_euler_transform(m.complex, d, passes - 1).complex);
        const Counts got = counts(out.complex);
        EXPECT_EQ(got.v, 2 * in.e) << seed;
        EXPECT_EQ(got.e, 4 * in.e) << seed;
        EXPECT_EQ(got.f, in.v + in.e + in.f) << seed;
    }
}

TEST(GeneralizedTransform, SingleSquareGrowth) {
    // Boundary edges of a lone square have no Class-2 partner on the outside, so the first pass
    // yields 8 vertices and 12 edges; every later pass multiplies edges by four.
    const auto sq = build_complex({square({0.5, 0.5}, 0.5)});
    const std::vector<Counts> expected{{8, 12, 0}, {24, 48, 0}, {96, 192, 0}};
    for (int m = 1; m <= 3; ++m) {
        const auto out = generalized_euler_transform(sq, 0.1, m);
        EXPECT_EQ(out.complex.num_vertices(), expected[m - 1].v) << m;
        EXPECT_EQ(out.complex.num_edges(), expected[m - 1].e) << m;
        if (m >= 2) EXPECT_TRUE(verify_euler(out.complex).all_degree(4)) << m;
    }
}

TEST(Collapse, SingleEdgeGivesDegreeSix) {
    const auto k = fixtures::ringed({{-4, -2}, {4, -2}, {4, 0}, {0.3, 4}, {-0.3, 4}, {-4, 0}});
    const auto [out, rep] = relaxed(k, 1.0, {});
    ASSERT_FALSE(rep.collapsed_runs.empty());
    const auto& run = widest_run(rep);
    EXPECT_EQ(run.pi, 1);
    EXPECT_EQ(run.m_local, 0);
    EXPECT_EQ(run.measured_degree, 6);
    EXPECT_TRUE(verify_euler(local_euler_transform(out, rep).complex).eulerian());
}

TEST(Collapse, TwoEdgesGiveDegreeEight) {
    const auto [out, rep] = relaxed(fixtures::ringed(kTwoShortEdges), 1.0, {});
    const auto& run = widest_run(rep);
    EXPECT_EQ(run.pi, 2);
    EXPECT_EQ(run.m_local, 0);
    EXPECT_EQ(run.measured_degree, 8);
    EXPECT_EQ(run.measured_degree, run.predicted_degree);
}

TEST(Collapse, CollapsedQuadGivesOddDegreeThenLocalFix) {
    const auto [out, rep] = relaxed(fixtures::ringed(kTwoShortEdges), 1.0, {{3, 0.5}});
    const auto& run = widest_run(rep);
    EXPECT_EQ(run.pi, 2);
    EXPECT_EQ(run.m_local, 1);
    EXPECT_EQ(run.measured_degree, 2 * 2 + 4 - 1);
    EXPECT_FALSE(verify_euler(out.complex).eulerian());

    const auto fixed = verify_euler(local_euler_transform(out, rep).complex);
    EXPECT_TRUE(fixed.eulerian());
    EXPECT_TRUE(fixed.crossings.empty());
    EXPECT_EQ(fixed.components, 1);
}

TEST(Collapse, ThreeEdgesTwoQuads) {
    const auto [out, rep] = relaxed(fixtures::ringed(kThreeShortEdges), 1.2, {{3, 0.5}, {5, 0.5}});
    const auto& run = widest_run(rep);
    EXPECT_EQ(run.pi, 3);
    EXPECT_EQ(run.m_local, 2);
    EXPECT_EQ(run.measured_degree, 2 * 3 + 4 - 2);
    EXPECT_TRUE(verify_euler(local_euler_transform(out, rep).complex).eulerian());
}

TEST(Collapse, EveryRunMatchesFormula) {
    for (double d : {1.2, 1.5, 2.0}) {
        const auto [out, rep] = relaxed(fixtures::ringed(kThreeShortEdges), d, {{3, 0.5}, {4, 0.5}});
        for (const auto& run : rep.collapsed_runs) {
            EXPECT_EQ(run.measured_degree, 2 * run.pi + 4 - run.m_local) << d;
            EXPECT_EQ(run.measured_degree, run.predicted_degree) << d;
        }
        EXPECT_TRUE(verify_euler(local_euler_transform(out, rep).complex).eulerian()) << d;
    }
}
