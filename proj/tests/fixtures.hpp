#pragma once

#include <cstdint>
#include <vector>

#include "eulerfill/complex.hpp"
#include "eulerfill/euler.hpp"
#include "eulerfill/slicing.hpp"
#include "eulerfill/toolpath.hpp"

namespace fixtures {

using namespace eulerfill;

Polygon square(Point2 center, double half);
Region square_region(Point2 center, double half);
Polygon regular(Point2 center, double radius, int n, double phase = 0.0);
Polygon star(Point2 center, double outer, double inner, int points);

/// P surrounded by one quad per edge, each quad spanning P[i], P[i+1] and their images scaled by `scale`.
CellComplex ringed(const std::vector<Point2>& p, double scale = 3.0);

/// Triangulated regular hexagon: six triangles around the centre.
CellComplex hexagon_fan(double radius = 10.0);

/// 20 layers, 3 mm apart, of a square pyramid with a 60 mm base centred at (30, 30).
LayerStack pyramid();
/// 10 layers of a slowly shrinking five-pointed star.
LayerStack star_stack();

struct RandomMesh {
    CellComplex complex;
    bool triangles;
    double cell;
};
/// Grid or triangle mesh of a random rectangle, 4 to 400 faces.
RandomMesh random_mesh(std::uint32_t seed);

/// Random star-shaped polygon inside [lo, hi]^2, sometimes with a hole.
Region random_clip_region(std::uint32_t seed, double lo, double hi);

/// Outer square with an inscribed diamond; inside the diamond two triangles hang off
/// opposite corners. Its circuit tree is root, child, and two disjoint grandchildren.
CellComplex circuit_tree_fixture();

/// Four nested loops that all pass through the origin; each annulus between them is a face.
CellComplex nested_loops_fixture(int loops = 4);

/// Fixed transformed complex for clip experiments: 60 mm square, 5 mm grid, two passes.
const EulerComplex& reference_khat();

struct Coverage {
    std::vector<int> visits;      ///< per edge: how many times the path runs along it
    std::vector<double> printed;  ///< per edge: extruded length
};
/// Replays the non-support moves of a path over the edges of k.
Coverage edge_coverage(const ToolPath& path, const CellComplex& k);

}  // namespace fixtures
