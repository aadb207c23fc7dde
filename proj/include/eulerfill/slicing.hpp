#pragma once

#include <string>
#include <vector>

#include "eulerfill/complex.hpp"
#include "eulerfill/euler.hpp"

namespace eulerfill {

struct Layer {
    double z = 0.0;
    std::vector<Region> polygons;
};

struct LayerStack {
    std::vector<Layer> layers;
    double layer_height = 0.2;

    /// Throws std::invalid_argument unless z is strictly increasing and every region has an outer ring.
    void validate() const;
};

LayerStack layers_from_json(const std::string& text);
std::string layers_to_json(const LayerStack& stack);

struct PrintConfig {
    double extruder_radius = 0.5;  ///< r
    double overhang_c = 0.5;       ///< c in [0, 1]
    int disk_segments = 32;
    double cell_size = 5.0;
    double offset_d = 0.0;         ///< 0 selects the default offset
    double cover_slack_factor = 0.1;

    double epsilon() const { return overhang_c * extruder_radius; }
    double cover_slack() const { return cover_slack_factor * extruder_radius; }
    void validate() const;
};

struct ContinuityReport {
    std::size_t lower_layer;
    bool continuous;
    std::vector<std::size_t> violating_polygons;  ///< indices into the upper layer
};

/// One entry per consecutive layer pair.
std::vector<ContinuityReport> check_epsilon_continuity(const LayerStack& stack, const PrintConfig& cfg);

/// Position on a boundary loop of the clip region. Loops are walked with the region on the right:
/// the outer ring clockwise, holes counter-clockwise.
struct BoundaryHit {
    int vertex;
    int loop;
    double s;  ///< arclength from the loop's first vertex
};

struct ClippedComplex {
    CellComplex complex;
    Region region;  ///< the clip region actually used (perturbed inward on degeneracy)
    std::vector<std::vector<Point2>> loops;
    std::vector<BoundaryHit> hits;  ///< every boundary vertex, sorted by (loop, s)
    std::vector<int> S;             ///< odd-degree boundary vertices in the same order
    std::vector<int> component_map;  ///< per vertex, -1 for unused vertices
    std::vector<int> simple_path_components;
    int perturbations = 0;
};

/// Intersects the transformed complex with a region.
ClippedComplex clip(const CellComplex& khat, const Region& region);

struct BoundaryPath {
    int loop = 0;
    int from = -1;  ///< complex vertex at the start, or -1 for a whole loop
    int to = -1;
    std::vector<Point2> points;
    double length() const;
};

struct PatchPlan {
    std::vector<std::pair<int, int>> pairing;  ///< S vertex pairs joined by arcs
    std::vector<char> choice;                  ///< per loop: 'A' pairs (1,2),(3,4)...; 'B' pairs (2,3),...,(n,1)
    std::vector<int> added_faces;
    std::vector<BoundaryPath> arcs;
    std::vector<BoundaryPath> unpatched;
};

struct PatchedComplex {
    CellComplex complex;
    PatchPlan plan;
    std::vector<int> arc_of_edge;  ///< per edge: index into plan.arcs, or -1
    std::size_t s_count = 0;
    int components = 0;
};

/// Joins alternate pairs of S along the clip boundary so every degree becomes even.
PatchedComplex patch(const ClippedComplex& clipped);

struct SupportCircle {
    Point2 center;
    Point2 apex;
    Point2 corner_in;
    Point2 corner_out;
};

struct SupportPath {
    BoundaryPath path;
    int eta = 0;
    double delta = 0.0;
    double gap = 0.0;
    std::vector<SupportCircle> circles;
    std::vector<Point2> loop;  ///< closed polygon; empty when unsupported
    bool supported = false;
    bool simple = true;
};

struct SupportPlan {
    std::vector<SupportPath> paths;
    std::vector<std::string> warnings;
    std::size_t loop_count() const;
};

SupportPlan support_perimeter(const Region& r, const Region& rtilde, const std::vector<BoundaryPath>& unprinted, const PrintConfig& cfg);

struct LayerPlan {
    std::size_t polygon = 0;  ///< index of the source polygon in the layer
    Region region;            ///< R
    Region inset;             ///< R tilde, empty when the polygon is thinner than 2r
    ClippedComplex clipped;
    PatchedComplex patched;
    SupportPlan support;
    std::vector<std::string> warnings;
    bool empty() const { return inset.empty(); }
};

/// One entry per inset component of every polygon in the layer.
std::vector<LayerPlan> plan_layer(const CellComplex& khat, const std::vector<Region>& layer, const PrintConfig& cfg);

}  // namespace eulerfill
