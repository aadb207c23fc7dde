#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eulerfill/complex.hpp"
#include "eulerfill/euler.hpp"
#include "eulerfill/slicing.hpp"
#include "eulerfill/toolpath.hpp"

namespace eulerfill {

struct JobConfig {
    PrintConfig print;
    MeshScheme scheme = MeshScheme::Grid;
    int iterations = 2;      ///< passes of the transformation
    bool hull_domain = true;  ///< false meshes the bounding box of the raw layer union
    std::vector<std::string> formats{"svg", "gcode", "json"};
    unsigned jobs = 1;
    std::string layers_path;
    std::string out_dir = "out";
    double filament_diameter = 1.75;
    std::string gcode_header = "; eulerfill\nG90\nG92 E0\n";
    std::string gcode_footer;

    /// Throws std::invalid_argument.
    void validate() const;
    bool wants(const std::string& format) const;
};

struct CardinalityCheck {
    std::size_t input_vertices = 0, input_edges = 0, input_faces = 0;
    std::size_t vertices = 0, edges = 0, faces = 0;
    bool holds = false;  ///< V = 2E, E' = 4E, F' = V + E + F against the last pass's input
};

struct LayerReport {
    std::size_t layer = 0;
    double z = 0;
    std::size_t polygons = 0;
    std::size_t entries = 0;
    int components = 0;
    std::size_t s_count = 0;
    std::size_t forced_travel = 0;
    std::size_t crossovers = 0;
    std::size_t support_loops = 0;
    std::size_t print_walks = 0;
    std::size_t edges = 0;
    std::size_t odd_vertices = 0;
    std::size_t restriction_fallbacks = 0;
    std::size_t blocking_collisions = 0;  ///< patch-arc collisions that no forced travel removes
    std::vector<std::string> warnings;
};

struct JobReport {
    CardinalityCheck cardinality;
    std::size_t khat_odd_vertices = 0;
    std::size_t khat_crossings = 0;
    int khat_components = 0;
    std::vector<ContinuityReport> continuity;
    std::vector<LayerReport> layers;
    double seconds_transform = 0;
    double seconds_layers = 0;
    std::vector<std::string> errors;

    /// 0 when every invariant holds, 3 for blocking collisions, 1 for other failed checks.
    int exit_code() const;
    std::string to_json() const;
};

struct LayerResult {
    std::vector<LayerPlan> plans;
    std::vector<FeasibilityReport> feasibility;
    ToolPath path;  ///< every entry of the layer, chained
    LayerReport report;
};

struct JobResult {
    CellComplex input;
    EulerComplex khat;
    std::vector<LayerResult> layers;
    JobReport report;
};

/// Infill domain: convex hull (or bounding box) of every layer polygon.
Polygon job_domain(const LayerStack& stack, bool hull);

/// The transformation with the cardinality check filled in.
EulerComplex transform_domain(const CellComplex& input, const JobConfig& cfg, CardinalityCheck* check = nullptr);

/// Plans one layer: clip, patch, circuits, restrictions, feasibility and the chained tool path.
LayerResult process_layer(const CellComplex& khat, const Layer& layer, std::size_t index, const PrintConfig& cfg);

JobResult run_job(const LayerStack& stack, const JobConfig& cfg);

std::string emit_svg(const ToolPath& path);
std::string emit_svg(const CellComplex& k);
/// One entry per layer: z and its path.
std::string emit_gcode(const std::vector<std::pair<double, const ToolPath*>>& layers, double layer_height, const JobConfig& cfg);

/// Reads cfg.layers_path, writes outputs under cfg.out_dir and returns the process exit code
/// (0 success, 2 invalid input, 3 blocking collisions, 1 failed invariant).
int run_pipeline(const JobConfig& cfg);

}  // namespace eulerfill
