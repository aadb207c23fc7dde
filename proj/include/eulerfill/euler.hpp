#pragma once

#include <map>
#include <utility>
#include <vector>

#include "eulerfill/complex.hpp"

namespace eulerfill {

/// A transformed complex. `complex.provenance` links each cell to the previous pass.
struct EulerComplex {
    CellComplex complex;
    /// Per output vertex: (source vertex, source face). Unmoved hole/outside vertices carry their complement face.
    std::vector<std::pair<int, int>> vertex_origin;
    double offset_d = 0.0;
    int iterations = 1;
};

struct CollapseReport {
    struct Run {
        int class1_face;     ///< source face of the offset that lost edges
        int pi;              ///< number of consecutive collapsed edges
        int merged_vertex;   ///< vertex of the output complex
        int m_local;         ///< collapsed Class-2 cells among the run's edges
        int predicted_degree;
        int measured_degree;
    };
    struct CollapsedClass2 {
        int source_edge;
        int edge;  ///< the output edge the cell degenerated into
    };
    struct Split {
        int class1_face;
        int source_vertex;
        std::pair<int, int> vertices;
    };
    std::vector<Run> collapsed_runs;
    std::vector<CollapsedClass2> collapsed_class2;
    std::vector<Split> splits;
    std::vector<int> vanished_faces;
    std::vector<int> affected_odd_vertices;
};

struct DegreeReport {
    std::map<int, int> histogram;  ///< degree -> vertex count
    std::vector<int> odd_vertices;
    std::vector<Point2> crossings;
    int components = 0;
    bool connected = true;
    bool pure = true;
    std::vector<int> impure_edges;

    bool all_degree(int d) const { return histogram.size() == 1 && histogram.begin()->first == d; }
    bool eulerian() const { return odd_vertices.empty(); }
};

/// Earliest skeleton event over the interior faces.
double min_first_event(const CellComplex& k);
/// Default offset: a quarter of the earliest skeleton event over the interior faces.
double default_offset(const CellComplex& k);

/// One strict pass. Throws NotEulerReady or OffsetChangesGeometry.
EulerComplex euler_transform(const CellComplex& k, double d);

/// m passes. The first pass tolerates adjacent boundary edges; later passes offset each face by
/// min(d, a quarter of its first event) because the cells shrink with every pass.
EulerComplex generalized_euler_transform(const CellComplex& k, double d, int m);

/// Single pass that lets offsets pass skeleton events and reports what changed.
std::pair<EulerComplex, CollapseReport> euler_transform_relaxed(const CellComplex& k, double d);
/// Same, with an offset per face (ignored for hole and outside faces).
std::pair<EulerComplex, CollapseReport> euler_transform_relaxed(const CellComplex& k, const std::vector<double>& d);

/// Re-transforms the Class-3 cells around collapsed Class-2 cells so every degree becomes even.
EulerComplex local_euler_transform(const EulerComplex& khat, const CollapseReport& report);

DegreeReport verify_euler(const CellComplex& c);

}  // namespace eulerfill
