#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eulerfill/geometry.hpp"

namespace eulerfill {

enum class FaceRole { Interior, Hole, Outside };
enum class FaceClass { None, Class1, Class2, Class3 };

const char* to_string(FaceRole role);
const char* to_string(FaceClass cls);

inline constexpr int kNoFace = -1;

struct Edge {
    int u = 0;
    int v = 0;
    /// faces[0] lies to the left of u->v, faces[1] to the right.
    std::array<int, 2> faces{kNoFace, kNoFace};
};

struct Face {
    /// Vertex cycles. Bounded faces have one counter-clockwise cycle; the Outside face
    /// holds the clockwise outer boundary of every connected component.
    std::vector<std::vector<int>> cycles;
    FaceRole role = FaceRole::Interior;
    FaceClass cls = FaceClass::None;
};

/// Where a cell of a transformed complex came from. For Class-1 faces `source` is a
/// face id, for Class-2 an edge id, for Class-3 a vertex id; -1 otherwise.
struct FaceProvenance {
    FaceClass cls = FaceClass::None;
    int source = -1;
};

/// Planar polygonal 2-complex with explicit Hole and Outside cells.
class CellComplex {
public:
    std::vector<Point2> vertices;
    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<FaceProvenance> provenance;  ///< empty, or one entry per face

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_edges() const { return edges.size(); }
    std::size_t num_faces() const { return faces.size(); }
    std::size_t count_faces(FaceRole role) const;

    /// Rebuilds vertex->edge and pair->edge lookups. Call after mutating `edges`.
    void index();

    const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[v]; }
    int degree(int v) const { return static_cast<int>(vertex_edges_[v].size()); }
    /// Edge id joining a and b, or -1.
    int find_edge(int a, int b) const;
    int other_end(int e, int v) const { return edges[e].u == v ? edges[e].v : edges[e].u; }

    bool is_interior(int f) const { return f >= 0 && faces[f].role == FaceRole::Interior; }
    /// Edge ids around a face cycle, in cycle order.
    std::vector<int> cycle_edges(const std::vector<int>& cycle) const;
    std::vector<int> face_edges(int f) const;
    std::vector<Point2> ring(const std::vector<int>& cycle) const;
    std::vector<Point2> face_ring(int f) const { return ring(faces[f].cycles.front()); }
    std::vector<Segment> segments() const;
    double total_edge_length() const;
    BoundingBox bbox() const { return bounding_box(vertices); }
    double tolerance() const { return Tolerance::for_extent(bbox().diagonal()).eps; }

    /// Vertex ids of each connected component of the 1-skeleton.
    std::vector<std::vector<int>> components() const;
    int outside_face() const;

private:
    std::vector<std::vector<int>> vertex_edges_;
    std::map<std::pair<int, int>, int> edge_lookup_;
};

/// Traces the faces of a planar straight-line graph. Counter-clockwise cycles become
/// bounded faces; every clockwise cycle is attached to a single Outside face.
/// Bounded faces start with role Hole; callers relabel the Interior ones.
CellComplex complex_from_graph(std::vector<Point2> vertices, const std::vector<std::pair<int, int>>& edges);

/// Permutes faces (perm[new] = old) and rewrites edge face slots to match.
void reorder_faces(CellComplex& k, const std::vector<int>& perm);

/// Builds a complex from interior faces. Complement components are synthesized as Hole
/// faces and one Outside face. Throws InvalidComplex on overlaps and T-junctions.
CellComplex build_complex(const std::vector<Polygon>& faces, const Region& domain = {});

struct ValidationReport {
    bool covers_domain = true;
    bool holes_disjoint = true;
    std::vector<std::pair<int, int>> hole_single_facet_violations;  ///< (interior face, hole face)
    struct AdjacentBoundary {
        int face;
        std::pair<int, int> edges;
    };
    std::vector<AdjacentBoundary> adjacent_boundary_edge_violations;
    std::vector<int> articulation_vertices;

    /// Conditions 2 and 3 only; condition 4 is repaired by transforming twice.
    bool ready_except_adjacent_boundary() const { return covers_domain && holes_disjoint && hole_single_facet_violations.empty(); }
    bool et_ready() const { return ready_except_adjacent_boundary() && adjacent_boundary_edge_violations.empty(); }
};

ValidationReport validate_input(const CellComplex& k);

enum class MeshScheme { Grid, Triangles };

/// Square grid (or its diagonal split) aligned with the domain's bounding box and clipped to the convex domain.
CellComplex mesh_region(const Polygon& domain, double cell_size, MeshScheme scheme);

/// Complex JSON: {"vertices":[[x,y],...], "faces":[[vid,...],...], "roles":[...], "classes":[...], "provenance":[...]}.
/// Only Interior faces are written; complement faces are re-derived on load.
std::string complex_to_json(const CellComplex& k);
CellComplex complex_from_json(const std::string& text);

}  // namespace eulerfill
