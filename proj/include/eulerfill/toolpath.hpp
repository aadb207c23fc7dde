#pragma once

#include <optional>
#include <vector>

#include "eulerfill/complex.hpp"
#include "eulerfill/slicing.hpp"

namespace eulerfill {

/// Closed trail. Edge i runs from vertices[i] to vertices[i + 1] (wrapping).
struct Circuit {
    std::vector<int> edges;
    std::vector<int> vertices;
    Orientation orientation = Orientation::CW;
    int pred = -1;
    int depth = 0;
};

/// Signed area enclosed by the circuit's polyline (negative when clockwise).
double circuit_signed_area(const CellComplex& k, const Circuit& c);

/// Splits an even-degree edge set into closed trails, one per connected component.
/// Each trail is non-crossing at every vertex and oriented clockwise. Throws NotEulerian.
std::vector<Circuit> modified_hierholzer(const CellComplex& k, const std::vector<int>& edges);

/// Next onion layer. With `c0` absent the layer is the boundary of the complex; otherwise it is
/// the unmarked edges of cells sharing an edge with `c0`. Edges that would leave an odd vertex are
/// held back for a later layer. Marks the edges of the returned circuits.
std::vector<Circuit> find_boundary_circuits(const CellComplex& k, const Circuit* c0, std::vector<bool>& marked);

struct SharedVertex {
    int vertex;
    std::vector<int> path;  ///< circuit ids, ancestor first
};

struct CircuitTree {
    std::vector<Circuit> circuits;
    std::vector<int> roots;
    std::vector<std::vector<int>> children;
    std::vector<SharedVertex> shared;
    std::size_t leftover_circuits = 0;  ///< circuits attached after the layer peeling ran dry
};

CircuitTree circuit_tree(const CellComplex& k);

/// Arrive on `from`, leave on `to`, at `vertex`.
struct Restriction {
    int vertex;
    int from;
    int to;
    bool operator==(const Restriction&) const = default;
};

/// Transition chain at one vertex for circuits C1..Cq, given each circuit's (arrival, departure)
/// edges in clockwise traversal. ends[2j] and ends[2j+1] belong to circuit j+1.
std::vector<Restriction> restriction_chain(int vertex, const std::vector<int>& ends);

std::vector<Restriction> traversal_restrictions(CircuitTree& tree, const CellComplex& k);

enum class Shrinkability { Shrinkable, ShrinkableTopological, Unshrinkable };
const char* to_string(Shrinkability s);

/// Part of an edge driven without extrusion; t0 and t1 are parameters along u to v.
struct ForcedTravel {
    int edge;
    double t0 = 0.0;
    double t1 = 1.0;
    int arc = -1;
};

struct FeasibilityReport {
    std::vector<int> covered_edges;
    std::vector<std::pair<int, int>> collision_pairs;
    std::vector<std::pair<int, Shrinkability>> boundary_faces;
    std::vector<ForcedTravel> forced_travel;

    /// Distinct patch arcs carrying forced travel.
    std::size_t forced_travel_count() const;
};

FeasibilityReport check_extruder_feasibility(const CellComplex& k, const PrintConfig& cfg);
/// Also forces travel on patch arcs that cannot be printed.
FeasibilityReport check_extruder_feasibility(const PatchedComplex& p, const PrintConfig& cfg);

enum class MoveKind { Print, Travel };

struct Move {
    MoveKind kind;
    Point2 from;
    Point2 to;
    bool support = false;
};

struct ToolPath {
    std::vector<Move> moves;
    std::vector<Restriction> restrictions;
    std::size_t print_walks = 0;          ///< maximal runs of moves without a travel between components
    std::size_t restriction_fallbacks = 0;  ///< vertices where a restriction chain crossed and was replaced
    std::size_t support_loops = 0;

    double print_length() const;
    double travel_length() const;
};

ToolPath generate_toolpath(const CellComplex& k, const CircuitTree& tree, const std::vector<Restriction>& restrictions,
                           const FeasibilityReport& feas, const SupportPlan* support = nullptr);

/// Vertices where the walk's pairing of incident edges interleaves in angular order.
std::vector<int> check_crossovers(const ToolPath& path, const CellComplex& k);

/// Vertex transitions of an explicit edge walk, for checking walks built outside generate_toolpath.
std::vector<int> check_crossovers(const std::vector<std::vector<int>>& closed_walks, const CellComplex& k);

}  // namespace eulerfill
