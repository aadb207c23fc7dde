#pragma once

// Lower-level access to the offset wavefront. The Euler transformation needs to
// know which final vertex each input corner ended up at, so the simulation keeps
// "attachments" (corner, adjacent input edge) on every wavefront vertex.

#include <utility>
#include <vector>

#include "eulerfill/geometry.hpp"

namespace eulerfill::wavefront {

struct Attachment {
    int corner;  ///< input vertex index
    int edge;    ///< input edge incident to that corner (corner - 1 or corner)
    friend bool operator==(const Attachment&, const Attachment&) = default;
};

struct Vertex {
    Point2 pos;  ///< position at the requested distance
    std::vector<Attachment> attachments;
};

struct Piece {
    std::vector<int> vertices;  ///< CCW
    std::vector<int> edges;     ///< edges[j] is the input edge carried from vertices[j] to vertices[j+1]
};

enum class EventKind { Edge, Split, Vanish };

struct Event {
    EventKind kind;
    double time;
    int edge;    ///< collapsed edge, or the edge hit by a split
    int corner;  ///< reflex corner for splits, -1 otherwise
};

struct Result {
    std::vector<Vertex> vertices;  ///< only vertices referenced by pieces, bridges or vanish points
    std::vector<Piece> pieces;
    std::vector<std::pair<int, int>> bridges;  ///< vertex pairs that close a split
    std::vector<int> vanish_points;            ///< vertices standing in for pieces that shrank away
    std::vector<Event> events;
    std::vector<bool> edge_collapsed;  ///< per input edge
    std::vector<std::pair<int, std::pair<int, int>>> splits;  ///< reflex corner -> two closing vertices
};

/// Simulates the inward wavefront of a counter-clockwise simple ring up to distance d.
Result simulate(const std::vector<Point2>& ccw_ring, double d);

/// Earliest event time of a counter-clockwise ring (infinity for an empty ring).
double first_event(const std::vector<Point2>& ccw_ring);

}  // namespace eulerfill::wavefront
