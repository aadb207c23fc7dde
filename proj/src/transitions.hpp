#pragma once

// Transition systems: at every vertex each incident edge is paired with the edge the walk
// continues on. A pairing is crossover-free when its chords do not interleave in the angular
// order of the edges around the vertex.

#include <unordered_map>
#include <vector>

#include "eulerfill/complex.hpp"

namespace eulerfill::detail {

class Transitions {
public:
    /// Restricted to `edges`; every vertex must have even degree in the subset.
    Transitions(const CellComplex& k, const std::vector<int>& edges);

    const CellComplex& complex() const { return k_; }
    const std::vector<int>& vertices() const { return verts_; }
    const std::vector<int>& edges() const { return edges_; }
    /// Incident subset edges of global vertex v, counter-clockwise by angle.
    const std::vector<int>& ring(int v) const { return ring_[local(v)]; }

    int mate(int v, int e) const;
    void pair(int v, int e1, int e2);
    /// Pairs angular neighbours (0,1), (2,3), ...
    void pair_adjacent(int v);
    bool interleaved(int v) const;

    /// Swaps pairings at shared vertices until every connected component is one closed trail.
    /// Each swap keeps the pairing at that vertex non-interleaved.
    void merge_trails();

    /// Closed walk starting at `v` along `first`; edge i leaves vertices[i].
    void walk(int v, int first, std::vector<int>& out_edges, std::vector<int>& out_vertices) const;

    /// Trail index for every subset edge (indexed like edges()).
    std::vector<int> trail_of_edges() const;

private:
    int local(int v) const { return vlocal_.at(v); }
    int position(int lv, int e) const;

    const CellComplex& k_;
    std::vector<int> edges_;
    std::vector<int> verts_;
    std::unordered_map<int, int> vlocal_;
    std::unordered_map<int, int> elocal_;
    std::vector<std::vector<int>> ring_;
    std::vector<std::vector<int>> mate_;  // positions
};

/// True if any two chords (i, mate[i]) of a pairing on positions 0..n-1 interleave.
bool chords_interleave(const std::vector<int>& mate);

}  // namespace eulerfill::detail
