#include <algorithm>
#include <map>
#include <set>

#include "eulerfill/errors.hpp"
#include "eulerfill/toolpath.hpp"
#include "transitions.hpp"

namespace eulerfill {

double ToolPath::print_length() const {
    double s = 0;
    for (const auto& m : moves)
        if (m.kind == MoveKind::Print) s += distance(m.from, m.to);
    return s;
}

double ToolPath::travel_length() const {
    double s = 0;
    for (const auto& m : moves)
        if (m.kind == MoveKind::Travel) s += distance(m.from, m.to);
    return s;
}

namespace {

bool lex_less(Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

struct ComponentWalk {
    std::vector<int> edges;
    std::vector<int> vertices;
};

// Emits edge `e` from vertex `from`, splitting out forced-travel parameter ranges.
void emit_edge(const CellComplex& k, int e, int from, const std::multimap<int, const ForcedTravel*>& forced, std::vector<Move>& out) {
    const auto& ed = k.edges[e];
    const Point2 a = k.vertices[from], b = k.vertices[k.other_end(e, from)];
    std::vector<std::pair<double, double>> ranges;  // along a -> b
    for (auto [it, end] = forced.equal_range(e); it != end; ++it) {
        double t0 = it->second->t0, t1 = it->second->t1;
        if (from != ed.u) std::tie(t0, t1) = std::make_pair(1 - t1, 1 - t0);
        ranges.push_back({std::clamp(t0, 0.0, 1.0), std::clamp(t1, 0.0, 1.0)});
    }
    std::sort(ranges.begin(), ranges.end());
    double t = 0;
    auto at = [&](double s) { return s <= 0 ? a : s >= 1 ? b : a + (b - a) * s; };
    for (auto [t0, t1] : ranges) {
        if (t1 <= t) continue;
        t0 = std::max(t0, t);
        if (t0 > t) out.push_back({MoveKind::Print, at(t), at(t0)});
        out.push_back({MoveKind::Travel, at(t0), at(t1)});
        t = t1;
    }
    if (t < 1) out.push_back({MoveKind::Print, at(t), b});
}

}  // namespace

ToolPath generate_toolpath(const CellComplex& k, const CircuitTree& tree, const std::vector<Restriction>& restrictions,
                           const FeasibilityReport& feas, const SupportPlan* support) {
    ToolPath path;
    path.restrictions = restrictions;

    std::vector<int> all;
    std::vector<int> owner(k.num_edges(), -1);
    for (int c = 0; c < static_cast<int>(tree.circuits.size()); ++c)
        for (int e : tree.circuits[c].edges) {
            if (owner[e] >= 0) throw InternalInvariantViolation("edge " + std::to_string(e) + " lies in two circuits");
            owner[e] = c;
            all.push_back(e);
        }
    for (int e = 0; e < static_cast<int>(k.num_edges()); ++e)
        if (owner[e] < 0) throw InternalInvariantViolation("edge " + std::to_string(e) + " lies in no circuit");

    if (!all.empty()) {
        detail::Transitions t(k, all);
        for (const auto& c : tree.circuits) {
            const std::size_t n = c.edges.size();
            for (std::size_t i = 0; i < n; ++i) t.pair(c.vertices[i], c.edges[(i + n - 1) % n], c.edges[i]);
        }
        std::map<int, std::vector<Restriction>> by_vertex;
        for (const auto& r : restrictions) by_vertex[r.vertex].push_back(r);
        for (const auto& [v, rs] : by_vertex) {
            std::set<int> seen;
            for (const auto& r : rs) {
                if (!seen.insert(r.from).second || !seen.insert(r.to).second)
                    throw InternalInvariantViolation("conflicting restrictions at vertex " + std::to_string(v));
                t.pair(v, r.from, r.to);
            }
        }
        for (int v : t.vertices())
            if (t.interleaved(v)) {
                t.pair_adjacent(v);
                ++path.restriction_fallbacks;
            }
        t.merge_trails();

        // One closed walk per component, started on a root circuit at its smallest vertex.
        const auto trail = t.trail_of_edges();
        std::map<int, std::pair<int, int>> start;  // trail -> (vertex, first edge)
        std::unordered_map<int, int> local_edge;
        for (std::size_t i = 0; i < t.edges().size(); ++i) local_edge[t.edges()[i]] = static_cast<int>(i);
        for (int root : tree.roots) {
            const auto& c = tree.circuits[root];
            for (std::size_t i = 0; i < c.edges.size(); ++i) {
                const int tr = trail[local_edge[c.edges[i]]];
                auto it = start.find(tr);
                if (it == start.end() || lex_less(k.vertices[c.vertices[i]], k.vertices[it->second.first]))
                    start[tr] = {c.vertices[i], c.edges[i]};
            }
        }
        for (std::size_t i = 0; i < trail.size(); ++i)
            if (!start.count(trail[i])) {
                const int e = t.edges()[i];
                start[trail[i]] = {k.edges[e].u, e};
            }

        std::vector<ComponentWalk> walks;
        for (const auto& [tr, sv] : start) {
            ComponentWalk w;
            t.walk(sv.first, sv.second, w.edges, w.vertices);
            walks.push_back(std::move(w));
        }

        std::multimap<int, const ForcedTravel*> forced;
        for (const auto& f : feas.forced_travel) forced.insert({f.edge, &f});

        // Chain components greedily by nearest start, beginning with the smallest start.
        std::vector<bool> done(walks.size(), false);
        std::optional<Point2> here;
        for (std::size_t n = 0; n < walks.size(); ++n) {
            int best = -1;
            for (int i = 0; i < static_cast<int>(walks.size()); ++i) {
                if (done[i]) continue;
                const Point2 s = k.vertices[walks[i].vertices.front()];
                if (best < 0) {
                    best = i;
                    continue;
                }
                const Point2 bs = k.vertices[walks[best].vertices.front()];
                if (here ? distance(*here, s) < distance(*here, bs) : lex_less(s, bs)) best = i;
            }
            done[best] = true;
            const auto& w = walks[best];
            const Point2 s = k.vertices[w.vertices.front()];
            if (here && distance(*here, s) > 0) path.moves.push_back({MoveKind::Travel, *here, s});
            for (std::size_t i = 0; i < w.edges.size(); ++i) emit_edge(k, w.edges[i], w.vertices[i], forced, path.moves);
            here = s;
            ++path.print_walks;
        }
    }

    if (support) {
        std::vector<const SupportPath*> loops;
        for (const auto& sp : support->paths)
            if (sp.supported && sp.loop.size() >= 3) loops.push_back(&sp);
        std::vector<bool> done(loops.size(), false);
        std::optional<Point2> here;
        if (!path.moves.empty()) here = path.moves.back().to;
        for (std::size_t n = 0; n < loops.size(); ++n) {
            int best = -1;
            for (int i = 0; i < static_cast<int>(loops.size()); ++i) {
                if (done[i]) continue;
                if (best < 0 || (here && distance(*here, loops[i]->loop.front()) < distance(*here, loops[best]->loop.front()))) best = i;
            }
            done[best] = true;
            const auto& ring = loops[best]->loop;
            if (here) path.moves.push_back({MoveKind::Travel, *here, ring.front(), true});
            for (std::size_t i = 0; i < ring.size(); ++i) path.moves.push_back({MoveKind::Print, ring[i], ring[(i + 1) % ring.size()], true});
            here = ring.front();
            ++path.support_loops;
        }
    }
    return path;
}

namespace {

using PairMap = std::map<int, std::vector<std::pair<int, int>>>;

int shared_vertex(const CellComplex& k, int e, int f) {
    const auto& a = k.edges[e];
    const auto& b = k.edges[f];
    return (a.u == b.u || a.u == b.v) ? a.u : a.v;
}

void add_run(const CellComplex& k, const std::vector<int>& run, bool closed, PairMap& pairs) {
    const std::size_t n = run.size();
    if (n < 2) return;
    for (std::size_t i = 0; i + 1 < n; ++i) pairs[shared_vertex(k, run[i], run[i + 1])].push_back({run[i], run[i + 1]});
    if (closed) pairs[shared_vertex(k, run[n - 1], run[0])].push_back({run[n - 1], run[0]});
}

std::vector<int> interleaved_vertices(const CellComplex& k, const PairMap& pairs) {
    std::vector<int> bad;
    for (const auto& [v, ps] : pairs) {
        std::vector<std::pair<double, int>> keyed;
        for (int e : k.vertex_edges(v)) {
            const Point2 d = k.vertices[k.other_end(e, v)] - k.vertices[v];
            keyed.push_back({std::atan2(d.y, d.x), e});
        }
        std::sort(keyed.begin(), keyed.end());
        std::map<int, int> pos;
        for (int i = 0; i < static_cast<int>(keyed.size()); ++i) pos[keyed[i].second] = i;
        std::vector<int> mate(keyed.size(), -1);
        bool broken = false;
        for (auto [a, b] : ps) {
            const int i = pos.at(a), j = pos.at(b);
            if (mate[i] >= 0 || mate[j] >= 0) broken = true;
            mate[i] = j;
            mate[j] = i;
        }
        if (broken || detail::chords_interleave(mate)) bad.push_back(v);
    }
    return bad;
}

}  // namespace

std::vector<int> check_crossovers(const std::vector<std::vector<int>>& closed_walks, const CellComplex& k) {
    PairMap pairs;
    for (const auto& w : closed_walks) add_run(k, w, true, pairs);
    return interleaved_vertices(k, pairs);
}

std::vector<int> check_crossovers(const ToolPath& path, const CellComplex& k) {
    std::map<std::pair<double, double>, int> vid;
    for (int v = 0; v < static_cast<int>(k.num_vertices()); ++v) vid[{k.vertices[v].x, k.vertices[v].y}] = v;
    auto vertex_at = [&](Point2 p) {
        auto it = vid.find({p.x, p.y});
        return it == vid.end() ? -1 : it->second;
    };
    // Rebuild edge runs; an edge spans several moves when part of it is travel.
    PairMap pairs;
    std::vector<int> run;
    int first_vertex = -1, last_vertex = -1, edge_start = -1;
    auto flush = [&] {
        add_run(k, run, !run.empty() && first_vertex == last_vertex, pairs);
        run.clear();
        first_vertex = last_vertex = edge_start = -1;
    };
    for (const auto& m : path.moves) {
        if (m.support) {
            flush();
            continue;
        }
        const int a = vertex_at(m.from), b = vertex_at(m.to);
        if (edge_start < 0) {
            if (a < 0) continue;
            edge_start = a;
        }
        if (b < 0) continue;
        const int e = k.find_edge(edge_start, b);
        if (e < 0) {
            flush();
            edge_start = b;
            continue;
        }
        if (run.empty()) first_vertex = edge_start;
        run.push_back(e);
        last_vertex = b;
        edge_start = b;
    }
    flush();
    return interleaved_vertices(k, pairs);
}

}  // namespace eulerfill
