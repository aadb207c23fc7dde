#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "eulerfill/errors.hpp"
#include "eulerfill/toolpath.hpp"
#include "transitions.hpp"

namespace eulerfill {
namespace detail {
namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

bool chords_interleave(const std::vector<int>& mate) {
    std::vector<int> stack;
    for (int i = 0; i < static_cast<int>(mate.size()); ++i) {
        if (mate[i] < 0) continue;
        if (mate[i] > i) {
            stack.push_back(i);
        } else {
            if (stack.empty() || stack.back() != mate[i]) return true;
            stack.pop_back();
        }
    }
    return false;
}

Transitions::Transitions(const CellComplex& k, const std::vector<int>& edges) : k_(k), edges_(edges) {
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        elocal_[edges_[i]] = i;
        for (int v : {k.edges[edges_[i]].u, k.edges[edges_[i]].v}) {
            auto [it, fresh] = vlocal_.try_emplace(v, static_cast<int>(verts_.size()));
            if (fresh) {
                verts_.push_back(v);
                ring_.emplace_back();
            }
            ring_[it->second].push_back(edges_[i]);
        }
    }
    mate_.resize(verts_.size());
    for (std::size_t lv = 0; lv < verts_.size(); ++lv) {
        const int v = verts_[lv];
        const Point2 p = k.vertices[v];
        auto& r = ring_[lv];
        std::vector<std::pair<double, int>> keyed;
        for (int e : r) {
            const Point2 d = k.vertices[k.other_end(e, v)] - p;
            keyed.push_back({std::atan2(d.y, d.x), e});
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = keyed[i].second;
        if (r.size() % 2) throw NotEulerian("vertex " + std::to_string(v) + " has odd degree " + std::to_string(r.size()));
        mate_[lv].assign(r.size(), -1);
    }
}

int Transitions::position(int lv, int e) const {
    const auto& r = ring_[lv];
    for (int i = 0; i < static_cast<int>(r.size()); ++i)
        if (r[i] == e) return i;
    throw InternalInvariantViolation("edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(verts_[lv]));
}

int Transitions::mate(int v, int e) const {
    const int lv = local(v);
    const int m = mate_[lv][position(lv, e)];
    return m < 0 ? -1 : ring_[lv][m];
}

void Transitions::pair(int v, int e1, int e2) {
    const int lv = local(v);
    const int a = position(lv, e1), b = position(lv, e2);
    mate_[lv][a] = b;
    mate_[lv][b] = a;
}

void Transitions::pair_adjacent(int v) {
    auto& m = mate_[local(v)];
    for (int i = 0; i + 1 < static_cast<int>(m.size()); i += 2) m[i] = i + 1, m[i + 1] = i;
}

bool Transitions::interleaved(int v) const { return chords_interleave(mate_[local(v)]); }

std::vector<int> Transitions::trail_of_edges() const {
    std::vector<int> trail(edges_.size(), -1);
    int next_id = 0;
    std::vector<int> es, vs;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (trail[i] >= 0) continue;
        walk(k_.edges[edges_[i]].u, edges_[i], es, vs);
        for (int e : es) trail[elocal_.at(e)] = next_id;
        ++next_id;
    }
    return trail;
}

void Transitions::merge_trails() {
    const auto trail = trail_of_edges();
    UnionFind uf(edges_.empty() ? 1 : *std::max_element(trail.begin(), trail.end()) + 1);
    for (std::size_t lv = 0; lv < verts_.size(); ++lv) {
        auto& m = mate_[lv];
        const auto& r = ring_[lv];
        const int n = static_cast<int>(m.size());
        if (n < 4) continue;
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            if (m[i] == j) continue;
            if (!uf.unite(trail[elocal_.at(r[i])], trail[elocal_.at(r[j])])) continue;
            // Neighbouring ends i and j belong to chords (i, p) and (j, q); (i, j) and (p, q)
            // cross nothing else, and swapping two distinct closed trails joins them.
            const int p = m[i], q = m[j];
            m[i] = j, m[j] = i;
            m[p] = q, m[q] = p;
        }
    }
}

void Transitions::walk(int v, int first, std::vector<int>& out_edges, std::vector<int>& out_vertices) const {
    out_edges.clear();
    out_vertices.clear();
    int cur = v, e = first;
    const std::size_t limit = edges_.size() + 1;
    do {
        out_edges.push_back(e);
        out_vertices.push_back(cur);
        cur = k_.other_end(e, cur);
        e = mate(cur, e);
        if (e < 0) throw InternalInvariantViolation("unpaired edge end at vertex " + std::to_string(cur));
        if (out_edges.size() > limit) throw InternalInvariantViolation("transition walk does not close");
    } while (!(cur == v && e == first));
}

}  // namespace detail

double circuit_signed_area(const CellComplex& k, const Circuit& c) {
    double a = 0;
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
        a += cross(k.vertices[c.vertices[i]], k.vertices[c.vertices[(i + 1) % c.vertices.size()]]);
    return 0.5 * a;
}

namespace {

Circuit make_circuit(const CellComplex& k, std::vector<int> edges, std::vector<int> verts) {
    Circuit c;
    c.edges = std::move(edges);
    c.vertices = std::move(verts);
    if (circuit_signed_area(k, c) > 0) {
        // Walking backwards, edge e[n-1-i] leaves v[n-i].
        const std::size_t n = c.edges.size();
        std::reverse(c.edges.begin(), c.edges.end());
        std::vector<int> vs(n);
        for (std::size_t i = 0; i < n; ++i) vs[i] = c.vertices[(n - i) % n];
        c.vertices = std::move(vs);
    }
    c.orientation = Orientation::CW;
    return c;
}

bool lex_less(Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

// Edges whose removal leaves every vertex of `edges` with even degree (a T-join of the odd vertices
// inside the edge set itself, taken along a spanning forest).
std::vector<int> parity_fix(const CellComplex& k, const std::vector<int>& edges) {
    std::unordered_map<int, std::vector<int>> adj;
    std::unordered_map<int, int> deg;
    for (int e : edges) {
        adj[k.edges[e].u].push_back(e);
        adj[k.edges[e].v].push_back(e);
        ++deg[k.edges[e].u], ++deg[k.edges[e].v];
    }
    std::unordered_map<int, int> odd;
    bool any = false;
    for (auto [v, d] : deg) {
        odd[v] = d % 2;
        any = any || d % 2;
    }
    if (!any) return {};
    std::unordered_map<int, int> parent_edge;
    std::vector<int> order;
    for (int e : edges)
        for (int s : {k.edges[e].u, k.edges[e].v}) {
            if (parent_edge.count(s)) continue;
            parent_edge[s] = -1;
            std::deque<int> q{s};
            while (!q.empty()) {
                const int v = q.front();
                q.pop_front();
                order.push_back(v);
                for (int f : adj[v]) {
                    const int w = k.other_end(f, v);
                    if (parent_edge.count(w)) continue;
                    parent_edge[w] = f;
                    q.push_back(w);
                }
            }
        }
    std::vector<int> removed;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        const int pe = parent_edge[v];
        if (pe < 0 || !odd[v]) continue;
        removed.push_back(pe);
        odd[v] = 0;
        const int p = k.other_end(pe, v);
        odd[p] ^= 1;
    }
    return removed;
}

}  // namespace

std::vector<Circuit> modified_hierholzer(const CellComplex& k, const std::vector<int>& edges) {
    detail::Transitions t(k, edges);
    for (int v : t.vertices()) t.pair_adjacent(v);
    t.merge_trails();
    const auto trail = t.trail_of_edges();
    const int n = trail.empty() ? 0 : *std::max_element(trail.begin(), trail.end()) + 1;
    // Start each trail at its lexicographically smallest vertex.
    std::vector<int> start(n, -1), start_edge(n, -1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const int e = edges[i];
        for (int v : {k.edges[e].u, k.edges[e].v})
            if (start[trail[i]] < 0 || lex_less(k.vertices[v], k.vertices[start[trail[i]]])) {
                start[trail[i]] = v;
                start_edge[trail[i]] = e;
            }
    }
    std::vector<Circuit> out;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(k.vertices[start[a]], k.vertices[start[b]]); });
    for (int i : order) {
        std::vector<int> es, vs;
        t.walk(start[i], start_edge[i], es, vs);
        out.push_back(make_circuit(k, std::move(es), std::move(vs)));
    }
    return out;
}

std::vector<Circuit> find_boundary_circuits(const CellComplex& k, const Circuit* c0, std::vector<bool>& marked) {
    std::vector<int> h;
    if (c0 == nullptr) {
        for (int e = 0; e < static_cast<int>(k.num_edges()); ++e)
            if (!marked[e] && !(k.is_interior(k.edges[e].faces[0]) && k.is_interior(k.edges[e].faces[1]))) h.push_back(e);
    } else {
        const std::set<int> in_c0(c0->edges.begin(), c0->edges.end());
        std::set<int> faces;
        for (int e : c0->edges)
            for (int f : k.edges[e].faces)
                if (k.is_interior(f)) faces.insert(f);
        std::set<int> hs;
        for (int f : faces) {
            const auto fe = k.face_edges(f);
            bool clean = true;
            for (int e : fe)
                if (marked[e] && !in_c0.count(e)) clean = false;
            if (!clean) continue;
            for (int e : fe)
                if (!marked[e]) hs.insert(e);
        }
        h.assign(hs.begin(), hs.end());
    }
    const auto drop = parity_fix(k, h);
    if (!drop.empty()) {
        const std::set<int> d(drop.begin(), drop.end());
        std::erase_if(h, [&](int e) { return d.count(e) > 0; });
    }
    auto circuits = modified_hierholzer(k, h);
    for (const auto& c : circuits)
        for (int e : c.edges) marked[e] = true;
    return circuits;
}

CircuitTree circuit_tree(const CellComplex& k) {
    CircuitTree tree;
    std::vector<bool> marked(k.num_edges(), false);
    auto add = [&](Circuit c, int pred) {
        c.pred = pred;
        c.depth = pred < 0 ? 0 : tree.circuits[pred].depth + 1;
        const int id = static_cast<int>(tree.circuits.size());
        tree.circuits.push_back(std::move(c));
        tree.children.emplace_back();
        if (pred < 0) {
            tree.roots.push_back(id);
        } else {
            tree.children[pred].push_back(id);
        }
        return id;
    };
    std::deque<int> queue;
    for (auto& c : find_boundary_circuits(k, nullptr, marked)) queue.push_back(add(std::move(c), -1));
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        const Circuit copy = tree.circuits[c];
        for (auto& child : find_boundary_circuits(k, &copy, marked)) queue.push_back(add(std::move(child), c));
    }

    // Whatever the peeling held back is a union of closed trails; hang each on the deepest
    // circuit it touches.
    std::vector<int> rest;
    for (int e = 0; e < static_cast<int>(k.num_edges()); ++e)
        if (!marked[e]) rest.push_back(e);
    if (rest.empty()) return tree;
    std::unordered_map<int, int> deepest;  // vertex -> circuit
    auto note = [&](int id) {
        for (int v : tree.circuits[id].vertices) {
            auto it = deepest.find(v);
            if (it == deepest.end() || tree.circuits[it->second].depth < tree.circuits[id].depth) deepest[v] = id;
        }
    };
    for (int i = 0; i < static_cast<int>(tree.circuits.size()); ++i) note(i);
    auto pending = modified_hierholzer(k, rest);
    while (!pending.empty()) {
        bool progress = false;
        for (auto it = pending.begin(); it != pending.end();) {
            int parent = -1;
            for (int v : it->vertices)
                if (auto d = deepest.find(v); d != deepest.end() && (parent < 0 || tree.circuits[d->second].depth > tree.circuits[parent].depth))
                    parent = d->second;
            if (parent < 0) {
                ++it;
                continue;
            }
            note(add(std::move(*it), parent));
            ++tree.leftover_circuits;
            it = pending.erase(it);
            progress = true;
        }
        if (!progress) {
            note(add(std::move(pending.front()), -1));
            ++tree.leftover_circuits;
            pending.erase(pending.begin());
        }
    }
    return tree;
}

std::vector<Restriction> restriction_chain(int vertex, const std::vector<int>& ends) {
    const int q = static_cast<int>(ends.size()) / 2;
    auto e = [&](int i) { return ends[i - 1]; };
    // Circuit j is entered on x(j) and left on y(j); the entry end alternates with depth.
    auto x = [&](int j) { return j % 2 ? e(2 * j) : e(2 * j - 1); };
    auto y = [&](int j) { return j % 2 ? e(2 * j - 1) : e(2 * j); };
    std::vector<Restriction> out;
    if (q < 2) return out;
    out.push_back({vertex, e(1), x(q)});
    for (int j = q; j >= 3; --j) out.push_back({vertex, y(j), x(j - 1)});
    out.push_back({vertex, y(2), e(2)});
    return out;
}

std::vector<Restriction> traversal_restrictions(CircuitTree& tree, const CellComplex& k) {
    (void)k;
    struct Visit {
        int circuit;
        int arrive;
        int leave;
    };
    std::map<int, std::vector<Visit>> at;
    for (int c = 0; c < static_cast<int>(tree.circuits.size()); ++c) {
        const auto& cc = tree.circuits[c];
        const std::size_t n = cc.edges.size();
        std::set<int> seen;
        for (std::size_t i = 0; i < n; ++i) {
            const int v = cc.vertices[i];
            if (!seen.insert(v).second) continue;
            at[v].push_back({c, cc.edges[(i + n - 1) % n], cc.edges[i]});
        }
    }
    struct Item {
        int min_depth;
        int vertex;
    };
    std::vector<Item> items;
    for (auto& [v, visits] : at) {
        if (visits.size() < 2) continue;
        std::sort(visits.begin(), visits.end(), [&](const Visit& a, const Visit& b) {
            const int da = tree.circuits[a.circuit].depth, db = tree.circuits[b.circuit].depth;
            return da != db ? da < db : a.circuit < b.circuit;
        });
        items.push_back({tree.circuits[visits.front().circuit].depth, v});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return a.min_depth != b.min_depth ? a.min_depth < b.min_depth : a.vertex < b.vertex;
    });

    detail::UnionFind uf(tree.circuits.size());
    std::vector<Restriction> out;
    tree.shared.clear();
    // Chain runs of circuits that are consecutive in the ancestor path and not yet joined. A
    // circuit already joined to the run closes it: chaining it again would split the walk, and
    // skipping over it would cross its own pair of ends.
    for (const auto& item : items) {
        const auto& visits = at[item.vertex];
        std::vector<int> path, ends;
        auto flush = [&] {
            if (path.size() >= 2) {
                for (const auto& r : restriction_chain(item.vertex, ends)) out.push_back(r);
                tree.shared.push_back({item.vertex, path});
            }
            path.clear();
            ends.clear();
        };
        for (const auto& visit : visits) {
            if (!path.empty() && !uf.unite(visit.circuit, path.front())) flush();
            path.push_back(visit.circuit);
            ends.push_back(visit.arrive);
            ends.push_back(visit.leave);
        }
        flush();
    }
    return out;
}

}  // namespace eulerfill
