// Straight-skeleton wavefront for inward mitered offsets.
//
// Every input edge i lies on a line n_i . x = c_i + t that moves inward at unit
// speed. A wavefront vertex is the intersection of two such lines and therefore
// moves linearly in t, so edge lengths and vertex-to-line distances are linear
// too and event times come out of a single division.

#include <algorithm>
#include <limits>
#include <map>

#include "eulerfill/geometry.hpp"
#include "eulerfill/wavefront.hpp"

namespace eulerfill::wavefront {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Line {
    Point2 n;    // inward unit normal
    Point2 dir;  // unit direction
    double c;
};

struct WVertex {
    int le, re;  // incoming and outgoing edge
    Point2 p0;
    double t0;
    Point2 vel;
    std::vector<Attachment> att;
};

struct WPiece {
    std::vector<int> e;
    std::vector<int> v;  // v[j] sits between e[j-1] and e[j]
};

struct Candidate {
    double time = kInf;
    EventKind kind = EventKind::Edge;
    std::size_t piece = 0;
    std::size_t index = 0;   // edge index for edge events, vertex index for splits
    std::size_t target = 0;  // edge index hit by a split
};

class Simulator {
public:
    explicit Simulator(const std::vector<Point2>& ring) {
        const int n = static_cast<int>(ring.size());
        tol_ = Tolerance::for_extent(bounding_box(ring).diagonal()).eps;
        for (int i = 0; i < n; ++i) {
            const Point2 a = ring[i], b = ring[(i + 1) % n];
            const double len = distance(a, b);
            if (len == 0.0) throw DegenerateGeometry("ring has a zero-length edge");
            Line l;
            l.dir = (b - a) / len;
            l.n = perp_left(l.dir);
            l.c = dot(l.n, a);
            lines_.push_back(l);
        }
        WPiece p;
        for (int i = 0; i < n; ++i) {
            p.e.push_back(i);
            const int id = make_vertex((i + n - 1) % n, i, 0.0, ring[i]);
            verts_[id].att = {{i, (i + n - 1) % n}, {i, i}};
            p.v.push_back(id);
        }
        pieces_.push_back(std::move(p));
        collapsed_.assign(n, false);
    }

    Candidate next_event() const {
        Candidate best;
        for (std::size_t pi = 0; pi < pieces_.size(); ++pi) scan_piece(pi, best);
        return best;
    }

    void run(double d) {
        const std::size_t guard = 16 * lines_.size() * lines_.size() + 64;
        for (std::size_t it = 0; it < guard; ++it) {
            Candidate c = next_event();
            if (c.time > d) break;
            now_ = std::max(now_, c.time);
            if (c.kind == EventKind::Edge)
                edge_event(c.piece, c.index);
            else
                split_event(c.piece, c.index, c.target);
            drop_flat_pieces();
        }
        now_ = d;
    }

    Result finish(double d) {
        Result r;
        r.edge_collapsed = collapsed_;
        r.events = events_;
        std::map<int, int> out_id;
        auto emit = [&](int id, Point2 pos) {
            auto [it, fresh] = out_id.try_emplace(id, static_cast<int>(r.vertices.size()));
            if (fresh) r.vertices.push_back({pos, {}});
            return it->second;
        };
        std::vector<std::pair<int, int>> bridge_ends(bridge_count_, {-1, -1});
        auto route = [&](int out, const std::vector<Attachment>& att) {
            for (const auto& a : att) {
                if (a.corner >= 0) {
                    r.vertices[out].attachments.push_back(a);
                } else {
                    const int code = -a.corner - 1;
                    (code % 2 == 0 ? bridge_ends[code / 2].first : bridge_ends[code / 2].second) = out;
                }
            }
        };
        for (const auto& p : pieces_) {
            Piece out;
            for (int id : p.v) {
                const int o = emit(id, position(id, d));
                route(o, verts_[id].att);
                out.vertices.push_back(o);
            }
            out.edges = p.e;
            r.pieces.push_back(std::move(out));
        }
        for (const auto& [pos, att] : vanished_) {
            const int o = static_cast<int>(r.vertices.size());
            r.vertices.push_back({pos, {}});
            route(o, att);
            r.vanish_points.push_back(o);
        }
        for (std::size_t b = 0; b < bridge_ends.size(); ++b) {
            const auto [u, w] = bridge_ends[b];
            if (u >= 0 && w >= 0 && u != w) r.bridges.push_back({u, w});
            r.splits.push_back({split_corner_[b], bridge_ends[b]});
        }
        return r;
    }

private:
    int make_vertex(int le, int re, double t, Point2 hint) {
        const Line& L = lines_[le];
        const Line& R = lines_[re];
        const double det = cross(L.n, R.n);
        WVertex v{le, re, hint, t, {0.0, 0.0}, {}};
        if (std::abs(det) > 1e-12) {
            v.vel = Point2{R.n.y - L.n.y, L.n.x - R.n.x} / det;
            // Nearly parallel lines give an unstable intersection; keep the hint then.
            if (std::abs(det) > 1e-6) {
                const double bl = L.c + t, br = R.c + t;
                v.p0 = Point2{bl * R.n.y - L.n.y * br, L.n.x * br - bl * R.n.x} / det;
            }
        } else if (dot(L.n, R.n) > 0) {
            v.vel = L.n;
        }
        verts_.push_back(std::move(v));
        return static_cast<int>(verts_.size()) - 1;
    }

    Point2 position(int id, double t) const {
        const auto& v = verts_[id];
        return v.p0 + v.vel * (t - v.t0);
    }

    void scan_piece(std::size_t pi, Candidate& best) const {
        const auto& p = pieces_[pi];
        const std::size_t n = p.e.size();
        for (std::size_t j = 0; j < n; ++j) {
            const int a = p.v[j], b = p.v[(j + 1) % n];
            const Point2 dir = lines_[p.e[j]].dir;
            const double len = dot(position(b, now_) - position(a, now_), dir);
            const double slope = dot(verts_[b].vel - verts_[a].vel, dir);
            double t = kInf;
            if (len <= tol_)
                t = now_;
            else if (slope < -1e-12)
                t = now_ + len / -slope;
            if (t < best.time - tol_) best = {t, EventKind::Edge, pi, j, 0};
        }
        for (std::size_t j = 0; j < n; ++j) {
            const int ea = p.e[(j + n - 1) % n], eb = p.e[j];
            if (cross(lines_[ea].dir, lines_[eb].dir) >= -1e-12) continue;
            const int vid = p.v[j];
            const Point2 pos = position(vid, now_);
            const Point2 vel = verts_[vid].vel;
            for (std::size_t m = 0; m < n; ++m) {
                if (m == j || m == (j + n - 1) % n) continue;
                const Line& K = lines_[p.e[m]];
                const double dist = dot(K.n, pos) - K.c - now_;
                const double rate = dot(K.n, vel) - 1.0;
                if (rate >= -1e-12 || dist < -tol_) continue;
                const double t = now_ + std::max(dist, 0.0) / -rate;
                if (t >= best.time - tol_) continue;
                const Point2 x = pos + vel * (t - now_);
                const Point2 A = position(p.v[m], t);
                const Point2 B = position(p.v[(m + 1) % n], t);
                const double klen = dot(B - A, K.dir);
                const double s = dot(x - A, K.dir);
                if (klen < -tol_ || s < -tol_ || s > klen + tol_) continue;
                // A hit at an endpoint shared with one of the vertex's own edges is an edge event.
                if (m == (j + 1) % n && s <= tol_) continue;
                if ((m + 2) % n == j && s >= klen - tol_) continue;
                best = {t, EventKind::Split, pi, j, m};
            }
        }
    }

    void vanish(std::size_t pi) {
        auto& p = pieces_[pi];
        Point2 c{0, 0};
        std::vector<Attachment> att;
        for (int id : p.v) {
            c = c + position(id, now_);
            att.insert(att.end(), verts_[id].att.begin(), verts_[id].att.end());
        }
        c = c / static_cast<double>(p.v.size());
        for (int e : p.e) collapsed_[e] = true;
        events_.push_back({EventKind::Vanish, now_, p.e.empty() ? -1 : p.e[0], -1});
        vanished_.push_back({c, std::move(att)});
        pieces_.erase(pieces_.begin() + static_cast<std::ptrdiff_t>(pi));
    }

    void edge_event(std::size_t pi, std::size_t j) {
        auto& p = pieces_[pi];
        const std::size_t n = p.e.size();
        events_.push_back({EventKind::Edge, now_, p.e[j], -1});
        if (n <= 3) {
            vanish(pi);
            return;
        }
        collapsed_[p.e[j]] = true;
        const int a = p.v[j], b = p.v[(j + 1) % n];
        const int prev = p.e[(j + n - 1) % n], next = p.e[(j + 1) % n];
        const Point2 mid = (position(a, now_) + position(b, now_)) * 0.5;
        const int c = make_vertex(prev, next, now_, mid);
        verts_[c].att = verts_[a].att;
        verts_[c].att.insert(verts_[c].att.end(), verts_[b].att.begin(), verts_[b].att.end());
        WPiece q;
        for (std::size_t i = 1; i < n; ++i) q.e.push_back(p.e[(j + i) % n]);
        q.v.push_back(c);
        for (std::size_t i = 2; i < n; ++i) q.v.push_back(p.v[(j + i) % n]);
        p = std::move(q);
    }

    void split_event(std::size_t pi, std::size_t j, std::size_t m) {
        const WPiece p = pieces_[pi];
        const std::size_t n = p.e.size();
        const int vid = p.v[j];
        const int ea = p.e[(j + n - 1) % n], eb = p.e[j], ek = p.e[m];
        const Point2 x = position(vid, now_);
        const int p1 = make_vertex(ek, eb, now_, x);
        const int p2 = make_vertex(ea, ek, now_, x);
        for (const auto& a : verts_[vid].att) (a.corner >= 0 && a.edge == ea ? verts_[p2] : verts_[p1]).att.push_back(a);
        const int code = 2 * bridge_count_++;
        verts_[p1].att.push_back({-(code + 1), -1});
        verts_[p2].att.push_back({-(code + 2), -1});
        int corner = -1;
        for (const auto& a : verts_[vid].att)
            if (a.corner >= 0 && (corner < 0 || a.corner < corner)) corner = a.corner;
        split_corner_.push_back(corner);
        events_.push_back({EventKind::Split, now_, ek, corner});

        WPiece one, two;
        one.v.push_back(p1);
        for (std::size_t i = j;; i = (i + 1) % n) {
            one.e.push_back(p.e[i]);
            if (i == m) break;
            one.v.push_back(p.v[(i + 1) % n]);
        }
        two.v.push_back(p2);
        for (std::size_t i = m;; i = (i + 1) % n) {
            two.e.push_back(p.e[i]);
            if ((i + 1) % n == j) break;
            two.v.push_back(p.v[(i + 1) % n]);
        }
        pieces_.erase(pieces_.begin() + static_cast<std::ptrdiff_t>(pi));
        pieces_.push_back(std::move(one));
        pieces_.push_back(std::move(two));
    }

    void drop_flat_pieces() {
        for (std::size_t pi = pieces_.size(); pi-- > 0;) {
            const auto& p = pieces_[pi];
            if (p.e.size() < 3) {
                vanish(pi);
                continue;
            }
            std::vector<Point2> ring;
            for (int id : p.v) ring.push_back(position(id, now_));
            if (ring_signed_area(ring) <= tol_ * ring_perimeter(ring)) vanish(pi);
        }
    }

    std::vector<Line> lines_;
    std::vector<WVertex> verts_;
    std::vector<WPiece> pieces_;
    std::vector<bool> collapsed_;
    std::vector<Event> events_;
    std::vector<std::pair<Point2, std::vector<Attachment>>> vanished_;
    std::vector<int> split_corner_;
    int bridge_count_ = 0;
    double now_ = 0.0;
    double tol_ = 1e-12;
};

}  // namespace

Result simulate(const std::vector<Point2>& ccw_ring, double d) {
    if (ccw_ring.size() < 3) throw DegenerateGeometry("ring has fewer than 3 vertices");
    Simulator s(ccw_ring);
    s.run(d);
    return s.finish(d);
}

double first_event(const std::vector<Point2>& ccw_ring) {
    if (ccw_ring.size() < 3) return kInf;
    return Simulator(ccw_ring).next_event().time;
}

}  // namespace eulerfill::wavefront

namespace eulerfill {
namespace {

std::vector<Point2> ccw_copy(const Polygon& polygon, bool& flipped) {
    signed_area(polygon);  // validates distinct vertices
    std::vector<Point2> ring;
    for (auto p : polygon.ring)
        if (ring.empty() || ring.back() != p) ring.push_back(p);
    while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    flipped = ring_signed_area(ring) < 0;
    if (flipped) std::reverse(ring.begin(), ring.end());
    return ring;
}

}  // namespace

double first_event_time(const Polygon& polygon) {
    bool flipped = false;
    return wavefront::first_event(ccw_copy(polygon, flipped));
}

OffsetResult mitered_offset(const Polygon& polygon, double d) {
    if (d < 0) throw DegenerateGeometry("offset distance must be non-negative");
    bool flipped = false;
    const auto ring = ccw_copy(polygon, flipped);
    const std::size_t n = ring.size();
    const auto r = wavefront::simulate(ring, d);
    auto edge_id = [&](int e) { return flipped ? (2 * n - 2 - static_cast<std::size_t>(e)) % n : static_cast<std::size_t>(e); };
    auto corner_id = [&](int c) { return flipped ? n - 1 - static_cast<std::size_t>(c) : static_cast<std::size_t>(c); };

    OffsetResult out;
    for (const auto& ev : r.events)
        if (ev.kind != wavefront::EventKind::Split) out.combinatorial_changed = true;
    out.topological_changed = r.pieces.size() != 1;
    for (const auto& p : r.pieces) {
        Polygon poly;
        for (int v : p.vertices) poly.ring.push_back(r.vertices[v].pos);
        if (flipped) poly = poly.reversed();
        out.pieces.push_back(std::move(poly));

        const std::size_t k = p.edges.size();
        for (std::size_t j = 0; j < k; ++j) {
            const int from = p.edges[j], to = p.edges[(j + 1) % k];
            std::vector<std::size_t> run;
            bool all_collapsed = true;
            for (int e = (from + 1) % static_cast<int>(n); e != to; e = (e + 1) % static_cast<int>(n)) {
                if (!r.edge_collapsed[e]) all_collapsed = false;
                run.push_back(edge_id(e));
            }
            if (run.empty() || !all_collapsed) continue;
            if (flipped) std::reverse(run.begin(), run.end());
            out.collapsed_edge_runs.push_back({run, r.vertices[p.vertices[(j + 1) % k]].pos});
        }
    }
    for (int v : r.vanish_points) {
        std::vector<std::size_t> run;
        for (const auto& a : r.vertices[v].attachments)
            if (std::find(run.begin(), run.end(), edge_id(a.edge)) == run.end()) run.push_back(edge_id(a.edge));
        std::sort(run.begin(), run.end());
        out.collapsed_edge_runs.push_back({run, r.vertices[v].pos});
    }
    for (const auto& [corner, ends] : r.splits) {
        SplitRecord s{corner >= 0 ? corner_id(corner) : 0, {}};
        if (ends.first >= 0) s.vertices.push_back(r.vertices[ends.first].pos);
        if (ends.second >= 0) s.vertices.push_back(r.vertices[ends.second].pos);
        out.split_vertices.push_back(std::move(s));
    }
    return out;
}

}  // namespace eulerfill
