#pragma once

// Small spatial helpers shared by the construction stages.

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "eulerfill/geometry.hpp"

namespace eulerfill::detail {

/// Unifies points that lie within `eps` of each other.
class VertexPool {
public:
    VertexPool(std::vector<Point2>& points, double eps) : points_(points), eps_(eps), cell_(4.0 * eps) {
        for (std::size_t i = 0; i < points_.size(); ++i) grid_[key(cell_of(points_[i]))].push_back(static_cast<int>(i));
    }

    int find(Point2 p) const {
        const auto [cx, cy] = cell_of(p);
        int best = -1;
        double bd = eps_;
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find(key({cx + dx, cy + dy}));
                if (it == grid_.end()) continue;
                for (int id : it->second) {
                    const double d = distance(points_[id], p);
                    if (d <= bd) {
                        bd = d;
                        best = id;
                    }
                }
            }
        return best;
    }

    int insert(Point2 p) {
        if (int id = find(p); id >= 0) return id;
        points_.push_back(p);
        const int id = static_cast<int>(points_.size()) - 1;
        grid_[key(cell_of(p))].push_back(id);
        return id;
    }

    /// Adds a point without unification (used for deliberately coincident copies).
    int append(Point2 p) {
        points_.push_back(p);
        const int id = static_cast<int>(points_.size()) - 1;
        grid_[key(cell_of(p))].push_back(id);
        return id;
    }

private:
    std::pair<std::int64_t, std::int64_t> cell_of(Point2 p) const {
        return {static_cast<std::int64_t>(std::floor(p.x / cell_)), static_cast<std::int64_t>(std::floor(p.y / cell_))};
    }
    static std::uint64_t key(std::pair<std::int64_t, std::int64_t> c) {
        return static_cast<std::uint64_t>(c.first) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(c.second);
    }

    std::vector<Point2>& points_;
    double eps_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

/// Uniform bucket grid over segment bounding boxes.
class SegmentGrid {
public:
    SegmentGrid(const std::vector<Segment>& segs, double cell_hint = 0.0) : segs_(segs) {
        for (const auto& s : segs_) {
            box_.extend(s.a);
            box_.extend(s.b);
        }
        if (!box_.valid()) return;
        const double w = std::max(box_.max.x - box_.min.x, 1e-12), h = std::max(box_.max.y - box_.min.y, 1e-12);
        cell_ = cell_hint > 0 ? cell_hint : std::max(std::sqrt(w * h / std::max<std::size_t>(segs_.size(), 1)), 1e-9);
        nx_ = std::min<std::int64_t>(static_cast<std::int64_t>(w / cell_) + 1, 4096);
        ny_ = std::min<std::int64_t>(static_cast<std::int64_t>(h / cell_) + 1, 4096);
        cell_ = std::max(w / static_cast<double>(nx_), h / static_cast<double>(ny_)) * (1 + 1e-9);
        buckets_.resize(static_cast<std::size_t>(nx_ * ny_));
        for (std::size_t i = 0; i < segs_.size(); ++i) {
            BoundingBox b;
            b.extend(segs_[i].a);
            b.extend(segs_[i].b);
            for_cells(b, 0.0, [&](std::size_t c) { buckets_[c].push_back(static_cast<int>(i)); });
        }
        stamp_.assign(segs_.size(), 0);
    }

    /// Candidate segment ids whose boxes come within `pad` of `box`.
    std::vector<int> query(const BoundingBox& box, double pad) const {
        std::vector<int> out;
        if (buckets_.empty()) return out;
        ++epoch_;
        for_cells(box, pad, [&](std::size_t c) {
            for (int id : buckets_[c])
                if (stamp_[id] != epoch_) {
                    stamp_[id] = epoch_;
                    out.push_back(id);
                }
        });
        return out;
    }

    std::vector<int> query(const Segment& s, double pad) const {
        BoundingBox b;
        b.extend(s.a);
        b.extend(s.b);
        return query(b, pad);
    }

private:
    template <class F>
    void for_cells(const BoundingBox& b, double pad, F&& f) const {
        auto clampi = [](double v, std::int64_t n) { return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(v)), 0, n - 1); };
        const auto x0 = clampi((b.min.x - pad - box_.min.x) / cell_, nx_), x1 = clampi((b.max.x + pad - box_.min.x) / cell_, nx_);
        const auto y0 = clampi((b.min.y - pad - box_.min.y) / cell_, ny_), y1 = clampi((b.max.y + pad - box_.min.y) / cell_, ny_);
        for (auto x = x0; x <= x1; ++x)
            for (auto y = y0; y <= y1; ++y) f(static_cast<std::size_t>(y * nx_ + x));
    }

    const std::vector<Segment>& segs_;
    BoundingBox box_;
    double cell_ = 1.0;
    std::int64_t nx_ = 0, ny_ = 0;
    std::vector<std::vector<int>> buckets_;
    mutable std::vector<unsigned> stamp_;
    mutable unsigned epoch_ = 0;
};

}  // namespace eulerfill::detail
